#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qmk {

// Exact rational scalar for oracle tests. Arbitrary precision, so kernel
// identities can be asserted with operator== instead of tolerances.
// Expression templates are off: ring operations return plain values.
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

// num / 2^bits. Test inputs are dyadic so double and rational runs can share
// the same sample points exactly.
inline Rational dyadic(long long num, unsigned bits) {
    boost::multiprecision::cpp_int den = 1;
    den <<= bits;
    return Rational(boost::multiprecision::cpp_int(num), den);
}

} // namespace qmk
