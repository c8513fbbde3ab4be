#pragma once

#include "qmk/scalar.hpp"

namespace qmk {

// q = q0 + q1*i + q2*j + q3*k with ij = k, ji = -k, i^2 = j^2 = k^2 = -1.
template <ScalarRing S>
struct Quaternion {
    S q0, q1, q2, q3;

    friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

// Constant i-quaternion s = alpha + beta*i.
template <ScalarRing S>
struct IQuaternion {
    S alpha, beta;
};

// Constant j-quaternion t = gamma + delta*j.
template <ScalarRing S>
struct JQuaternion {
    S gamma, delta;
};

template <ScalarRing S>
Quaternion<S> embed_i(const IQuaternion<S>& s) {
    return {s.alpha, s.beta, S{}, S{}};
}

template <ScalarRing S>
Quaternion<S> embed_j(const JQuaternion<S>& t) {
    return {t.gamma, S{}, t.delta, S{}};
}

template <ScalarRing S>
Quaternion<S> operator+(const Quaternion<S>& a, const Quaternion<S>& b) {
    return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
}

template <ScalarRing S>
Quaternion<S> operator-(const Quaternion<S>& a, const Quaternion<S>& b) {
    return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
}

template <ScalarRing S>
Quaternion<S> operator*(const Quaternion<S>& a, const S& c) {
    return {a.q0 * c, a.q1 * c, a.q2 * c, a.q3 * c};
}

// Hamilton product in the naive 4x4 vector-matrix form: 16 multiplications,
// 12 additions. This is the baseline of every cost comparison and the oracle
// every factorized kernel is checked against. Additions associate exactly as
// written: each component is (m0 s m1) t (m2 s m3).
template <ScalarRing S>
Quaternion<S> mul_direct(const Quaternion<S>& p, const Quaternion<S>& q) {
    const S a0 = p.q0 * q.q0 - p.q1 * q.q1;
    const S b0 = p.q2 * q.q2 + p.q3 * q.q3;

    const S a1 = p.q1 * q.q0 + p.q0 * q.q1;
    const S b1 = p.q2 * q.q3 - p.q3 * q.q2;

    const S a2 = p.q2 * q.q0 + p.q3 * q.q1;
    const S b2 = p.q0 * q.q2 - p.q1 * q.q3;

    const S a3 = p.q3 * q.q0 - p.q2 * q.q1;
    const S b3 = p.q1 * q.q2 + p.q0 * q.q3;

    return {a0 - b0, a1 + b1, a2 + b2, a3 + b3};
}

template <ScalarRing S>
S norm_sq(const Quaternion<S>& q) {
    return (q.q0 * q.q0 + q.q1 * q.q1) + (q.q2 * q.q2 + q.q3 * q.q3);
}

} // namespace qmk
