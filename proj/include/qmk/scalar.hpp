#pragma once

#include <concepts>

namespace qmk {

// Requirements on a coefficient type usable by the multiplication kernels.
//
// A model provides ring arithmetic (+, -, *, unary -) with value semantics,
// and default-constructs to its additive zero. Constants enter a computation
// already embedded in the scalar type: plans store embedded constants,
// fixed-point code embeds them via quantize(), the counting scalar via
// CountScalar::constant(). The kernels themselves never materialize
// literals, so nothing beyond zero construction is required here.
template <class S>
concept ScalarRing = std::copyable<S> && std::default_initializable<S> &&
                     requires(const S a, const S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
};

} // namespace qmk
