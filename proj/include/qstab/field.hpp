#pragma once

#include <concepts>

#include "qstab/prime_field.hpp"
#include "qstab/rational.hpp"

namespace qstab {

/// Exact field scalar: copyable, equality-comparable, with explicit
/// arithmetic and a context that identifies the field it belongs to.
template <typename F>
concept ScalarField = std::copyable<F> && requires(const F a, const F b, typename F::Context ctx) {
    { F::zero(ctx) } -> std::same_as<F>;
    { F::one(ctx) } -> std::same_as<F>;
    { a.context() } -> std::same_as<typename F::Context>;
    { a + b } -> std::same_as<F>;
    { a - b } -> std::same_as<F>;
    { a * b } -> std::same_as<F>;
    { -a } -> std::same_as<F>;
    { a.inverse() } -> std::same_as<F>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

static_assert(ScalarField<Rational>);
static_assert(ScalarField<PrimeField>);

} // namespace qstab
