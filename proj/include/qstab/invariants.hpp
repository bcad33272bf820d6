#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "qstab/errors.hpp"
#include "qstab/representation.hpp"

namespace qstab {

/// A generator of the invariant ring: the augmentation coordinate t0 (degree
/// one) or the trace along an oriented cycle (degree = cycle length).
struct InvariantDescriptor {
    enum class Kind { T0, Cycle };

    Kind kind = Kind::T0;
    OrientedCycle cycle; // empty for T0
    std::size_t degree = 1;

    [[nodiscard]] std::string str(const Quiver& q) const {
        return kind == Kind::T0 ? "t0" : "tr(" + cycle.str(q) + ")";
    }

    friend bool operator==(const InvariantDescriptor&, const InvariantDescriptor&) = default;
};

/// Cycle length bound below which the trace invariants generate: (sum of
/// fiber dimensions)^2 + 1.
inline std::size_t cycle_length_bound(const DimensionVector& dims) {
    const std::size_t total = total_dimension(dims);
    return total * total + 1;
}

/// t0 plus every oriented cycle up to the generating bound, ordered by
/// degree and then by serialized cycle.
inline std::vector<InvariantDescriptor> generator_set(const Quiver& q, const DimensionVector& r) {
    if (r.size() != q.vertex_count())
        throw std::invalid_argument("generator_set: dimension vector size mismatch");
    std::vector<InvariantDescriptor> out;
    out.push_back({InvariantDescriptor::Kind::T0, {}, 1});
    for (auto& cycle : enumerate_cycles(q, cycle_length_bound(r))) {
        const std::size_t len = cycle.length();
        out.push_back({InvariantDescriptor::Kind::Cycle, std::move(cycle), len});
    }
    return out;
}

/// Value of one generator on a representation: the augmentation for t0, the
/// trace of the cycle composite otherwise.
template <ScalarField F>
F trace_invariant(const Representation<F>& rep, const InvariantDescriptor& d) {
    if (d.kind == InvariantDescriptor::Kind::T0) return rep.epsilon;
    return compose_along_cycle(rep, d.cycle).trace();
}

/// Point of the graded invariant evaluation: all generator values in
/// canonical order plus the grading vector.
template <ScalarField F>
struct HitchinPoint {
    std::vector<std::pair<InvariantDescriptor, F>> values;
    std::vector<std::size_t> grading;
    bool in_nullcone = false;
};

template <ScalarField F>
HitchinPoint<F> hitchin_point(const Representation<F>& rep) {
    HitchinPoint<F> out;
    bool all_zero = true;
    for (auto& d : generator_set(rep.quiver, rep.dims)) {
        F value = trace_invariant(rep, d);
        if (!value.is_zero()) all_zero = false;
        out.grading.push_back(d.degree);
        out.values.emplace_back(std::move(d), std::move(value));
    }
    out.in_nullcone = all_zero;
    return out;
}

/// Default embedding degree: lcm of 1..min(bound, 6), capped at 12 to keep
/// the coordinate list small.
inline std::size_t default_veronese_degree(std::size_t bound) {
    std::size_t l = 1;
    for (std::size_t k = 2; k <= std::min<std::size_t>(bound, 6); ++k) l = std::lcm(l, k);
    return std::min<std::size_t>(l, 12);
}

/// Evaluations of all monomials in the generators of weighted degree exactly
/// d. Monomials are enumerated with exponents of earlier generators
/// descending first.
template <ScalarField F>
std::vector<F> veronese_coordinates(const HitchinPoint<F>& h, std::size_t d,
                                    std::size_t coordinate_budget = 250'000) {
    if (d == 0) throw std::invalid_argument("veronese_coordinates: degree must be positive");
    if (h.values.empty()) throw std::invalid_argument("veronese_coordinates: empty point");
    const typename F::Context ctx = h.values.front().second.context();

    std::vector<F> out;
    auto expand = [&](auto&& self, std::size_t gen, std::size_t remaining, const F& acc) -> void {
        if (gen == h.values.size()) {
            if (remaining == 0) {
                if (out.size() >= coordinate_budget)
                    throw budget_exceeded("veronese_coordinates: coordinate budget exceeded");
                out.push_back(acc);
            }
            return;
        }
        const std::size_t deg = h.grading[gen];
        const std::size_t max_exp = remaining / deg;
        for (std::size_t e = max_exp + 1; e-- > 0;) {
            F term = acc;
            for (std::size_t i = 0; i < e; ++i) term = term * h.values[gen].second;
            self(self, gen + 1, remaining - e * deg, term);
        }
    };
    expand(expand, 0, d, F::one(ctx));
    return out;
}

} // namespace qstab
