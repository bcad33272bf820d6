#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qstab/flags.hpp"
#include "qstab/representation.hpp"

namespace qstab {

/// Deterministic instance sampler. Only modular reduction of raw engine
/// output is used, so identical seeds give identical instances on every
/// platform.
class InstanceRng {
public:
    explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform-ish value in {0, ..., n-1}.
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }

    /// Uniform-ish value in {lo, ..., hi}.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::size_t>(hi - lo + 1)));
    }

    bool coin() { return (engine_() & 1) != 0; }

    Rational rational(long long lo = -4, long long hi = 4, long long max_den = 3) {
        return Rational(range(lo, hi), range(1, max_den));
    }

    template <ScalarField F>
    F scalar(typename F::Context ctx, long long lo = -4, long long hi = 4);

private:
    std::mt19937_64 engine_;
};

template <>
inline Rational InstanceRng::scalar<Rational>(Rational::Context, long long lo, long long hi) {
    return Rational(range(lo, hi));
}

template <>
inline PrimeField InstanceRng::scalar<PrimeField>(PrimeField::Context ctx, long long, long long) {
    return PrimeField(ctx, range(0, ctx.p - 1));
}

template <ScalarField F>
Matrix<F> random_matrix(InstanceRng& rng, std::size_t rows, std::size_t cols,
                        typename F::Context ctx) {
    Matrix<F> m(rows, cols, ctx);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.scalar<F>(ctx);
    return m;
}

template <ScalarField F>
Matrix<F> random_invertible(InstanceRng& rng, std::size_t n, typename F::Context ctx) {
    while (true) {
        Matrix<F> m = random_matrix<F>(rng, n, n, ctx);
        if (m.rank() == n) return m;
    }
}

/// Random surjection onto a t-dimensional quotient (t <= r).
template <ScalarField F>
Matrix<F> random_surjection(InstanceRng& rng, std::size_t t, std::size_t r,
                            typename F::Context ctx) {
    if (t > r) throw std::invalid_argument("random_surjection: t must be <= r");
    while (true) {
        Matrix<F> m = random_matrix<F>(rng, t, r, ctx);
        if (m.rank() == t) return m;
    }
}

/// Random weighted flag in an r-dimensional space (r >= 1): nested column
/// prefixes of a random invertible basis with strictly increasing weights.
template <ScalarField F>
WeightedFlag<F> random_weighted_flag(InstanceRng& rng, std::size_t r, typename F::Context ctx) {
    WeightedFlag<F> f;
    f.ambient_dim = r;
    f.ctx = ctx;
    const std::size_t s = rng.below(r); // 0 .. r-1 proper steps
    if (s > 0) {
        const Matrix<F> basis = random_invertible<F>(rng, r, ctx);
        // strictly increasing dims within 1..r-1
        std::vector<std::size_t> dims;
        std::size_t next = 1 + rng.below(r - s);
        for (std::size_t i = 0; i < s; ++i) {
            dims.push_back(next);
            next += 1 + rng.below(2);
            if (next >= r) {
                // keep remaining steps within bounds
                next = r - (s - i - 1);
            }
        }
        std::sort(dims.begin(), dims.end());
        dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
        for (std::size_t d : dims) {
            std::vector<std::size_t> cols(d);
            for (std::size_t c = 0; c < d; ++c) cols[c] = c;
            f.steps.push_back(basis.select_columns(cols));
        }
    }
    long long w = rng.range(-6, -1);
    for (std::size_t i = 0; i < f.steps.size() + 1; ++i) {
        f.weights.push_back(w);
        w += rng.range(1, 3);
    }
    f.validate();
    return f;
}

/// Random V-split flag over the given fiber dimensions, built directly (not
/// via merge): per-step joint growth with at least one vertex growing.
template <ScalarField F>
VSplitFlag<F> random_vsplit_flag(InstanceRng& rng, const DimensionVector& dims,
                                 typename F::Context ctx) {
    VSplitFlag<F> out;
    out.dims = dims;
    out.ctx = ctx;

    std::vector<Matrix<F>> bases;
    for (auto d : dims) bases.push_back(random_invertible<F>(rng, d, ctx));

    const std::size_t room = total_dimension(dims);
    if (room == 0) {
        out.weights = {0};
        return out;
    }
    const std::size_t s = rng.below(std::min<std::size_t>(room, 4)); // proper steps
    std::vector<std::size_t> cur(dims.size(), 0);
    for (std::size_t step = 0; step < s; ++step) {
        // grow at least one vertex, keeping total strictly below full
        std::size_t slack = 0;
        for (std::size_t v = 0; v < dims.size(); ++v) slack += dims[v] - cur[v];
        if (slack <= 1) break;
        bool grew = false;
        for (std::size_t v = 0; v < dims.size(); ++v) {
            const std::size_t head = dims[v] - cur[v];
            if (head == 0) continue;
            std::size_t inc = rng.below(head + 1);
            if (!grew && v + 1 == dims.size() && inc == 0) inc = 1;
            // never exhaust the very last slack slot
            std::size_t total_after = 0;
            for (std::size_t w = 0; w < dims.size(); ++w)
                total_after += (w == v ? cur[w] + inc : cur[w]);
            while (inc > 0 && total_after >= room) {
                --inc;
                --total_after;
            }
            if (inc > 0) grew = true;
            cur[v] += inc;
        }
        if (!grew) break;
        SubspaceTuple<F> tuple;
        for (std::size_t v = 0; v < dims.size(); ++v) {
            std::vector<std::size_t> cols(cur[v]);
            for (std::size_t c = 0; c < cur[v]; ++c) cols[c] = c;
            tuple.push_back(bases[v].select_columns(cols));
        }
        out.steps.push_back(std::move(tuple));
    }

    long long w = rng.range(-6, -1);
    for (std::size_t i = 0; i < out.steps.size() + 1; ++i) {
        out.weights.push_back(w);
        w += rng.range(1, 3);
    }
    out.validate();
    return out;
}

/// Random one-parameter subgroup with small integer weights.
template <ScalarField F>
OneParamSubgroup<F> random_one_param_subgroup(InstanceRng& rng, const DimensionVector& dims,
                                              typename F::Context ctx, long long weight_span = 2) {
    OneParamSubgroup<F> lambda;
    for (auto d : dims) {
        lambda.basis.push_back(random_invertible<F>(rng, d, ctx));
        std::vector<long long> w;
        for (std::size_t i = 0; i < d; ++i) w.push_back(rng.range(-weight_span, weight_span));
        lambda.weights.push_back(std::move(w));
    }
    return lambda;
}

/// Random representation on the given quiver; roughly `density` out of 4
/// entries are nonzero.
template <ScalarField F>
Representation<F> random_representation(InstanceRng& rng, const Quiver& quiver,
                                        const DimensionVector& dims, typename F::Context ctx,
                                        bool with_epsilon) {
    Representation<F> rep;
    rep.quiver = quiver;
    rep.dims = dims;
    rep.epsilon = with_epsilon ? rng.scalar<F>(ctx) : F::zero(ctx);
    for (const auto& arrow : quiver.arrows) {
        std::vector<Matrix<F>> copies;
        for (std::size_t k = 0; k < arrow.multiplicity; ++k)
            copies.push_back(random_matrix<F>(rng, dims[arrow.head], dims[arrow.tail], ctx));
        rep.maps.push_back(std::move(copies));
    }
    if (!rep.is_projectively_nontrivial()) {
        if (with_epsilon)
            rep.epsilon = F::one(ctx);
        else if (!rep.maps.empty() && !rep.maps[0].empty() && rep.maps[0][0].rows() > 0 &&
                 rep.maps[0][0].cols() > 0)
            rep.maps[0][0].at(0, 0) = F::one(ctx);
    }
    return rep;
}

/// A small pool of quiver shapes used by randomized suites.
inline Quiver sample_quiver(InstanceRng& rng) {
    Quiver q;
    switch (rng.below(5)) {
    case 0: // single loop
        q.vertices = {"v"};
        q.arrows = {{"a", 0, 0, 1}};
        break;
    case 1: // loop with a doubled arrow
        q.vertices = {"v"};
        q.arrows = {{"a", 0, 0, 2}};
        break;
    case 2: // Kronecker
        q.vertices = {"v1", "v2"};
        q.arrows = {{"a", 0, 1, 1}};
        break;
    case 3: // oriented 2-cycle
        q.vertices = {"v1", "v2"};
        q.arrows = {{"a", 0, 1, 1}, {"b", 1, 0, 1}};
        break;
    default: // 3-vertex with a cycle and a tail
        q.vertices = {"v1", "v2", "v3"};
        q.arrows = {{"a", 0, 1, 1}, {"b", 1, 2, 1}, {"c", 2, 0, 1}, {"d", 0, 2, 1}};
        break;
    }
    return q;
}

} // namespace qstab
