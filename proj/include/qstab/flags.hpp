#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "qstab/polynomial.hpp"
#include "qstab/representation.hpp"

namespace qstab {

/// Weighted flag in a single vector space: a strictly increasing chain of
/// proper subspaces (bases as matrix columns) together with strictly
/// increasing integer weights, one more weight than steps.
template <ScalarField F>
struct WeightedFlag {
    using Context = typename F::Context;

    std::size_t ambient_dim = 0;
    Context ctx{};
    std::vector<Matrix<F>> steps;
    std::vector<long long> weights;

    void validate() const {
        if (weights.size() != steps.size() + 1)
            throw std::invalid_argument("WeightedFlag: weights.size() must be steps.size()+1");
        for (std::size_t i = 0; i + 1 < weights.size(); ++i)
            if (weights[i] >= weights[i + 1])
                throw std::invalid_argument("WeightedFlag: weights must strictly increase");
        std::size_t prev_dim = 0;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto& s = steps[i];
            if (s.rows() != ambient_dim)
                throw std::invalid_argument("WeightedFlag: step has wrong ambient dimension");
            if (s.rank() != s.cols())
                throw std::invalid_argument("WeightedFlag: step basis has dependent columns");
            if (s.cols() <= prev_dim || s.cols() >= ambient_dim ||
                (i > 0 && !column_span_contains(s, steps[i - 1])))
                throw std::invalid_argument("WeightedFlag: steps must strictly increase");
            prev_dim = s.cols();
        }
    }
};

/// Weighted flag in a V-split vector space: a jointly strict chain of
/// subspace tuples with one shared weight vector.
template <ScalarField F>
struct VSplitFlag {
    using Context = typename F::Context;

    DimensionVector dims;
    Context ctx{};
    std::vector<SubspaceTuple<F>> steps;
    std::vector<long long> weights;

    void validate() const {
        if (weights.size() != steps.size() + 1)
            throw std::invalid_argument("VSplitFlag: weights.size() must be steps.size()+1");
        for (std::size_t i = 0; i + 1 < weights.size(); ++i)
            if (weights[i] >= weights[i + 1])
                throw std::invalid_argument("VSplitFlag: weights must strictly increase");
        std::vector<std::size_t> prev(dims.size(), 0);
        bool prev_full = false;
        for (const auto& step : steps) {
            if (step.size() != dims.size())
                throw std::invalid_argument("VSplitFlag: tuple size mismatch");
            bool grew = false;
            bool full = true;
            for (std::size_t v = 0; v < dims.size(); ++v) {
                if (step[v].rows() != dims[v])
                    throw std::invalid_argument("VSplitFlag: fiber dimension mismatch");
                if (step[v].rank() != step[v].cols())
                    throw std::invalid_argument("VSplitFlag: dependent basis columns");
                if (step[v].cols() < prev[v])
                    throw std::invalid_argument("VSplitFlag: steps must be nested");
                if (step[v].cols() > prev[v]) grew = true;
                if (step[v].cols() < dims[v]) full = false;
                prev[v] = step[v].cols();
            }
            if (!grew || prev_full)
                throw std::invalid_argument("VSplitFlag: chain not jointly strict");
            prev_full = full;
        }
        if (prev_full && !steps.empty())
            throw std::invalid_argument("VSplitFlag: last step must be proper");
    }
};

/// Diagonalizable one-parameter subgroup: per vertex an invertible basis of
/// the fiber and one integer weight per basis vector.
template <ScalarField F>
struct OneParamSubgroup {
    std::vector<Matrix<F>> basis;
    std::vector<std::vector<long long>> weights;

    void validate() const {
        if (basis.size() != weights.size())
            throw std::invalid_argument("OneParamSubgroup: basis/weights size mismatch");
        for (std::size_t v = 0; v < basis.size(); ++v) {
            if (basis[v].rows() != basis[v].cols() || basis[v].rank() != basis[v].rows())
                throw std::invalid_argument("OneParamSubgroup: basis must be invertible");
            if (weights[v].size() != basis[v].cols())
                throw std::invalid_argument("OneParamSubgroup: one weight per basis vector");
        }
    }
};

namespace detail {

/// Largest per-vertex step index whose weight is <= w; 0 when none (the zero
/// subspace). Index s_v+1 designates the full space.
inline std::size_t merge_index(const std::vector<long long>& vertex_weights, long long w) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vertex_weights.size(); ++i)
        if (vertex_weights[i] <= w) idx = i + 1;
    return idx;
}

} // namespace detail

/// Fuses per-vertex weighted flags into one V-split flag. The merged weight
/// vector is the sorted union of per-vertex weights; step j holds, at each
/// vertex, the largest per-vertex step of weight <= the j-th merged weight.
template <ScalarField F>
VSplitFlag<F> merge_flags(const std::vector<WeightedFlag<F>>& per_vertex) {
    if (per_vertex.empty()) throw std::invalid_argument("merge_flags: need at least one vertex");
    for (const auto& f : per_vertex) f.validate();

    const typename F::Context ctx = per_vertex.front().ctx;
    std::set<long long> weight_set;
    for (const auto& f : per_vertex) weight_set.insert(f.weights.begin(), f.weights.end());
    const std::vector<long long> merged(weight_set.begin(), weight_set.end());

    VSplitFlag<F> out;
    out.ctx = ctx;
    for (const auto& f : per_vertex) out.dims.push_back(f.ambient_dim);

    std::vector<std::size_t> prev_dims(per_vertex.size(), 0);
    for (const long long w : merged) {
        SubspaceTuple<F> tuple;
        for (const auto& f : per_vertex) {
            const std::size_t idx = detail::merge_index(f.weights, w);
            if (idx == 0)
                tuple.emplace_back(f.ambient_dim, 0, ctx);
            else if (idx <= f.steps.size())
                tuple.push_back(f.steps[idx - 1]);
            else
                tuple.push_back(Matrix<F>::identity(f.ambient_dim, ctx));
        }
        const auto dims = subspace_dims(tuple);
        if (dims == out.dims) {
            // the chain is complete once every vertex is full
            out.weights.push_back(w);
            return out;
        }
        const bool is_zero = std::all_of(dims.begin(), dims.end(),
                                         [](std::size_t d) { return d == 0; });
        if (is_zero || dims == prev_dims) continue;
        prev_dims = dims;
        out.steps.push_back(std::move(tuple));
        out.weights.push_back(w);
    }
    throw std::logic_error("merge_flags: chain never reached the full space");
}

/// Splits a V-split flag back into per-vertex flags by projection, collapsing
/// repeated subspaces; each distinct subspace keeps the weight of its first
/// occurrence. Inverse to merge_flags.
template <ScalarField F>
std::vector<WeightedFlag<F>> project_flags(const VSplitFlag<F>& flag) {
    flag.validate();
    std::vector<WeightedFlag<F>> out;
    for (std::size_t v = 0; v < flag.dims.size(); ++v) {
        WeightedFlag<F> f;
        f.ambient_dim = flag.dims[v];
        f.ctx = flag.ctx;
        std::size_t prev_dim = 0;
        bool full_seen = false;
        for (std::size_t j = 0; j < flag.weights.size() && !full_seen; ++j) {
            const bool is_last = j == flag.steps.size();
            const std::size_t dim = is_last ? flag.dims[v] : flag.steps[j][v].cols();
            if (dim == flag.dims[v]) {
                f.weights.push_back(flag.weights[j]);
                full_seen = true;
            } else if (dim > prev_dim) {
                f.steps.push_back(flag.steps[j][v]);
                f.weights.push_back(flag.weights[j]);
                prev_dim = dim;
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// The weighted flag induced by a one-parameter subgroup: per vertex, step i
/// is the sum of the eigenspaces of the i smallest distinct weights.
template <ScalarField F>
VSplitFlag<F> ops_to_flag(const OneParamSubgroup<F>& lambda) {
    lambda.validate();
    std::vector<WeightedFlag<F>> per_vertex;
    for (std::size_t v = 0; v < lambda.basis.size(); ++v) {
        const auto& b = lambda.basis[v];
        std::set<long long> distinct(lambda.weights[v].begin(), lambda.weights[v].end());
        WeightedFlag<F> f;
        f.ambient_dim = b.rows();
        f.ctx = b.context();
        if (distinct.empty()) {
            // zero-dimensional fiber: trivial flag with weight 0
            f.weights = {0};
            per_vertex.push_back(std::move(f));
            continue;
        }
        f.weights.assign(distinct.begin(), distinct.end());
        for (std::size_t i = 0; i + 1 < f.weights.size(); ++i) {
            std::vector<std::size_t> cols;
            for (std::size_t c = 0; c < lambda.weights[v].size(); ++c)
                if (lambda.weights[v][c] <= f.weights[i]) cols.push_back(c);
            f.steps.push_back(b.select_columns(cols));
        }
        per_vertex.push_back(std::move(f));
    }
    return merge_flags(per_vertex);
}

/// Slot layout of the amplified space M = ⊕_v W_v^{⊕σ_v}: vertex-major,
/// copies second, fiber coordinates last.
inline std::size_t amplified_dimension(const DimensionVector& dims,
                                       const std::vector<long long>& sigma) {
    if (dims.size() != sigma.size())
        throw std::invalid_argument("amplified_dimension: sigma size mismatch");
    std::size_t total = 0;
    for (std::size_t v = 0; v < dims.size(); ++v) {
        if (sigma[v] <= 0) throw std::invalid_argument("sigma entries must be positive");
        total += static_cast<std::size_t>(sigma[v]) * dims[v];
    }
    return total;
}

/// Places one matrix per vertex as sigma_v diagonal copies into the amplified
/// space; `rows_of` selects the per-vertex row count of the blocks.
template <ScalarField F>
Matrix<F> amplify_blocks(const std::vector<Matrix<F>>& blocks,
                         const std::vector<long long>& sigma, typename F::Context ctx) {
    std::size_t rows = 0, cols = 0;
    for (std::size_t v = 0; v < blocks.size(); ++v) {
        rows += static_cast<std::size_t>(sigma[v]) * blocks[v].rows();
        cols += static_cast<std::size_t>(sigma[v]) * blocks[v].cols();
    }
    Matrix<F> out(rows, cols, ctx);
    std::size_t ro = 0, co = 0;
    for (std::size_t v = 0; v < blocks.size(); ++v) {
        for (long long c = 0; c < sigma[v]; ++c) {
            for (std::size_t i = 0; i < blocks[v].rows(); ++i)
                for (std::size_t j = 0; j < blocks[v].cols(); ++j)
                    out.at(ro + i, co + j) = blocks[v].at(i, j);
            ro += blocks[v].rows();
            co += blocks[v].cols();
        }
    }
    return out;
}

/// The flag M_j = ⊕_v (W_j^v)^{⊕σ_v} in M = ⊕_v W_v^{⊕σ_v}, weights carried
/// over unchanged.
template <ScalarField F>
WeightedFlag<F> total_flag(const VSplitFlag<F>& flag, const std::vector<long long>& sigma) {
    flag.validate();
    WeightedFlag<F> out;
    out.ambient_dim = amplified_dimension(flag.dims, sigma);
    out.ctx = flag.ctx;
    out.weights = flag.weights;
    for (const auto& step : flag.steps)
        out.steps.push_back(amplify_blocks(step, sigma, flag.ctx));
    return out;
}

/// Both sides of the weight identity for quotients k_v : W_v -> C^{t_v}
/// (surjective), evaluated independently: the left on the amplified total
/// flag with k = ⊕ k_v^{⊕σ_v}, the right vertexwise. The two agree exactly.
template <ScalarField F>
std::pair<Rational, Rational> weight_formula_sides(const std::vector<WeightedFlag<F>>& per_vertex,
                                                   const std::vector<Matrix<F>>& quotients,
                                                   const std::vector<long long>& sigma) {
    if (per_vertex.size() != quotients.size() || per_vertex.size() != sigma.size())
        throw std::invalid_argument("weight_formula_sides: per-vertex data size mismatch");
    if (per_vertex.empty()) throw std::invalid_argument("weight_formula_sides: no vertices");

    long long r = 0, t = 0;
    for (std::size_t v = 0; v < per_vertex.size(); ++v) {
        per_vertex[v].validate();
        if (sigma[v] <= 0) throw std::invalid_argument("weight_formula_sides: sigma must be positive");
        const auto& k = quotients[v];
        if (k.cols() != per_vertex[v].ambient_dim)
            throw std::invalid_argument("weight_formula_sides: quotient domain mismatch");
        if (k.rank() != k.rows())
            throw std::invalid_argument("weight_formula_sides: k_v must be surjective");
        if (per_vertex[v].ambient_dim == 0)
            throw std::invalid_argument("weight_formula_sides: zero-dimensional fiber");
        r += sigma[v] * static_cast<long long>(per_vertex[v].ambient_dim);
        t += sigma[v] * static_cast<long long>(k.rows());
    }

    // left side: amplified flag and amplified quotient
    const VSplitFlag<F> merged = merge_flags(per_vertex);
    const WeightedFlag<F> total = total_flag(merged, sigma);
    const Matrix<F> k_total = amplify_blocks(quotients, sigma, merged.ctx);

    Rational lhs(0);
    for (std::size_t j = 0; j < total.steps.size(); ++j) {
        const long long gap = total.weights[j + 1] - total.weights[j];
        const long long dim_mj = static_cast<long long>(total.steps[j].cols());
        const long long dim_kmj = static_cast<long long>((k_total * total.steps[j]).rank());
        lhs += Rational(gap, r) * Rational(r * dim_kmj - t * dim_mj);
    }

    // right side: vertexwise terms
    Rational rhs(0);
    for (std::size_t v = 0; v < per_vertex.size(); ++v) {
        const auto& f = per_vertex[v];
        const long long rv = static_cast<long long>(f.ambient_dim);
        const long long tv = static_cast<long long>(quotients[v].rows());

        Rational inner(0);
        for (std::size_t j = 0; j < f.steps.size(); ++j) {
            const long long gap = f.weights[j + 1] - f.weights[j];
            const long long dim_w = static_cast<long long>(f.steps[j].cols());
            const long long dim_kw = static_cast<long long>((quotients[v] * f.steps[j]).rank());
            inner += Rational(gap, rv) * Rational(rv * dim_kw - tv * dim_w);
        }

        Rational weighted_dims(0);
        long long prev_dim = 0;
        for (std::size_t j = 0; j < f.weights.size(); ++j) {
            const long long dim =
                j < f.steps.size() ? static_cast<long long>(f.steps[j].cols()) : rv;
            weighted_dims += Rational(f.weights[j]) * Rational(dim - prev_dim);
            prev_dim = dim;
        }

        const Rational skew = Rational(tv, rv) - Rational(t, r);
        rhs += Rational(sigma[v]) * (inner - skew * weighted_dims);
    }
    return {lhs, rhs};
}

/// One vertex of abstract filtration data: proper steps (rank, Hilbert
/// polynomial), the full pair, and the weight vector.
struct SheafVertexFiltration {
    struct Step {
        long long rank = 0;
        RationalPolynomial hilbert;
    };
    std::vector<Step> steps;
    Step full;
    std::vector<long long> weights;
};

/// Both sides of the sheaf-level weight identity, as exact rational functions
/// in the formal variable l, cleared of the denominators P(E^total)(l) and
/// P(E_v)(l). Equality holds identically for any admissible data.
inline std::pair<RationalFunction, RationalFunction> weight_formula_sheaf_sides(
    const std::vector<SheafVertexFiltration>& data, const std::vector<long long>& sigma) {
    if (data.empty() || data.size() != sigma.size())
        throw std::invalid_argument("weight_formula_sheaf_sides: per-vertex data size mismatch");

    RationalPolynomial p_total;
    long long rk_total = 0;
    for (std::size_t v = 0; v < data.size(); ++v) {
        const auto& d = data[v];
        if (sigma[v] <= 0)
            throw std::invalid_argument("weight_formula_sheaf_sides: sigma must be positive");
        if (d.weights.size() != d.steps.size() + 1)
            throw std::invalid_argument("weight_formula_sheaf_sides: weights size mismatch");
        for (std::size_t i = 0; i + 1 < d.weights.size(); ++i)
            if (d.weights[i] >= d.weights[i + 1])
                throw std::invalid_argument("weight_formula_sheaf_sides: weights must increase");
        long long prev = 0;
        for (const auto& s : d.steps) {
            if (s.rank < prev)
                throw std::invalid_argument("weight_formula_sheaf_sides: ranks must not decrease");
            prev = s.rank;
        }
        if (d.full.rank < prev)
            throw std::invalid_argument("weight_formula_sheaf_sides: ranks must not decrease");
        if (d.full.hilbert.is_zero())
            throw std::invalid_argument("weight_formula_sheaf_sides: zero vertex Hilbert polynomial");
        p_total += Rational(sigma[v]) * d.full.hilbert;
        rk_total += sigma[v] * d.full.rank;
    }
    if (p_total.is_zero())
        throw std::invalid_argument("weight_formula_sheaf_sides: zero total Hilbert polynomial");

    // common denominator P_total * prod_v P_v; cofactor(v) = D / P_v
    RationalPolynomial product_all = RationalPolynomial::constant(Rational(1));
    for (const auto& d : data) product_all = product_all * d.full.hilbert;
    const RationalPolynomial denom = p_total * product_all;

    auto cofactor = [&](std::size_t skip) {
        RationalPolynomial out = p_total;
        for (std::size_t v = 0; v < data.size(); ++v)
            if (v != skip) out = out * data[v].full.hilbert;
        return out;
    };

    // merged filtration
    std::set<long long> weight_set;
    for (const auto& d : data) weight_set.insert(d.weights.begin(), d.weights.end());
    const std::vector<long long> merged(weight_set.begin(), weight_set.end());

    auto step_at = [](const SheafVertexFiltration& d, std::size_t idx) {
        if (idx == 0) return SheafVertexFiltration::Step{};
        if (idx <= d.steps.size()) return d.steps[idx - 1];
        return d.full;
    };

    RationalPolynomial lhs_num;
    for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
        long long rk_j = 0;
        RationalPolynomial p_j;
        for (std::size_t v = 0; v < data.size(); ++v) {
            const auto s = step_at(data[v], detail::merge_index(data[v].weights, merged[j]));
            rk_j += sigma[v] * s.rank;
            p_j += Rational(sigma[v]) * s.hilbert;
        }
        const RationalPolynomial bracket =
            Rational(rk_j) * p_total - Rational(rk_total) * p_j;
        lhs_num += Rational(merged[j + 1] - merged[j]) * (bracket * product_all);
    }

    RationalPolynomial rhs_num;
    for (std::size_t v = 0; v < data.size(); ++v) {
        const auto& d = data[v];
        const RationalPolynomial cof = cofactor(v);

        RationalPolynomial inner;
        for (std::size_t j = 0; j < d.steps.size(); ++j) {
            const RationalPolynomial bracket =
                Rational(d.steps[j].rank) * d.full.hilbert - Rational(d.full.rank) * d.steps[j].hilbert;
            inner += Rational(d.weights[j + 1] - d.weights[j]) * (bracket * cof);
        }

        RationalPolynomial weighted_growth;
        RationalPolynomial prev;
        for (std::size_t j = 0; j < d.weights.size(); ++j) {
            const RationalPolynomial cur = j < d.steps.size() ? d.steps[j].hilbert : d.full.hilbert;
            weighted_growth += Rational(d.weights[j]) * (cur - prev);
            prev = cur;
        }
        // (rk_v / P_v - rk_total / P_total) cleared of denominators
        const RationalPolynomial skew =
            Rational(d.full.rank) * cof - (Rational(rk_total) * product_all);
        rhs_num += Rational(sigma[v]) * (inner - skew * weighted_growth);
    }

    return {RationalFunction{lhs_num, denom}, RationalFunction{rhs_num, denom}};
}

} // namespace qstab
