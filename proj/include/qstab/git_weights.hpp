#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qstab/flags.hpp"
#include "qstab/representation.hpp"

namespace qstab {

/// Filtration of subspace tuples with positive rational coefficients, the
/// normalized form of a weighted flag.
template <ScalarField F>
struct WeightedFiltrationAlpha {
    std::vector<SubspaceTuple<F>> steps;
    std::vector<Rational> alpha;

    void validate(const DimensionVector& dims) const {
        if (alpha.size() != steps.size())
            throw std::invalid_argument("WeightedFiltrationAlpha: one coefficient per step");
        for (const auto& a : alpha)
            if (a.sign() <= 0)
                throw std::invalid_argument("WeightedFiltrationAlpha: coefficients must be positive");
        std::vector<std::size_t> prev(dims.size(), 0);
        for (const auto& step : steps) {
            if (step.size() != dims.size())
                throw std::invalid_argument("WeightedFiltrationAlpha: tuple size mismatch");
            bool grew = false;
            for (std::size_t v = 0; v < dims.size(); ++v) {
                if (step[v].rows() != dims[v] || step[v].cols() > dims[v])
                    throw std::invalid_argument("WeightedFiltrationAlpha: fiber shape mismatch");
                if (step[v].cols() < prev[v])
                    throw std::invalid_argument("WeightedFiltrationAlpha: steps must be nested");
                if (step[v].cols() > prev[v]) grew = true;
                prev[v] = step[v].cols();
            }
            if (!grew) throw std::invalid_argument("WeightedFiltrationAlpha: chain not strict");
        }
    }
};

/// Nondecreasing rational weight vector on the amplified space, summing to
/// zero: the weight data of a special-linear one-parameter subgroup.
struct GammaPrime {
    std::vector<Rational> entries;
};

/// gamma' = sum_i alpha_i (R_i - R, ..., R_i - R, R_i, ..., R_i), the first
/// R_i slots carrying R_i - R, where R_i is the amplified rank of step i and
/// R the amplified total rank.
template <ScalarField F>
GammaPrime gamma_prime(const WeightedFiltrationAlpha<F>& filtration,
                       const std::vector<long long>& sigma, const DimensionVector& dims) {
    filtration.validate(dims);
    const std::size_t big_r = amplified_dimension(dims, sigma);
    GammaPrime out;
    out.entries.assign(big_r, Rational(0));
    for (std::size_t i = 0; i < filtration.steps.size(); ++i) {
        std::size_t step_rank = 0;
        for (std::size_t v = 0; v < dims.size(); ++v)
            step_rank += static_cast<std::size_t>(sigma[v]) * filtration.steps[i][v].cols();
        const Rational low(static_cast<long long>(step_rank) - static_cast<long long>(big_r));
        const Rational high(static_cast<long long>(step_rank));
        for (std::size_t k = 0; k < big_r; ++k)
            out.entries[k] += filtration.alpha[i] * (k < step_rank ? low : high);
    }
    return out;
}

/// -sum_v eta_v dim(sub_v), the character value on a subspace tuple.
inline Rational character_pairing(const std::vector<Rational>& eta,
                                  const std::vector<std::size_t>& sub_dims) {
    if (eta.size() != sub_dims.size())
        throw std::invalid_argument("character_pairing: size mismatch");
    Rational acc(0);
    for (std::size_t v = 0; v < eta.size(); ++v)
        acc -= eta[v] * Rational(static_cast<long long>(sub_dims[v]));
    return acc;
}

template <ScalarField F>
Rational character_pairing(const std::vector<Rational>& eta, const SubspaceTuple<F>& sub) {
    return character_pairing(eta, subspace_dims(sub));
}

namespace detail {

/// Arrow-copy maps rewritten in the eigenbases of lambda: block (i, j) of
/// the returned matrix connects tail eigenvector j to head eigenvector i.
template <ScalarField F>
Matrix<F> in_eigenbasis(const Matrix<F>& f, const Matrix<F>& head_basis,
                        const Matrix<F>& tail_basis) {
    return head_basis.inverse() * f * tail_basis;
}

} // namespace detail

/// Hilbert-Mumford weight of the lambda-action on the projectivized
/// representation: the maximum conjugation weight (head eigenweight minus
/// tail eigenweight) over all nonzero blocks, the augmentation contributing
/// weight zero. Undefined (nullopt) on a projectively trivial representation.
template <ScalarField F>
std::optional<Rational> hm_weight(const Representation<F>& rep,
                                  const OneParamSubgroup<F>& lambda) {
    lambda.validate();
    if (lambda.basis.size() != rep.quiver.vertex_count())
        throw std::invalid_argument("hm_weight: lambda has wrong vertex count");
    for (std::size_t v = 0; v < lambda.basis.size(); ++v)
        if (lambda.basis[v].rows() != rep.dims[v])
            throw std::invalid_argument("hm_weight: lambda fiber dimension mismatch");
    if (!rep.is_projectively_nontrivial()) return std::nullopt;

    bool have = false;
    long long best = 0;
    auto consider = [&](long long w) {
        if (!have || w > best) best = w;
        have = true;
    };
    if (!rep.epsilon.is_zero()) consider(0);
    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
        const auto& arrow = rep.quiver.arrows[a];
        for (const auto& f : rep.maps[a]) {
            const Matrix<F> blocks =
                detail::in_eigenbasis(f, lambda.basis[arrow.head], lambda.basis[arrow.tail]);
            for (std::size_t i = 0; i < blocks.rows(); ++i)
                for (std::size_t j = 0; j < blocks.cols(); ++j)
                    if (!blocks.at(i, j).is_zero())
                        consider(lambda.weights[arrow.head][i] - lambda.weights[arrow.tail][j]);
        }
    }
    return Rational(best);
}

/// True iff every arrow-copy map drops the ascending eigenflag of lambda by
/// at least one step and the augmentation vanishes; equivalent to
/// hm_weight < 0.
template <ScalarField F>
bool flag_characterization(const Representation<F>& rep, const OneParamSubgroup<F>& lambda) {
    lambda.validate();
    if (!rep.is_projectively_nontrivial())
        throw std::invalid_argument("flag_characterization: projectively trivial representation");
    if (!rep.epsilon.is_zero()) return false;

    // merged distinct weights across all vertices
    std::set<long long> weight_set;
    for (const auto& w : lambda.weights) weight_set.insert(w.begin(), w.end());
    const std::vector<long long> merged(weight_set.begin(), weight_set.end());

    // U_j at vertex v: eigenvectors of weight <= merged[j]
    auto step_space = [&](std::size_t v, long long bound) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < lambda.weights[v].size(); ++c)
            if (lambda.weights[v][c] <= bound) cols.push_back(c);
        return lambda.basis[v].select_columns(cols);
    };

    for (std::size_t j = 0; j < merged.size(); ++j) {
        for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
            const auto& arrow = rep.quiver.arrows[a];
            const Matrix<F> tail = step_space(arrow.tail, merged[j]);
            Matrix<F> head =
                j == 0 ? Matrix<F>(rep.dims[arrow.head], 0, rep.context())
                       : step_space(arrow.head, merged[j - 1]);
            for (const auto& f : rep.maps[a])
                if (!column_span_contains(head, f * tail)) return false;
        }
    }
    return true;
}

/// Element of (M^{⊗s} ⊗ det^{-1})^{⊕(b+1)}, s = dim M: sparse coefficients
/// on basis tensors, one summand per arrow-copy slot plus one for the
/// augmentation.
template <ScalarField F>
struct DecoratedTensor {
    struct Key {
        std::size_t summand;
        std::vector<std::size_t> indices;
        friend auto operator<=>(const Key&, const Key&) = default;
    };

    std::size_t space_dim = 0; // s = dim M
    std::size_t summands = 0;  // b + 1
    int det_twist = -1;        // exponent of the det factor
    std::map<Key, F> coefficients;
    std::vector<std::size_t> slot_vertex; // slot -> vertex of M's layout

    void add(Key key, const F& value) {
        if (value.is_zero()) return;
        auto [it, inserted] = coefficients.try_emplace(std::move(key), value);
        if (!inserted) {
            it->second = it->second + value;
            if (it->second.is_zero()) coefficients.erase(it);
        }
    }
};

namespace detail {

inline int permutation_sign(std::vector<std::size_t> perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

/// All orderings of {0..n-1} with their signs.
inline std::vector<std::pair<std::vector<std::size_t>, int>> signed_permutations(std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::pair<std::vector<std::size_t>, int>> out;
    do {
        out.emplace_back(perm, permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace detail

/// Embeds the arrow blocks and the augmentation into the decorated tensor
/// space: an endomorphism summand maps u ⊗ e_t^\vee to u tensored with the
/// antisymmetrized complement of e_t (sign of the permutation completing the
/// basis), twisted by det^{-1}; the augmentation lands on the antisymmetrized
/// full tensor in the final summand. Cross-check scale only: dim M <= 3.
template <ScalarField F>
DecoratedTensor<F> embed_end_to_tensor(const Representation<F>& rep,
                                       const std::vector<long long>& sigma) {
    rep.validate(false);
    const std::size_t s = amplified_dimension(rep.dims, sigma);
    if (s > 3)
        throw std::invalid_argument("embed_end_to_tensor: amplified dimension above cross-check bound");
    if (s == 0) throw std::invalid_argument("embed_end_to_tensor: empty amplified space");

    std::size_t b = 1;
    for (const auto& arrow : rep.quiver.arrows) b = std::max(b, arrow.multiplicity);

    DecoratedTensor<F> out;
    out.space_dim = s;
    out.summands = b + 1;

    // slot layout of M: vertex-major, copies second, fiber coordinates last
    std::vector<std::size_t> vertex_offset(rep.dims.size(), 0);
    {
        std::size_t off = 0;
        for (std::size_t v = 0; v < rep.dims.size(); ++v) {
            vertex_offset[v] = off;
            for (long long c = 0; c < sigma[v]; ++c)
                for (std::size_t i = 0; i < rep.dims[v]; ++i) out.slot_vertex.push_back(v);
            off += static_cast<std::size_t>(sigma[v]) * rep.dims[v];
        }
    }
    auto slot = [&](std::size_t v, std::size_t copy, std::size_t i) {
        return vertex_offset[v] + copy * rep.dims[v] + i;
    };

    // dual basis vector e_t^\vee as a signed antisymmetrized tensor of the
    // complementary slots, placed after a fixed head slot
    auto add_endomorphism_entry = [&](std::size_t summand, std::size_t head_slot,
                                      std::size_t tail_slot, const F& value) {
        std::vector<std::size_t> complement;
        for (std::size_t k = 0; k < s; ++k)
            if (k != tail_slot) complement.push_back(k);
        // sign of (tail, complement...) as a permutation of (0..s-1)
        std::vector<std::size_t> completing{tail_slot};
        completing.insert(completing.end(), complement.begin(), complement.end());
        const int base_sign = detail::permutation_sign(completing);
        for (const auto& [perm, sign] : detail::signed_permutations(complement.size())) {
            typename DecoratedTensor<F>::Key key;
            key.summand = summand;
            key.indices.push_back(head_slot);
            for (auto p : perm) key.indices.push_back(complement[p]);
            const F signed_value =
                (base_sign * sign) > 0 ? value : -value;
            out.add(std::move(key), signed_value);
        }
    };

    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
        const auto& arrow = rep.quiver.arrows[a];
        for (std::size_t k = 0; k < rep.maps[a].size(); ++k) {
            const auto& f = rep.maps[a][k];
            for (long long ch = 0; ch < sigma[arrow.head]; ++ch)
                for (long long ct = 0; ct < sigma[arrow.tail]; ++ct)
                    for (std::size_t i = 0; i < f.rows(); ++i)
                        for (std::size_t j = 0; j < f.cols(); ++j)
                            if (!f.at(i, j).is_zero())
                                add_endomorphism_entry(
                                    k, slot(arrow.head, static_cast<std::size_t>(ch), i),
                                    slot(arrow.tail, static_cast<std::size_t>(ct), j), f.at(i, j));
        }
    }

    // augmentation: epsilon times the antisymmetrized full tensor
    if (!rep.epsilon.is_zero()) {
        for (const auto& [perm, sign] : detail::signed_permutations(s)) {
            typename DecoratedTensor<F>::Key key;
            key.summand = b;
            key.indices = perm;
            out.add(std::move(key), sign > 0 ? rep.epsilon : -rep.epsilon);
        }
    }
    return out;
}

/// Transforms the tensor by a block-diagonal base change acting on every
/// slot and by det(g)^{-1} on the twist.
template <ScalarField F>
DecoratedTensor<F> tensor_base_change(const DecoratedTensor<F>& t,
                                      const std::vector<Matrix<F>>& vertex_g,
                                      const std::vector<long long>& sigma,
                                      const DimensionVector& dims) {
    // assemble g on M
    std::vector<Matrix<F>> blocks;
    for (std::size_t v = 0; v < dims.size(); ++v)
        for (long long c = 0; c < sigma[v]; ++c) blocks.push_back(vertex_g[v]);
    typename F::Context ctx = vertex_g.front().context();
    std::vector<long long> ones(blocks.size(), 1);
    const Matrix<F> g = amplify_blocks(blocks, ones, ctx);
    const F det_scale = g.determinant().inverse(); // det twist exponent -1

    DecoratedTensor<F> out;
    out.space_dim = t.space_dim;
    out.summands = t.summands;
    out.det_twist = t.det_twist;
    out.slot_vertex = t.slot_vertex;

    const std::size_t s = t.space_dim;
    std::vector<std::size_t> target(s, 0);
    for (const auto& [key, value] : t.coefficients) {
        // expand g^{⊗s} applied to this basis tensor
        std::fill(target.begin(), target.end(), 0);
        while (true) {
            F coeff = value * det_scale;
            for (std::size_t m = 0; m < s && !coeff.is_zero(); ++m)
                coeff = coeff * g.at(target[m], key.indices[m]);
            if (!coeff.is_zero()) {
                typename DecoratedTensor<F>::Key nk;
                nk.summand = key.summand;
                nk.indices = target;
                out.add(std::move(nk), coeff);
            }
            std::size_t m = 0;
            for (; m < s; ++m) {
                if (++target[m] < s) break;
                target[m] = 0;
            }
            if (m == s) break;
        }
    }
    return out;
}

/// Weight of the lambda-action on the tensor along the paper's dual reading:
/// minus the minimum slot-weight sum over the support of the trace-dual
/// element (the embedding of the transposed blocks), corrected by the
/// det-twist shift. `slot_weights` are the lambda-eigenweights on the slots
/// of M; the tensor must be given in that eigenbasis.
template <ScalarField F>
Rational tensor_min_weight(const DecoratedTensor<F>& dual_tensor,
                           const std::vector<long long>& slot_weights) {
    if (slot_weights.size() != dual_tensor.space_dim)
        throw std::invalid_argument("tensor_min_weight: weight count mismatch");
    if (dual_tensor.coefficients.empty())
        throw std::invalid_argument("tensor_min_weight: zero tensor");
    long long twist = 0;
    for (auto w : slot_weights) twist += w;

    bool have = false;
    long long min_sum = 0;
    for (const auto& [key, value] : dual_tensor.coefficients) {
        long long sum = 0;
        for (auto idx : key.indices) sum += slot_weights[idx];
        if (!have || sum < min_sum) min_sum = sum;
        have = true;
    }
    // det twist contributes -det_twist * (sum of all weights) to the dual
    return Rational(-min_sum + twist);
}

/// Transposes every arrow-copy block (the trace-dual presentation of the
/// decoration); the augmentation is self-dual.
template <ScalarField F>
Representation<F> transpose_blocks(const Representation<F>& rep) {
    Representation<F> out = rep;
    Quiver q = rep.quiver;
    for (auto& arrow : q.arrows) std::swap(arrow.tail, arrow.head);
    out.quiver = q;
    for (auto& copies : out.maps)
        for (auto& m : copies) m = m.transpose();
    return out;
}

} // namespace qstab
