#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qstab/flags.hpp"
#include "qstab/git_weights.hpp"
#include "qstab/invariants.hpp"
#include "qstab/sheaf.hpp"

namespace qstab {

enum class StabilityStatus { Stable, SemistableNotStable, Unstable };

enum class CertificateKind { Exhaustive, CandidateRelative };

inline const char* to_string(StabilityStatus s) {
    switch (s) {
    case StabilityStatus::Stable: return "stable";
    case StabilityStatus::SemistableNotStable: return "semistable_not_stable";
    default: return "unstable";
    }
}

inline const char* to_string(CertificateKind c) {
    return c == CertificateKind::Exhaustive ? "exhaustive" : "candidate_relative";
}

/// Verdict of a decision procedure. Unstable verdicts carry a destabilizing
/// subrepresentation; equality cases carry the tie witness.
template <ScalarField F>
struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Stable;
    CertificateKind certificate = CertificateKind::Exhaustive;
    std::optional<SubspaceTuple<F>> witness;
    std::optional<Rational> witness_pairing;
};

struct EngineOptions {
    std::size_t budget = 1'000'000; // subspace tuples
};

/// Number of k-dimensional subspaces of F_p^n (Gaussian binomial).
inline mpz_class gaussian_binomial(std::size_t n, std::size_t k, std::uint32_t p) {
    if (k > n) return 0;
    mpz_class num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
        mpz_class pn, pk;
        mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(n - i));
        mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k - i));
        num *= pn - 1;
        den *= pk - 1;
    }
    return num / den;
}

inline mpz_class subspace_count(std::size_t n, std::uint32_t p) {
    mpz_class total = 0;
    for (std::size_t k = 0; k <= n; ++k) total += gaussian_binomial(n, k, p);
    return total;
}

/// All subspaces of F_p^n as canonical basis matrices (columns are the rows
/// of the reduced row echelon form).
inline std::vector<Matrix<PrimeField>> enumerate_subspaces(PrimeField::Context ctx,
                                                           std::size_t n) {
    using PMat = Matrix<PrimeField>;
    std::vector<PMat> out;
    out.emplace_back(n, 0, ctx); // the zero subspace

    std::vector<std::size_t> pivots;
    auto emit = [&](const std::vector<std::vector<long long>>& rows) {
        PMat basis(n, rows.size(), ctx);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                basis.at(j, i) = PrimeField(ctx, rows[i][j]);
        out.push_back(std::move(basis));
    };
    auto enumerate_fill = [&](auto&& self, std::vector<std::vector<long long>>& rows,
                              const std::vector<std::pair<std::size_t, std::size_t>>& free_pos,
                              std::size_t at) -> void {
        if (at == free_pos.size()) {
            emit(rows);
            return;
        }
        for (long long v = 0; v < static_cast<long long>(ctx.p); ++v) {
            rows[free_pos[at].first][free_pos[at].second] = v;
            self(self, rows, free_pos, at + 1);
        }
    };
    auto choose_pivots = [&](auto&& self, std::size_t k, std::size_t next) -> void {
        if (pivots.size() == k) {
            std::vector<std::vector<long long>> rows(k, std::vector<long long>(n, 0));
            std::vector<bool> is_pivot(n, false);
            for (auto c : pivots) is_pivot[c] = true;
            for (std::size_t i = 0; i < k; ++i) rows[i][pivots[i]] = 1;
            std::vector<std::pair<std::size_t, std::size_t>> free_pos;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = pivots[i] + 1; j < n; ++j)
                    if (!is_pivot[j]) free_pos.emplace_back(i, j);
            enumerate_fill(enumerate_fill, rows, free_pos, 0);
            return;
        }
        for (std::size_t c = next; c < n; ++c) {
            pivots.push_back(c);
            self(self, k, c + 1);
            pivots.pop_back();
        }
    };
    for (std::size_t k = 1; k <= n; ++k) choose_pivots(choose_pivots, k, 0);
    return out;
}

/// Deterministic serialization of a subspace tuple, used for witness
/// tie-breaking (canonical bases, dimensions first).
template <ScalarField F>
std::string serialize_tuple(const SubspaceTuple<F>& t) {
    std::ostringstream os;
    for (const auto& m : t) {
        const Matrix<F> c = m.column_space();
        os << c.cols() << ":";
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) os << c.at(i, j) << ",";
        os << ";";
    }
    return os.str();
}

/// Walks every subspace tuple over the representation's fibers, in a fixed
/// deterministic order; throws budget_exceeded up front when the product
/// count exceeds the budget.
class SubspaceTupleWalker {
public:
    SubspaceTupleWalker(PrimeField::Context ctx, const DimensionVector& dims, std::size_t budget) {
        mpz_class total = 1;
        for (auto d : dims) total *= subspace_count(d, ctx.p);
        if (total > static_cast<long>(budget))
            throw budget_exceeded("subspace enumeration: " + total.get_str() +
                                  " tuples exceed the budget of " + std::to_string(budget));
        for (auto d : dims) per_vertex_.push_back(enumerate_subspaces(ctx, d));
        odometer_.assign(dims.size(), 0);
    }

    [[nodiscard]] bool done() const { return finished_; }

    [[nodiscard]] SubspaceTuple<PrimeField> current() const {
        SubspaceTuple<PrimeField> t;
        for (std::size_t v = 0; v < per_vertex_.size(); ++v)
            t.push_back(per_vertex_[v][odometer_[v]]);
        return t;
    }

    void advance() {
        for (std::size_t v = 0; v < odometer_.size(); ++v) {
            if (++odometer_[v] < per_vertex_[v].size()) return;
            odometer_[v] = 0;
        }
        finished_ = true;
    }

private:
    std::vector<std::vector<Matrix<PrimeField>>> per_vertex_;
    std::vector<std::size_t> odometer_;
    bool finished_ = false;
};

namespace detail {

template <ScalarField F>
bool is_zero_tuple(const SubspaceTuple<F>& t) {
    for (const auto& m : t)
        if (m.cols() != 0) return false;
    return true;
}

template <ScalarField F>
bool is_full_tuple(const SubspaceTuple<F>& t, const DimensionVector& dims) {
    for (std::size_t v = 0; v < t.size(); ++v)
        if (t[v].cols() != dims[v]) return false;
    return true;
}

/// Shared verdict accumulator: worst offender by pairing, lexicographic
/// serialization as the deterministic tie-break.
template <ScalarField F>
class CharacterScan {
public:
    explicit CharacterScan(const std::vector<Rational>& eta) : eta_(eta) {}

    void consider(const SubspaceTuple<F>& sub) {
        const Rational pairing = character_pairing(eta_, subspace_dims(sub));
        if (pairing.sign() > 0) {
            const std::string key = serialize_tuple(sub);
            if (!worst_ || pairing > worst_->pairing ||
                (pairing == worst_->pairing && key < worst_->key))
                worst_ = Entry{sub, pairing, key};
        } else if (pairing.is_zero()) {
            const std::string key = serialize_tuple(sub);
            if (!tie_ || key < tie_->key) tie_ = Entry{sub, pairing, key};
        }
    }

    [[nodiscard]] StabilityVerdict<F> verdict(CertificateKind kind) const {
        StabilityVerdict<F> out;
        out.certificate = kind;
        if (worst_) {
            out.status = StabilityStatus::Unstable;
            out.witness = worst_->sub;
            out.witness_pairing = worst_->pairing;
        } else if (tie_) {
            out.status = StabilityStatus::SemistableNotStable;
            out.witness = tie_->sub;
            out.witness_pairing = tie_->pairing;
        }
        return out;
    }

private:
    struct Entry {
        SubspaceTuple<F> sub;
        Rational pairing;
        std::string key;
    };
    const std::vector<Rational>& eta_;
    std::optional<Entry> worst_;
    std::optional<Entry> tie_;
};

inline void require_normalized(const std::vector<Rational>& eta,
                               const std::vector<long long>& ranks) {
    if (eta.size() != ranks.size())
        throw std::invalid_argument("character weights: size mismatch");
    Rational sum(0);
    for (std::size_t v = 0; v < eta.size(); ++v) sum += eta[v] * Rational(ranks[v]);
    if (!sum.is_zero())
        throw std::invalid_argument("character weights violate the normalization sum eta_v r_v = 0");
}

} // namespace detail

/// Exhaustive King verdict over a prime field: enumerates every subspace
/// tuple, filters the subrepresentations, and compares the character value
/// against zero (strictly for stability).
inline StabilityVerdict<PrimeField> king_check_exhaustive(const Representation<PrimeField>& rep,
                                                          const std::vector<Rational>& eta,
                                                          const EngineOptions& opts = {}) {
    rep.validate(false);
    std::vector<long long> ranks(rep.dims.begin(), rep.dims.end());
    detail::require_normalized(eta, ranks);

    detail::CharacterScan<PrimeField> scan(eta);
    for (SubspaceTupleWalker walker(rep.context(), rep.dims, opts.budget); !walker.done();
         walker.advance()) {
        const SubspaceTuple<PrimeField> sub = walker.current();
        if (detail::is_zero_tuple(sub) || detail::is_full_tuple(sub, rep.dims)) continue;
        if (!is_subrepresentation(rep, sub)) continue;
        scan.consider(sub);
    }
    return scan.verdict(CertificateKind::Exhaustive);
}

/// King verdict relative to an explicit candidate list (any exact field).
/// Candidates must be nontrivial proper subrepresentations.
template <ScalarField F>
StabilityVerdict<F> king_check_relative(const Representation<F>& rep,
                                        const std::vector<Rational>& eta,
                                        const std::vector<SubspaceTuple<F>>& candidates) {
    rep.validate(false);
    std::vector<long long> ranks(rep.dims.begin(), rep.dims.end());
    detail::require_normalized(eta, ranks);

    detail::CharacterScan<F> scan(eta);
    for (const auto& sub : candidates) {
        if (detail::is_zero_tuple(sub) || detail::is_full_tuple(sub, rep.dims))
            throw std::invalid_argument("king_check: candidates must be nontrivial and proper");
        if (!is_subrepresentation(rep, sub))
            throw std::invalid_argument("king_check: candidate is not a subrepresentation");
        scan.consider(sub);
    }
    return scan.verdict(CertificateKind::CandidateRelative);
}

/// Sheaf data for a subrepresentation, supplied by the caller.
template <ScalarField F>
using SheafDataOracle = std::function<VSplitDatum(const SubspaceTuple<F>&)>;

namespace detail {

/// Two-stage comparison: character pairing on the oracle ranks first, the
/// sigma-weighted Hilbert ratio on ties.
template <ScalarField F>
class AsymptoticScan {
public:
    AsymptoticScan(const std::vector<long long>& sigma, const std::vector<Rational>& eta,
                   const VSplitDatum& total)
        : sigma_(sigma), eta_(eta) {
        total_rk_ = weighted_rank(total);
        total_p_ = weighted_hilbert(total);
        if (total_rk_ <= 0)
            throw std::invalid_argument("asymptotic_check: total has sigma-rank zero");
    }

    void consider(const SubspaceTuple<F>& sub, const VSplitDatum& data) {
        std::vector<long long> ranks;
        for (const auto& part : data.parts) ranks.push_back(part.rank);
        Rational pairing(0);
        for (std::size_t v = 0; v < eta_.size(); ++v)
            pairing -= eta_[v] * Rational(ranks[v]);

        const long long rk = weighted_rank(data);
        if (rk <= 0)
            throw std::invalid_argument("asymptotic_check: candidate with sigma-rank zero");

        if (pairing.sign() > 0) {
            note_violation(sub, pairing);
            return;
        }
        if (!pairing.is_zero()) return;
        // tie: lexicographic comparison of sigma-weighted Hilbert ratios
        const RationalPolynomial cross =
            Rational(total_rk_) * weighted_hilbert(data) - Rational(rk) * total_p_;
        const auto cmp = poly_lex_compare(cross, RationalPolynomial{});
        if (cmp == std::strong_ordering::greater)
            note_violation(sub, pairing);
        else if (cmp == std::strong_ordering::equal)
            note_tie(sub);
    }

    [[nodiscard]] StabilityVerdict<F> verdict(CertificateKind kind) const {
        StabilityVerdict<F> out;
        out.certificate = kind;
        if (worst_) {
            out.status = StabilityStatus::Unstable;
            out.witness = worst_->sub;
            out.witness_pairing = worst_->pairing;
        } else if (tie_) {
            out.status = StabilityStatus::SemistableNotStable;
            out.witness = tie_->sub;
            out.witness_pairing = Rational(0);
        }
        return out;
    }

private:
    struct Entry {
        SubspaceTuple<F> sub;
        Rational pairing;
        std::string key;
    };

    [[nodiscard]] long long weighted_rank(const VSplitDatum& d) const {
        long long out = 0;
        for (std::size_t v = 0; v < d.parts.size(); ++v) out += sigma_[v] * d.parts[v].rank;
        return out;
    }
    [[nodiscard]] RationalPolynomial weighted_hilbert(const VSplitDatum& d) const {
        RationalPolynomial out;
        for (std::size_t v = 0; v < d.parts.size(); ++v)
            out += Rational(sigma_[v]) * d.parts[v].hilbert;
        return out;
    }
    void note_violation(const SubspaceTuple<F>& sub, const Rational& pairing) {
        const std::string key = serialize_tuple(sub);
        if (!worst_ || pairing > worst_->pairing ||
            (pairing == worst_->pairing && key < worst_->key))
            worst_ = Entry{sub, pairing, key};
    }
    void note_tie(const SubspaceTuple<F>& sub) {
        const std::string key = serialize_tuple(sub);
        if (!tie_ || key < tie_->key) tie_ = Entry{sub, Rational(0), key};
    }

    const std::vector<long long>& sigma_;
    const std::vector<Rational>& eta_;
    long long total_rk_ = 0;
    RationalPolynomial total_p_;
    std::optional<Entry> worst_;
    std::optional<Entry> tie_;
};

} // namespace detail

/// Exhaustive asymptotic verdict: character pairing first, the
/// sigma-weighted Hilbert-polynomial comparison on ties. Sheaf data for each
/// subrepresentation comes from the oracle.
inline StabilityVerdict<PrimeField> asymptotic_check_exhaustive(
    const Representation<PrimeField>& rep, const std::vector<long long>& sigma,
    const std::vector<Rational>& eta, const VSplitDatum& total,
    const SheafDataOracle<PrimeField>& oracle, const EngineOptions& opts = {}) {
    rep.validate(false);
    std::vector<long long> ranks;
    for (const auto& part : total.parts) ranks.push_back(part.rank);
    detail::require_normalized(eta, ranks);

    detail::AsymptoticScan<PrimeField> scan(sigma, eta, total);
    for (SubspaceTupleWalker walker(rep.context(), rep.dims, opts.budget); !walker.done();
         walker.advance()) {
        const SubspaceTuple<PrimeField> sub = walker.current();
        if (detail::is_zero_tuple(sub) || detail::is_full_tuple(sub, rep.dims)) continue;
        if (!is_subrepresentation(rep, sub)) continue;
        scan.consider(sub, oracle(sub));
    }
    return scan.verdict(CertificateKind::Exhaustive);
}

/// Asymptotic verdict relative to explicit candidates.
template <ScalarField F>
StabilityVerdict<F> asymptotic_check_relative(const Representation<F>& rep,
                                              const std::vector<long long>& sigma,
                                              const std::vector<Rational>& eta,
                                              const VSplitDatum& total,
                                              const SheafDataOracle<F>& oracle,
                                              const std::vector<SubspaceTuple<F>>& candidates) {
    rep.validate(false);
    std::vector<long long> ranks;
    for (const auto& part : total.parts) ranks.push_back(part.rank);
    detail::require_normalized(eta, ranks);

    detail::AsymptoticScan<F> scan(sigma, eta, total);
    for (const auto& sub : candidates) {
        if (detail::is_zero_tuple(sub) || detail::is_full_tuple(sub, rep.dims))
            throw std::invalid_argument("asymptotic_check: candidates must be nontrivial and proper");
        if (!is_subrepresentation(rep, sub))
            throw std::invalid_argument("asymptotic_check: candidate is not a subrepresentation");
        scan.consider(sub, oracle(sub));
    }
    return scan.verdict(CertificateKind::CandidateRelative);
}

/// Extends the column span of `current` by columns of `target` until it
/// covers target's span; returns the extended basis.
template <ScalarField F>
Matrix<F> extend_basis(Matrix<F> current, const Matrix<F>& target) {
    for (std::size_t j = 0; j < target.cols(); ++j) {
        const Matrix<F> col = target.select_columns({j});
        if (!column_span_contains(current, col)) current = current.hstack(col);
    }
    return current;
}

/// Outcome of the iterated-kernel construction on an augmentation-free
/// representation: either the chain exhausts every fiber and yields a
/// destabilizing flag with its one-parameter subgroup and weight, or the
/// stabilized chain is reported.
template <ScalarField F>
struct KernelChainOutcome {
    bool exhausted = false;
    std::vector<SubspaceTuple<F>> chain; // proper steps (exhausted) or the stabilized chain
    std::optional<VSplitFlag<F>> flag;
    std::optional<OneParamSubgroup<F>> lambda;
    std::optional<Rational> mu;
};

/// Iterates Y_j^v = preimage kernel of all arrow copies relative to Y_{j-1};
/// when the chain exhausts, the unit-coefficient flag comes from a
/// one-parameter subgroup of weight exactly -(sum sigma_v r_v).
template <ScalarField F>
KernelChainOutcome<F> kernel_chain(const Representation<F>& rep,
                                   const std::vector<long long>& sigma) {
    rep.validate(false);
    if (!rep.epsilon.is_zero())
        throw std::invalid_argument("kernel_chain: augmentation must vanish");
    if (!rep.is_projectively_nontrivial())
        throw std::invalid_argument("kernel_chain: representation is projectively trivial");
    if (sigma.size() != rep.dims.size())
        throw std::invalid_argument("kernel_chain: sigma size mismatch");
    for (auto s : sigma)
        if (s <= 0) throw std::invalid_argument("kernel_chain: sigma must be positive");
    const auto ctx = rep.context();

    // outgoing arrow copies per vertex
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> outgoing(rep.dims.size());
    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a)
        for (std::size_t k = 0; k < rep.maps[a].size(); ++k)
            outgoing[rep.quiver.arrows[a].tail].emplace_back(a, k);

    std::vector<SubspaceTuple<F>> chain;
    SubspaceTuple<F> prev = rep.zero_tuple();
    while (true) {
        // cokernel projections of the previous step
        std::vector<Matrix<F>> coker;
        for (std::size_t v = 0; v < rep.dims.size(); ++v)
            coker.push_back(prev[v].transpose().kernel().transpose());

        SubspaceTuple<F> next;
        bool full = true, same = true;
        for (std::size_t v = 0; v < rep.dims.size(); ++v) {
            Matrix<F> stack(0, rep.dims[v], ctx);
            for (const auto& [a, k] : outgoing[v]) {
                const std::size_t head = rep.quiver.arrows[a].head;
                const Matrix<F> block = coker[head] * rep.maps[a][k];
                stack = stack.transpose().hstack(block.transpose()).transpose();
            }
            Matrix<F> kernel = stack.kernel();
            if (kernel.cols() != rep.dims[v]) full = false;
            if (kernel.cols() != prev[v].cols()) same = false;
            next.push_back(std::move(kernel));
        }
        if (same) break; // stabilized strictly below the full tuple
        chain.push_back(next);
        prev = std::move(next);
        if (full) break;
    }

    KernelChainOutcome<F> out;
    const bool exhausted =
        !chain.empty() && detail::is_full_tuple(chain.back(), rep.dims);
    if (!exhausted) {
        out.chain = std::move(chain);
        return out;
    }
    chain.pop_back(); // drop the full tuple; proper steps remain
    out.exhausted = true;
    out.chain = chain;

    // weights of the unit-coefficient flag
    const long long big_r = static_cast<long long>(amplified_dimension(rep.dims, sigma));
    std::vector<long long> step_ranks;
    for (const auto& step : chain) {
        long long r = 0;
        for (std::size_t v = 0; v < rep.dims.size(); ++v)
            r += sigma[v] * static_cast<long long>(step[v].cols());
        step_ranks.push_back(r);
    }
    const std::size_t s = chain.size();
    std::vector<long long> weights(s + 1, 0);
    for (std::size_t i = 0; i <= s; ++i) {
        long long w = 0;
        for (std::size_t j = 0; j < s; ++j) w += step_ranks[j] - (j + 1 >= i + 1 ? big_r : 0);
        weights[i] = w;
    }

    VSplitFlag<F> flag;
    flag.dims = rep.dims;
    flag.ctx = ctx;
    flag.steps = chain;
    flag.weights = weights;
    flag.validate();

    // adapted one-parameter subgroup: bases refine the chain
    OneParamSubgroup<F> lambda;
    for (std::size_t v = 0; v < rep.dims.size(); ++v) {
        Matrix<F> basis(rep.dims[v], 0, ctx);
        std::vector<long long> vertex_weights;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const std::size_t before = basis.cols();
            basis = extend_basis(std::move(basis), chain[i][v]);
            for (std::size_t c = before; c < basis.cols(); ++c)
                vertex_weights.push_back(weights[i]);
        }
        const std::size_t before = basis.cols();
        basis = extend_basis(std::move(basis), Matrix<F>::identity(rep.dims[v], ctx));
        for (std::size_t c = before; c < basis.cols(); ++c)
            vertex_weights.push_back(weights[s]);
        lambda.basis.push_back(std::move(basis));
        lambda.weights.push_back(std::move(vertex_weights));
    }

    const auto mu = hm_weight(rep, lambda);
    if (!mu || *mu != Rational(-big_r))
        throw std::logic_error("kernel_chain: weight of the adapted subgroup is off");
    out.flag = std::move(flag);
    out.lambda = std::move(lambda);
    out.mu = *mu;
    return out;
}

/// True iff the augmentation vanishes and every generating invariant
/// evaluates to zero.
template <ScalarField F>
bool nullcone_check(const Representation<F>& rep) {
    if (!rep.epsilon.is_zero()) return false;
    for (const auto& d : generator_set(rep.quiver, rep.dims))
        if (!trace_invariant(rep, d).is_zero()) return false;
    return true;
}

/// Representation induced on the quotient fibers by a subrepresentation,
/// with the data needed to lift quotient subspaces back.
template <ScalarField F>
struct QuotientRepresentation {
    Representation<F> rep;
    SubspaceTuple<F> sub;                // the subrepresentation quotiented out
    std::vector<Matrix<F>> complement;   // complement columns per vertex

    [[nodiscard]] SubspaceTuple<F> preimage(const SubspaceTuple<F>& quotient_sub) const {
        SubspaceTuple<F> out;
        for (std::size_t v = 0; v < sub.size(); ++v)
            out.push_back(sub[v].hstack(complement[v] * quotient_sub[v]));
        return out;
    }
};

/// Solves B y = m columnwise; requires B to have independent columns and the
/// system to be consistent.
template <ScalarField F>
Matrix<F> solve_in_basis(const Matrix<F>& basis, const Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    const Matrix<F> r = basis.hstack(m).rref(&pivots);
    if (pivots.size() != basis.cols() || (basis.cols() > 0 && pivots.back() >= basis.cols()))
        throw std::domain_error("solve_in_basis: inconsistent system");
    Matrix<F> out(basis.cols(), m.cols(), basis.context());
    for (std::size_t i = 0; i < basis.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = r.at(i, basis.cols() + j);
    return out;
}

/// Restriction of the representation to an invariant subspace tuple, in the
/// coordinates of the given bases.
template <ScalarField F>
Representation<F> restrict_representation(const Representation<F>& rep,
                                          const SubspaceTuple<F>& sub) {
    Representation<F> out;
    out.quiver = rep.quiver;
    out.epsilon = rep.epsilon;
    for (const auto& m : sub) out.dims.push_back(m.cols());
    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
        const auto& arrow = rep.quiver.arrows[a];
        std::vector<Matrix<F>> copies;
        for (const auto& f : rep.maps[a])
            copies.push_back(solve_in_basis(sub[arrow.head], f * sub[arrow.tail]));
        out.maps.push_back(std::move(copies));
    }
    return out;
}

/// Quotient representation by an invariant subspace tuple.
template <ScalarField F>
QuotientRepresentation<F> quotient_representation(const Representation<F>& rep,
                                                  const SubspaceTuple<F>& sub) {
    const auto ctx = rep.context();
    QuotientRepresentation<F> out;
    out.sub = sub;
    out.rep.quiver = rep.quiver;
    out.rep.epsilon = rep.epsilon;

    std::vector<Matrix<F>> full_basis; // [sub | complement] per vertex
    for (std::size_t v = 0; v < rep.dims.size(); ++v) {
        const Matrix<F> extended = extend_basis(sub[v], Matrix<F>::identity(rep.dims[v], ctx));
        std::vector<std::size_t> comp_cols;
        for (std::size_t c = sub[v].cols(); c < extended.cols(); ++c) comp_cols.push_back(c);
        out.complement.push_back(extended.select_columns(comp_cols));
        full_basis.push_back(extended);
        out.rep.dims.push_back(rep.dims[v] - sub[v].cols());
    }

    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
        const auto& arrow = rep.quiver.arrows[a];
        std::vector<Matrix<F>> copies;
        for (const auto& f : rep.maps[a]) {
            // coordinates of f in the [sub | complement] bases; the lower-left
            // block vanishes by invariance, the lower-right is the quotient map
            const Matrix<F> coords =
                full_basis[arrow.head].inverse() * f * full_basis[arrow.tail];
            Matrix<F> block(out.rep.dims[arrow.head], out.rep.dims[arrow.tail], ctx);
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    block.at(i, j) = coords.at(sub[arrow.head].cols() + i, sub[arrow.tail].cols() + j);
            copies.push_back(std::move(block));
        }
        out.rep.maps.push_back(std::move(copies));
    }
    return out;
}

/// Slope -sum eta_v dim(F_v) / sum sigma_v dim(F_v) used by the filtration
/// computation.
inline Rational king_slope(const std::vector<Rational>& eta, const std::vector<long long>& sigma,
                           const std::vector<std::size_t>& dims) {
    Rational num(0);
    long long den = 0;
    for (std::size_t v = 0; v < dims.size(); ++v) {
        num -= eta[v] * Rational(static_cast<long long>(dims[v]));
        den += sigma[v] * static_cast<long long>(dims[v]);
    }
    if (den == 0) throw std::invalid_argument("king_slope: zero sigma-dimension");
    return num / Rational(den);
}

/// Harder-Narasimhan filtration over a prime field by greedy maximal
/// destabilization: among all nonzero subrepresentations pick the maximal
/// slope, then the maximal sigma-dimension (unique), verify the chosen
/// subrepresentation is semistable, and recurse on the quotient. Returns the
/// filtration steps including the full representation.
inline std::vector<SubspaceTuple<PrimeField>> hn_compute(const Representation<PrimeField>& rep,
                                                         const std::vector<long long>& sigma,
                                                         const std::vector<Rational>& eta,
                                                         const EngineOptions& opts = {}) {
    rep.validate(false);
    if (sigma.size() != rep.dims.size() || eta.size() != rep.dims.size())
        throw std::invalid_argument("hn_compute: parameter size mismatch");
    if (total_dimension(rep.dims) == 0)
        throw std::invalid_argument("hn_compute: zero representation");

    // maximal destabilizing subrepresentation (full tuple included)
    std::optional<SubspaceTuple<PrimeField>> best;
    std::optional<Rational> best_slope;
    long long best_dim = -1;
    bool tie = false;
    for (SubspaceTupleWalker walker(rep.context(), rep.dims, opts.budget); !walker.done();
         walker.advance()) {
        const SubspaceTuple<PrimeField> sub = walker.current();
        if (detail::is_zero_tuple(sub)) continue;
        if (!is_subrepresentation(rep, sub)) continue;
        const auto dims = subspace_dims(sub);
        const Rational slope = king_slope(eta, sigma, dims);
        long long sdim = 0;
        for (std::size_t v = 0; v < dims.size(); ++v)
            sdim += sigma[v] * static_cast<long long>(dims[v]);
        if (!best || slope > *best_slope || (slope == *best_slope && sdim > best_dim)) {
            best = sub;
            best_slope = slope;
            best_dim = sdim;
            tie = false;
        } else if (slope == *best_slope && sdim == best_dim) {
            tie = true;
        }
    }
    if (!best) throw std::logic_error("hn_compute: no subrepresentation found");
    if (tie)
        throw std::logic_error(
            "hn_compute: maximal destabilizing subrepresentation is not unique");

    // the chosen subrepresentation must itself be semistable: nothing inside
    // it may exceed its slope
    {
        const Representation<PrimeField> inside = restrict_representation(rep, *best);
        if (total_dimension(inside.dims) > 0) {
            for (SubspaceTupleWalker walker(inside.context(), inside.dims, opts.budget);
                 !walker.done(); walker.advance()) {
                const SubspaceTuple<PrimeField> sub = walker.current();
                if (detail::is_zero_tuple(sub)) continue;
                if (!is_subrepresentation(inside, sub)) continue;
                if (king_slope(eta, sigma, subspace_dims(sub)) > *best_slope)
                    throw std::logic_error("hn_compute: maximal step is not semistable");
            }
        }
    }

    std::vector<SubspaceTuple<PrimeField>> out{*best};
    if (detail::is_full_tuple(*best, rep.dims)) return out;

    const auto quotient = quotient_representation(rep, *best);
    for (const auto& qstep : hn_compute(quotient.rep, sigma, eta, opts))
        out.push_back(quotient.preimage(qstep));
    return out;
}

} // namespace qstab
