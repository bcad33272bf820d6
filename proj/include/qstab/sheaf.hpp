#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qstab/polynomial.hpp"

namespace qstab {

/// Abstract stand-in for a coherent sheaf: rank, Hilbert polynomial, and its
/// degree. The degree is caller-supplied data; consistency with the Hilbert
/// polynomial is not enforced.
struct SheafDatum {
    long long rank = 0;
    RationalPolynomial hilbert;
    Rational degree;

    void validate(std::size_t dim_x) const {
        if (rank < 0) throw std::invalid_argument("SheafDatum: negative rank");
        if (rank > 0) {
            if (hilbert.degree() != static_cast<int>(dim_x))
                throw std::invalid_argument(
                    "SheafDatum: positive rank requires Hilbert polynomial of degree dim X");
            if (hilbert.leading_coefficient().sign() <= 0)
                throw std::invalid_argument(
                    "SheafDatum: positive rank requires positive leading coefficient");
        }
    }

    friend SheafDatum operator+(const SheafDatum& a, const SheafDatum& b) {
        return {a.rank + b.rank, a.hilbert + b.hilbert, a.degree + b.degree};
    }
    friend SheafDatum operator-(const SheafDatum& a, const SheafDatum& b) {
        return {a.rank - b.rank, a.hilbert - b.hilbert, a.degree - b.degree};
    }
    friend bool operator==(const SheafDatum&, const SheafDatum&) = default;
};

/// One sheaf datum per vertex.
struct VSplitDatum {
    std::vector<SheafDatum> parts;

    void validate(std::size_t dim_x) const {
        for (const auto& p : parts) p.validate(dim_x);
    }

    friend VSplitDatum operator+(const VSplitDatum& a, const VSplitDatum& b) {
        if (a.parts.size() != b.parts.size())
            throw std::invalid_argument("VSplitDatum: vertex count mismatch");
        VSplitDatum out;
        for (std::size_t v = 0; v < a.parts.size(); ++v) out.parts.push_back(a.parts[v] + b.parts[v]);
        return out;
    }
    friend VSplitDatum operator-(const VSplitDatum& a, const VSplitDatum& b) {
        if (a.parts.size() != b.parts.size())
            throw std::invalid_argument("VSplitDatum: vertex count mismatch");
        VSplitDatum out;
        for (std::size_t v = 0; v < a.parts.size(); ++v) out.parts.push_back(a.parts[v] - b.parts[v]);
        return out;
    }
    friend bool operator==(const VSplitDatum&, const VSplitDatum&) = default;
};

/// Stability parameters: positive multiplicities sigma_v, rational character
/// weights eta_v, a positive correction polynomial delta of degree at most
/// dim X - 1 (exactly dim X behind allow_top_degree), and the ambient
/// dimension. chi_v := eta_v * delta is always derived, never stored.
struct StabilityParameters {
    std::vector<long long> sigma;
    std::vector<Rational> eta;
    RationalPolynomial delta;
    std::size_t dim_x = 1;
    bool allow_top_degree = false;

    void validate() const {
        if (sigma.size() != eta.size())
            throw std::invalid_argument("StabilityParameters: sigma/eta size mismatch");
        for (auto s : sigma)
            if (s <= 0) throw std::invalid_argument("StabilityParameters: sigma must be positive");
        if (dim_x == 0) throw std::invalid_argument("StabilityParameters: dim X must be positive");
        if (delta.is_zero() || delta.leading_coefficient().sign() <= 0)
            throw std::invalid_argument("StabilityParameters: delta must be positive");
        const int max_deg = static_cast<int>(dim_x) - (allow_top_degree ? 0 : 1);
        if (delta.degree() > max_deg)
            throw std::invalid_argument("StabilityParameters: delta degree too large");
    }

    /// Checks the normalization sum eta_v r_v = 0 against a reference
    /// dimension vector. Required by character-based decision procedures;
    /// reparameterized values may legitimately violate it.
    void validate_normalized(const std::vector<long long>& ranks) const {
        if (ranks.size() != eta.size())
            throw std::invalid_argument("StabilityParameters: rank vector size mismatch");
        Rational sum(0);
        for (std::size_t v = 0; v < eta.size(); ++v) sum += eta[v] * Rational(ranks[v]);
        if (!sum.is_zero())
            throw std::invalid_argument(
                "StabilityParameters: normalization sum eta_v r_v = 0 violated");
    }

    [[nodiscard]] RationalPolynomial chi(std::size_t v) const { return eta[v] * delta; }
    [[nodiscard]] Rational chi_bar(std::size_t v) const {
        return eta[v] * delta.coefficient(dim_x - 1);
    }
};

inline void check_vertex_count(const VSplitDatum& d, const StabilityParameters& p) {
    if (d.parts.size() != p.sigma.size())
        throw std::invalid_argument("sheaf data and parameters disagree on the vertex count");
}

/// sum_v (sigma_v P_v - chi_v rk_v)
inline RationalPolynomial p_sigma_chi(const VSplitDatum& d, const StabilityParameters& p) {
    check_vertex_count(d, p);
    RationalPolynomial out;
    for (std::size_t v = 0; v < d.parts.size(); ++v) {
        out += Rational(p.sigma[v]) * d.parts[v].hilbert;
        out -= Rational(d.parts[v].rank) * p.chi(v);
    }
    return out;
}

/// sum_v sigma_v rk_v
inline long long rk_sigma(const VSplitDatum& d, const StabilityParameters& p) {
    check_vertex_count(d, p);
    long long out = 0;
    for (std::size_t v = 0; v < d.parts.size(); ++v) out += p.sigma[v] * d.parts[v].rank;
    return out;
}

/// Twisted degree sum_v (sigma_v deg_v - chi_bar_v rk_v) and the slope
/// degree / rk_sigma, the slope undefined when the sigma-rank vanishes.
inline std::pair<Rational, std::optional<Rational>> deg_mu_sigma_chi(
    const VSplitDatum& d, const StabilityParameters& p) {
    check_vertex_count(d, p);
    Rational deg(0);
    for (std::size_t v = 0; v < d.parts.size(); ++v) {
        deg += Rational(p.sigma[v]) * d.parts[v].degree;
        deg -= p.chi_bar(v) * Rational(d.parts[v].rank);
    }
    const long long rk = rk_sigma(d, p);
    if (rk == 0) return {deg, std::nullopt};
    return {deg, deg / Rational(rk)};
}

/// sum_j alpha_j (P_{sigma,chi}(total) rk_sigma(step_j)
///                - P_{sigma,chi}(step_j) rk_sigma(total))
inline RationalPolynomial m_sigma_chi(const VSplitDatum& total,
                                      const std::vector<VSplitDatum>& filtration,
                                      const std::vector<Rational>& alpha,
                                      const StabilityParameters& p) {
    check_vertex_count(total, p);
    if (filtration.size() != alpha.size())
        throw std::invalid_argument("m_sigma_chi: one coefficient per filtration step");
    const RationalPolynomial p_total = p_sigma_chi(total, p);
    const long long rk_total = rk_sigma(total, p);
    RationalPolynomial out;
    for (std::size_t j = 0; j < filtration.size(); ++j) {
        check_vertex_count(filtration[j], p);
        if (alpha[j].sign() <= 0)
            throw std::invalid_argument("m_sigma_chi: coefficients must be positive");
        for (std::size_t v = 0; v < total.parts.size(); ++v)
            if (filtration[j].parts[v].rank > total.parts[v].rank)
                throw std::invalid_argument("m_sigma_chi: step rank exceeds the total");
        out += alpha[j] * (Rational(rk_sigma(filtration[j], p)) * p_total -
                           Rational(rk_total) * p_sigma_chi(filtration[j], p));
    }
    return out;
}

/// eta'_v := eta_v - d sigma_v. Leaves m_sigma_chi and every verdict
/// unchanged; with d = (sum eta_v r_v) / (sum sigma_v r_v) the result is
/// normalized.
inline StabilityParameters reparameterize_eta(const StabilityParameters& p, const Rational& d) {
    StabilityParameters out = p;
    for (std::size_t v = 0; v < out.eta.size(); ++v) out.eta[v] = p.eta[v] - d * Rational(p.sigma[v]);
    return out;
}

enum class SheafCompareMode { Slope, Polynomial };

enum class SheafStatus { Stable, SemistableNotStable, Unstable };

/// Verdict relative to an explicitly supplied candidate list.
struct SheafVerdict {
    SheafStatus status = SheafStatus::Stable;
    std::optional<std::size_t> witness; // index of the worst offender / tie
};

/// Compares each candidate against the total, by slope or by the
/// lexicographic order of P_{sigma,chi}/rk_sigma, and reports the verdict
/// relative to the candidate list with the worst offender as witness.
inline SheafVerdict slope_semistability_verdict(const VSplitDatum& total,
                                                const std::vector<VSplitDatum>& candidates,
                                                const StabilityParameters& p,
                                                SheafCompareMode mode) {
    check_vertex_count(total, p);
    if (rk_sigma(total, p) == 0)
        throw std::invalid_argument("slope_semistability_verdict: total has sigma-rank zero");

    SheafVerdict verdict;
    std::optional<Rational> worst_slope_gap;
    std::optional<RationalPolynomial> worst_poly_gap;
    bool tie_seen = false;
    std::optional<std::size_t> tie_witness;

    const auto total_slope = deg_mu_sigma_chi(total, p).second;
    const RationalPolynomial total_poly = p_sigma_chi(total, p);
    const long long total_rk = rk_sigma(total, p);

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& cand = candidates[i];
        check_vertex_count(cand, p);
        const long long cand_rk = rk_sigma(cand, p);
        if (cand_rk == 0)
            throw std::invalid_argument("slope_semistability_verdict: candidate with sigma-rank 0");

        if (mode == SheafCompareMode::Slope) {
            const auto cand_slope = deg_mu_sigma_chi(cand, p).second;
            const Rational gap = *cand_slope - *total_slope;
            if (gap.sign() > 0) {
                if (!worst_slope_gap || gap > *worst_slope_gap) {
                    worst_slope_gap = gap;
                    verdict.witness = i;
                }
            } else if (gap.is_zero() && !tie_seen) {
                tie_seen = true;
                tie_witness = i;
            }
        } else {
            // cross-multiplied by the positive sigma-ranks
            const RationalPolynomial gap =
                Rational(total_rk) * p_sigma_chi(cand, p) - Rational(cand_rk) * total_poly;
            const auto cmp = poly_lex_compare(gap, RationalPolynomial{});
            if (cmp == std::strong_ordering::greater) {
                if (!worst_poly_gap ||
                    poly_lex_compare(gap, *worst_poly_gap) == std::strong_ordering::greater) {
                    worst_poly_gap = gap;
                    verdict.witness = i;
                }
            } else if (cmp == std::strong_ordering::equal && !tie_seen) {
                tie_seen = true;
                tie_witness = i;
            }
        }
    }

    if (worst_slope_gap || worst_poly_gap) {
        verdict.status = SheafStatus::Unstable;
    } else if (tie_seen) {
        verdict.status = SheafStatus::SemistableNotStable;
        verdict.witness = tie_witness;
    } else {
        verdict.status = SheafStatus::Stable;
        verdict.witness.reset();
    }
    return verdict;
}

/// Candidate subobjects for one quotient, supplied by the caller.
using SubobjectOracle = std::function<std::vector<VSplitDatum>(const VSplitDatum&)>;

/// Checks the two filtration properties: successive quotients (formed by
/// additivity) have strictly decreasing slopes, and each quotient is slope
/// semistable relative to the subobjects the oracle supplies for it.
inline bool verify_hn(const VSplitDatum& total, const std::vector<VSplitDatum>& filtration,
                      const StabilityParameters& p, const SubobjectOracle& oracle) {
    check_vertex_count(total, p);
    std::optional<Rational> prev_slope;
    VSplitDatum prev;
    prev.parts.assign(total.parts.size(), SheafDatum{});

    std::vector<VSplitDatum> chain = filtration;
    chain.push_back(total);
    long long prev_rk = 0;
    for (const auto& step : chain) {
        check_vertex_count(step, p);
        const long long rk = rk_sigma(step, p);
        if (rk <= prev_rk)
            throw std::invalid_argument("verify_hn: filtration must strictly increase in sigma-rank");
        prev_rk = rk;
    }

    for (const auto& step : chain) {
        const VSplitDatum quotient = step - prev;
        for (const auto& part : quotient.parts)
            if (part.rank < 0)
                throw std::invalid_argument("verify_hn: non-additive data (negative quotient rank)");
        const auto slope = deg_mu_sigma_chi(quotient, p).second;
        if (!slope.has_value())
            throw std::invalid_argument("verify_hn: quotient with sigma-rank zero");
        if (prev_slope && !(*slope < *prev_slope)) return false;
        prev_slope = slope;

        const auto verdict =
            slope_semistability_verdict(quotient, oracle(quotient), p, SheafCompareMode::Slope);
        if (verdict.status == SheafStatus::Unstable) return false;
        prev = step;
    }
    return true;
}

} // namespace qstab
