#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "qstab/errors.hpp"

namespace qstab {

/// Directed multigraph with named vertices and arrows. An arrow of
/// multiplicity b stands for b parallel copies of itself.
struct Quiver {
    struct Arrow {
        std::string name;
        std::size_t tail = 0;
        std::size_t head = 0;
        std::size_t multiplicity = 1;
    };

    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    [[nodiscard]] std::size_t vertex_count() const { return vertices.size(); }

    [[nodiscard]] std::size_t vertex_index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return i;
        throw schema_error("Quiver: unknown vertex '" + name + "'");
    }

    void validate() const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (vertices[i] == vertices[j])
                    throw schema_error("Quiver: duplicate vertex '" + vertices[i] + "'");
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const auto& a = arrows[i];
            if (a.tail >= vertices.size() || a.head >= vertices.size())
                throw schema_error("Quiver: arrow '" + a.name + "' references missing vertex");
            if (a.multiplicity == 0)
                throw schema_error("Quiver: arrow '" + a.name + "' has multiplicity 0");
            for (std::size_t j = i + 1; j < arrows.size(); ++j)
                if (arrows[j].name == a.name)
                    throw schema_error("Quiver: duplicate arrow '" + a.name + "'");
        }
    }
};

/// Per-vertex fiber dimensions, aligned with Quiver::vertices.
using DimensionVector = std::vector<std::size_t>;

inline std::size_t total_dimension(const DimensionVector& dims) {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
}

/// One copy of an arrow.
struct ArrowCopy {
    std::size_t arrow = 0;
    std::size_t copy = 0;
    friend bool operator==(const ArrowCopy&, const ArrowCopy&) = default;
    friend auto operator<=>(const ArrowCopy&, const ArrowCopy&) = default;
};

/// Closed composable sequence (a_1,...,a_l): head(a_i) = tail(a_{i-1}) for
/// i >= 2 and head(a_1) = tail(a_l). The composite endomorphism acts on the
/// fiber of the base vertex head(a_1).
struct OrientedCycle {
    std::vector<ArrowCopy> steps;

    [[nodiscard]] std::size_t length() const { return steps.size(); }

    [[nodiscard]] std::size_t base_vertex(const Quiver& q) const {
        if (steps.empty()) throw std::invalid_argument("OrientedCycle: empty cycle");
        return q.arrows[steps.front().arrow].head;
    }

    void validate(const Quiver& q) const {
        if (steps.empty()) throw std::invalid_argument("OrientedCycle: empty cycle");
        for (const auto& s : steps) {
            if (s.arrow >= q.arrows.size())
                throw std::invalid_argument("OrientedCycle: arrow index out of range");
            if (s.copy >= q.arrows[s.arrow].multiplicity)
                throw std::invalid_argument("OrientedCycle: copy index out of range");
        }
        for (std::size_t i = 1; i < steps.size(); ++i)
            if (q.arrows[steps[i].arrow].head != q.arrows[steps[i - 1].arrow].tail)
                throw std::invalid_argument("OrientedCycle: not composable");
        if (q.arrows[steps.front().arrow].head != q.arrows[steps.back().arrow].tail)
            throw std::invalid_argument("OrientedCycle: does not close up");
    }

    /// Serialized arrow-copy names, used for canonical ordering.
    [[nodiscard]] std::vector<std::pair<std::string, std::size_t>> name_sequence(
        const Quiver& q) const {
        std::vector<std::pair<std::string, std::size_t>> out;
        out.reserve(steps.size());
        for (const auto& s : steps) out.emplace_back(q.arrows[s.arrow].name, s.copy);
        return out;
    }

    [[nodiscard]] std::string str(const Quiver& q) const {
        std::string out;
        for (const auto& s : steps) {
            if (!out.empty()) out += ".";
            out += q.arrows[s.arrow].name;
            if (q.arrows[s.arrow].multiplicity > 1) out += "#" + std::to_string(s.copy);
        }
        return out;
    }

    friend bool operator==(const OrientedCycle&, const OrientedCycle&) = default;
};

/// Rotates the cycle so its arrow-name sequence is lexicographically least.
inline OrientedCycle canonical_rotation(const OrientedCycle& c, const Quiver& q) {
    const std::size_t n = c.steps.size();
    const auto names = c.name_sequence(q);
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& cand = names[(s + k) % n];
            const auto& cur = names[(best + k) % n];
            if (cand < cur) {
                best = s;
                break;
            }
            if (cur < cand) break;
        }
    }
    OrientedCycle out;
    out.steps.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.steps.push_back(c.steps[(best + k) % n]);
    return out;
}

/// All oriented cycles of length <= max_len, one representative per rotation
/// class (the canonical rotation).
inline std::vector<OrientedCycle> enumerate_cycles(const Quiver& q, std::size_t max_len,
                                                   std::size_t walk_budget = 2'000'000) {
    if (max_len == 0) throw std::invalid_argument("enumerate_cycles: max_len must be >= 1");
    q.validate();

    std::vector<ArrowCopy> copies;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        for (std::size_t k = 0; k < q.arrows[a].multiplicity; ++k) copies.push_back({a, k});

    std::set<std::vector<ArrowCopy>> seen;
    std::vector<OrientedCycle> out;
    std::size_t walks = 0;

    // Forward walks w_1..w_l with head(w_i) = tail(w_{i+1}); a closed walk
    // reversed gives the stored composition order.
    std::vector<ArrowCopy> walk;
    auto extend = [&](auto&& self, std::size_t start_vertex, std::size_t at_vertex) -> void {
        if (++walks > walk_budget)
            throw budget_exceeded("enumerate_cycles: walk budget exceeded");
        if (!walk.empty() && at_vertex == start_vertex) {
            OrientedCycle c;
            c.steps.assign(walk.rbegin(), walk.rend());
            c = canonical_rotation(c, q);
            if (seen.insert(c.steps).second) out.push_back(c);
        }
        if (walk.size() == max_len) return;
        for (const auto& ac : copies) {
            if (q.arrows[ac.arrow].tail != at_vertex) continue;
            walk.push_back(ac);
            self(self, start_vertex, q.arrows[ac.arrow].head);
            walk.pop_back();
        }
    };
    for (std::size_t v = 0; v < q.vertex_count(); ++v) extend(extend, v, v);

    std::sort(out.begin(), out.end(), [&](const OrientedCycle& a, const OrientedCycle& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.name_sequence(q) < b.name_sequence(q);
    });
    return out;
}

} // namespace qstab
