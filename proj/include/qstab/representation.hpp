#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qstab/matrix.hpp"
#include "qstab/quiver.hpp"

namespace qstab {

/// One subspace per vertex, each given by a basis matrix (columns are the
/// basis, rows match the vertex fiber).
template <ScalarField F>
using SubspaceTuple = std::vector<Matrix<F>>;

template <ScalarField F>
std::vector<std::size_t> subspace_dims(const SubspaceTuple<F>& t) {
    std::vector<std::size_t> d;
    d.reserve(t.size());
    for (const auto& m : t) d.push_back(m.cols());
    return d;
}

/// Augmented representation: one matrix per arrow copy plus the scalar
/// epsilon. A representation is projectively nontrivial when epsilon or some
/// map entry is nonzero.
template <ScalarField F>
struct Representation {
    using Context = typename F::Context;

    Quiver quiver;
    DimensionVector dims;
    std::vector<std::vector<Matrix<F>>> maps; // maps[arrow][copy]
    F epsilon;

    [[nodiscard]] Context context() const { return epsilon.context(); }

    [[nodiscard]] bool is_projectively_nontrivial() const {
        if (!epsilon.is_zero()) return true;
        for (const auto& copies : maps)
            for (const auto& m : copies)
                if (!m.is_zero()) return true;
        return false;
    }

    void validate(bool require_nontrivial = true) const {
        quiver.validate();
        if (dims.size() != quiver.vertex_count())
            throw schema_error("Representation: dimension vector size mismatch");
        if (maps.size() != quiver.arrows.size())
            throw schema_error("Representation: one map list per arrow required");
        for (std::size_t a = 0; a < maps.size(); ++a) {
            const auto& arrow = quiver.arrows[a];
            if (maps[a].size() != arrow.multiplicity)
                throw schema_error("Representation: arrow '" + arrow.name + "' needs " +
                                   std::to_string(arrow.multiplicity) + " matrices");
            for (const auto& m : maps[a]) {
                if (m.rows() != dims[arrow.head] || m.cols() != dims[arrow.tail])
                    throw schema_error("Representation: map shape mismatch on arrow '" +
                                       arrow.name + "'");
                if (!(m.context() == context()))
                    throw field_mismatch("Representation: maps over different fields");
            }
        }
        if (require_nontrivial && !is_projectively_nontrivial())
            throw schema_error("Representation: epsilon and all maps are zero");
    }

    /// Simultaneous base change: f_a -> g_{head} f_a g_{tail}^{-1}.
    [[nodiscard]] Representation conjugated(const std::vector<Matrix<F>>& g) const {
        if (g.size() != quiver.vertex_count())
            throw std::invalid_argument("Representation: one base change per vertex required");
        std::vector<Matrix<F>> g_inv;
        g_inv.reserve(g.size());
        for (const auto& m : g) g_inv.push_back(m.inverse());
        Representation out = *this;
        for (std::size_t a = 0; a < maps.size(); ++a) {
            const auto& arrow = quiver.arrows[a];
            for (std::size_t k = 0; k < maps[a].size(); ++k)
                out.maps[a][k] = g[arrow.head] * maps[a][k] * g_inv[arrow.tail];
        }
        return out;
    }

    /// The grading action (f, epsilon) -> (z f, z epsilon).
    [[nodiscard]] Representation scaled(const F& z) const {
        Representation out = *this;
        out.epsilon = epsilon * z;
        for (auto& copies : out.maps)
            for (auto& m : copies) m = m.scaled(z);
        return out;
    }

    [[nodiscard]] SubspaceTuple<F> zero_tuple() const {
        SubspaceTuple<F> t;
        t.reserve(dims.size());
        for (auto d : dims) t.emplace_back(d, 0, context());
        return t;
    }

    [[nodiscard]] SubspaceTuple<F> full_tuple() const {
        SubspaceTuple<F> t;
        t.reserve(dims.size());
        for (auto d : dims) t.push_back(Matrix<F>::identity(d, context()));
        return t;
    }
};

/// True when every arrow-copy map sends the tail subspace into the head
/// subspace.
template <ScalarField F>
bool is_subrepresentation(const Representation<F>& rep, const SubspaceTuple<F>& sub) {
    if (sub.size() != rep.quiver.vertex_count())
        throw std::invalid_argument("is_subrepresentation: tuple size mismatch");
    for (std::size_t v = 0; v < sub.size(); ++v) {
        if (sub[v].rows() != rep.dims[v])
            throw std::invalid_argument("is_subrepresentation: fiber shape mismatch at vertex " +
                                        rep.quiver.vertices[v]);
        if (sub[v].cols() > rep.dims[v])
            throw std::invalid_argument("is_subrepresentation: subspace exceeds fiber at vertex " +
                                        rep.quiver.vertices[v]);
    }
    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
        const auto& arrow = rep.quiver.arrows[a];
        for (const auto& m : rep.maps[a]) {
            const Matrix<F> image = m * sub[arrow.tail];
            if (!column_span_contains(sub[arrow.head], image)) return false;
        }
    }
    return true;
}

/// Product of the arrow-copy matrices along a cycle, leftmost factor first:
/// f_{a_1} f_{a_2} ... f_{a_l}, an endomorphism of the base-vertex fiber.
template <ScalarField F>
Matrix<F> compose_along_cycle(const Representation<F>& rep, const OrientedCycle& cycle) {
    cycle.validate(rep.quiver);
    const std::size_t base = cycle.base_vertex(rep.quiver);
    Matrix<F> acc = Matrix<F>::identity(rep.dims[base], rep.context());
    for (const auto& step : cycle.steps) {
        const Matrix<F>& m = rep.maps[step.arrow][step.copy];
        acc = acc * m;
    }
    return acc;
}

} // namespace qstab
