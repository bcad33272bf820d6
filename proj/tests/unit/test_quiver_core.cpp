#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qstab/representation.hpp"

using namespace qstab;
using QMat = Matrix<Rational>;

namespace {

Quiver loop_quiver(std::size_t multiplicity = 1) {
    Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"a", 0, 0, multiplicity}};
    return q;
}

Quiver kronecker() {
    Quiver q;
    q.vertices = {"v1", "v2"};
    q.arrows = {{"a", 0, 1, 1}};
    return q;
}

Representation<Rational> loop_rep(const QMat& f, Rational eps = Rational(0)) {
    Representation<Rational> rep;
    rep.quiver = loop_quiver();
    rep.dims = {f.rows()};
    rep.maps = {{f}};
    rep.epsilon = eps;
    return rep;
}

QMat qmat(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        std::vector<Rational> v;
        for (auto x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return QMat::from_rows(r, {});
}

} // namespace

TEST_CASE("quiver validation") {
    Quiver q = kronecker();
    CHECK_NOTHROW(q.validate());
    q.arrows.push_back({"a", 0, 1, 1});
    CHECK_THROWS_AS(q.validate(), schema_error);
    Quiver bad = kronecker();
    bad.arrows[0].head = 5;
    CHECK_THROWS_AS(bad.validate(), schema_error);
}

TEST_CASE("subrepresentation predicate: zero, full, Kronecker counterexample") {
    Representation<Rational> rep;
    rep.quiver = kronecker();
    rep.dims = {1, 1};
    rep.maps = {{qmat({{1}})}};
    rep.epsilon = Rational(0);
    rep.validate();

    CHECK(is_subrepresentation(rep, rep.zero_tuple()));
    CHECK(is_subrepresentation(rep, rep.full_tuple()));

    // span at the tail, zero at the head: f(e1) = e1 lands outside
    SubspaceTuple<Rational> sub;
    sub.push_back(QMat::identity(1, {}));
    sub.emplace_back(1, 0, Rational::Context{});
    CHECK_FALSE(is_subrepresentation(rep, sub));

    SubspaceTuple<Rational> bad;
    bad.push_back(QMat::identity(2, {}));
    bad.emplace_back(1, 0, Rational::Context{});
    CHECK_THROWS_AS(is_subrepresentation(rep, bad), std::invalid_argument);
}

TEST_CASE("subrepresentation predicate is basis independent") {
    std::mt19937_64 rng(5);
    Representation<Rational> rep;
    rep.quiver = loop_quiver();
    rep.dims = {3};
    rep.maps = {{qmat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})}};
    rep.epsilon = Rational(0);

    const QMat basis_a = qmat({{1, 0}, {0, 1}, {0, 0}});
    const QMat basis_b = qmat({{2, 1}, {1, 1}, {0, 0}}); // same plane, mixed basis
    REQUIRE(same_column_span(basis_a, basis_b));
    CHECK(is_subrepresentation(rep, {basis_a}) == is_subrepresentation(rep, {basis_b}));
}

TEST_CASE("cycle enumeration on a single loop") {
    const auto cycles = enumerate_cycles(loop_quiver(), 3);
    REQUIRE(cycles.size() == 3);
    CHECK(cycles[0].length() == 1);
    CHECK(cycles[1].length() == 2);
    CHECK(cycles[2].length() == 3);
}

TEST_CASE("cycle enumeration: acyclic quiver has none") {
    CHECK(enumerate_cycles(kronecker(), 6).empty());
}

TEST_CASE("cycle enumeration bound for total dimension 2") {
    // sum of fiber dims 2 -> default bound (2)^2 + 1 = 5
    const DimensionVector dims{2};
    const std::size_t bound = total_dimension(dims) * total_dimension(dims) + 1;
    REQUIRE(bound == 5);
    const auto cycles = enumerate_cycles(loop_quiver(), bound);
    CHECK(cycles.size() == 5);
}

TEST_CASE("cycle enumeration respects rotation classes and prefix monotonicity") {
    Quiver q;
    q.vertices = {"v1", "v2"};
    q.arrows = {{"a", 0, 1, 1}, {"b", 1, 0, 1}};
    q.validate();

    // only even lengths close up; one rotation class per length
    const auto c4 = enumerate_cycles(q, 4);
    REQUIRE(c4.size() == 2);
    CHECK(c4[0].length() == 2);
    CHECK(c4[1].length() == 4);

    // bound L contains bound L-1 as a prefix
    const auto c3 = enumerate_cycles(q, 3);
    REQUIRE(c3.size() == 1);
    CHECK(c3[0] == c4[0]);

    // multiplicities: doubling one arrow doubles the 2-cycles
    q.arrows[0].multiplicity = 2;
    const auto c2 = enumerate_cycles(q, 2);
    CHECK(c2.size() == 2);
}

TEST_CASE("compose_along_cycle: identity, nilpotent square, diagonal powers") {
    OrientedCycle c3{{{0, 0}, {0, 0}, {0, 0}}};
    const auto rep_id = loop_rep(QMat::identity(2, {}));
    CHECK(compose_along_cycle(rep_id, c3) == QMat::identity(2, {}));

    OrientedCycle c2{{{0, 0}, {0, 0}}};
    const auto rep_nil = loop_rep(qmat({{0, 1}, {0, 0}}));
    CHECK(compose_along_cycle(rep_nil, c2).is_zero());

    const auto rep_diag = loop_rep(qmat({{1, 0}, {0, 2}}));
    CHECK(compose_along_cycle(rep_diag, c2) == qmat({{1, 0}, {0, 4}}));
}

TEST_CASE("compose_along_cycle rejects corrupted cycles") {
    const auto rep = loop_rep(QMat::identity(1, {}));
    OrientedCycle bad{{{2, 0}}};
    CHECK_THROWS_AS(compose_along_cycle(rep, bad), std::invalid_argument);
    OrientedCycle bad_copy{{{0, 5}}};
    CHECK_THROWS_AS(compose_along_cycle(rep, bad_copy), std::invalid_argument);
}

TEST_CASE("traces of rotated cycles agree") {
    std::mt19937_64 rng(7);
    Quiver q;
    q.vertices = {"v1", "v2"};
    q.arrows = {{"a", 0, 1, 1}, {"b", 1, 0, 1}};

    Representation<Rational> rep;
    rep.quiver = q;
    rep.dims = {2, 2};
    auto rand_mat = [&](std::size_t r, std::size_t c) {
        QMat m(r, c, {});
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = Rational(static_cast<long long>(rng() % 9) - 4);
        return m;
    };
    rep.maps = {{rand_mat(2, 2)}, {rand_mat(2, 2)}};
    rep.epsilon = Rational(1);

    const OrientedCycle ab{{{0, 0}, {1, 0}}}; // based at v2
    const OrientedCycle ba{{{1, 0}, {0, 0}}}; // rotation, based at v1
    CHECK(compose_along_cycle(rep, ab).trace() == compose_along_cycle(rep, ba).trace());
}
