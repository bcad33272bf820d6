#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qstab/field.hpp"
#include "qstab/matrix.hpp"
#include "qstab/polynomial.hpp"

using namespace qstab;

using QMat = Matrix<Rational>;
using PMat = Matrix<PrimeField>;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        std::vector<Rational> v;
        for (auto x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return QMat::from_rows(r, {});
}

RationalPolynomial poly(std::initializer_list<long long> ascending) {
    std::vector<Rational> c;
    for (auto x : ascending) c.emplace_back(x);
    return RationalPolynomial(std::move(c));
}

} // namespace

TEST_CASE("rational canonical form and parsing") {
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(-6, -3).str() == "2");
    CHECK(Rational::parse("7/21").str() == "1/3");
    CHECK(Rational::parse("-5").str() == "-5");
    CHECK_THROWS_AS(Rational::parse("1/0"), schema_error);
    CHECK_THROWS_AS(Rational::parse("abc"), schema_error);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
}

TEST_CASE("rational arithmetic is exact on random values") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const long long n = static_cast<long long>(rng() % 2001) - 1000;
        const long long d = static_cast<long long>(rng() % 999) + 1;
        if (n == 0) continue;
        const Rational a(n, d);
        CHECK(a * a.inverse() == Rational(1));
        CHECK((a / a) == Rational(1));
        CHECK(a + (-a) == Rational(0));
    }
}

TEST_CASE("prime field canonical residues, inverses, mixed moduli rejected") {
    const PrimeField::Context f5{5};
    CHECK(PrimeField(f5, -3).residue() == 2);
    CHECK(PrimeField(f5, 12).residue() == 2);
    for (long long v = 1; v < 5; ++v) {
        const PrimeField x(f5, v);
        CHECK(x * x.inverse() == PrimeField::one(f5));
    }
    CHECK_THROWS_AS(PrimeField(PrimeField::Context{6}, 1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(PrimeField::Context{101}, 1), std::invalid_argument);
    const PrimeField::Context f7{7};
    CHECK_THROWS_AS(PrimeField(f5, 1) + PrimeField(f7, 1), field_mismatch);
}

TEST_CASE("matrix rank: identity, zero, dependent rows") {
    CHECK(QMat::identity(2, {}).rank() == 2);
    CHECK(QMat(2, 2, {}).rank() == 0);
    CHECK(qmat({{1, 2}, {2, 4}}).rank() == 1);
}

TEST_CASE("matrix kernel: identity, zero, nilpotent") {
    CHECK(QMat::identity(3, {}).kernel().cols() == 0);
    const QMat zk = QMat(2, 2, {}).kernel();
    CHECK(zk.cols() == 2);
    CHECK(same_column_span(zk, QMat::identity(2, {})));

    const QMat e12 = qmat({{0, 1}, {0, 0}});
    const QMat k = e12.kernel();
    REQUIRE(k.cols() == 1);
    CHECK((e12 * k).is_zero());
    CHECK(same_column_span(k, qmat({{1}, {0}})));
}

TEST_CASE("rank-nullity on random matrices over both fields") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = rng() % 5, c = rng() % 5;
        QMat m(r, c, {});
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = Rational(static_cast<long long>(rng() % 7) - 3);
        CHECK(m.rank() + m.kernel().cols() == c);
        CHECK((m * m.kernel()).is_zero());

        const PrimeField::Context f3{3};
        PMat p(r, c, f3);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                p.at(i, j) = PrimeField(f3, static_cast<long long>(rng() % 3));
        CHECK(p.rank() + p.kernel().cols() == c);
        CHECK((p * p.kernel()).is_zero());
    }
}

TEST_CASE("matrix inverse, determinant, canonical column space") {
    const QMat a = qmat({{1, 2}, {3, 5}});
    CHECK(a.determinant() == Rational(-1));
    CHECK(a * a.inverse() == QMat::identity(2, {}));
    CHECK_THROWS_AS(qmat({{1, 2}, {2, 4}}).inverse(), std::domain_error);

    // same span, different bases -> identical canonical form
    const QMat b1 = qmat({{1, 1}, {0, 2}, {1, 3}});
    const QMat b2 = qmat({{2, 3}, {2, 1}, {4, 4}}); // columns span the same plane
    CHECK(same_column_span(b1, b2));
    CHECK(b1.column_space() == b2.column_space());
}

TEST_CASE("mixed-field matrix arithmetic is rejected") {
    const PrimeField::Context f2{2}, f3{3};
    PMat a(1, 1, f2), b(1, 1, f3);
    CHECK_THROWS_AS(a * b, field_mismatch);
    CHECK_THROWS_AS(a + b, field_mismatch);
}

TEST_CASE("polynomial normal form and evaluation") {
    CHECK(RationalPolynomial{}.is_zero());
    CHECK(RationalPolynomial({Rational(1), Rational(0), Rational(0)}).degree() == 0);
    CHECK(poly({0, 0}).is_zero());
    CHECK(poly({1, 2, 3}).eval(Rational(2)) == Rational(17));
    CHECK((poly({1, 1}) * poly({-1, 1})) == poly({-1, 0, 1}));
    CHECK((poly({1, 2}) - poly({1, 2})).is_zero());
}

TEST_CASE("polynomial lexicographic comparison from the top degree") {
    CHECK(poly_lex_compare(poly({1, 0, 1}), poly({1, 0, 1})) == std::strong_ordering::equal);
    CHECK(poly_lex_compare(poly({0, 1, 1}), poly({1, 0, 1})) == std::strong_ordering::greater);
    // x^3 vs 100 x^2: degree-3 coefficient decides
    CHECK(poly_lex_compare(poly({0, 0, 0, 1}), poly({0, 0, 100})) == std::strong_ordering::greater);
}

TEST_CASE("lex comparison is a total order on random triples") {
    std::mt19937_64 rng(37);
    auto rand_poly = [&] {
        std::vector<Rational> c;
        const std::size_t n = rng() % 4;
        for (std::size_t i = 0; i < n; ++i)
            c.emplace_back(static_cast<long long>(rng() % 5) - 2);
        return RationalPolynomial(std::move(c));
    };
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = rand_poly(), b = rand_poly(), c = rand_poly();
        const auto ab = poly_lex_compare(a, b), ba = poly_lex_compare(b, a);
        // antisymmetry
        if (ab == std::strong_ordering::less) CHECK(ba == std::strong_ordering::greater);
        if (ab == std::strong_ordering::equal) {
            CHECK(ba == std::strong_ordering::equal);
            CHECK(a == b);
        }
        // transitivity
        const auto bc = poly_lex_compare(b, c), ac = poly_lex_compare(a, c);
        if (ab != std::strong_ordering::greater && bc != std::strong_ordering::greater)
            CHECK(ac != std::strong_ordering::greater);
    }
}

TEST_CASE("rational function equality is representation independent") {
    const RationalFunction f{poly({0, 1}), poly({2})};      // x/2
    const RationalFunction g{poly({0, 2}), poly({4})};      // 2x/4
    const RationalFunction h{poly({0, 1}), poly({0, 0, 1})}; // x/x^2
    CHECK(f == g);
    CHECK(f != h);
}
