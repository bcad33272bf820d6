#include <catch2/catch_amalgamated.hpp>

#include "qstab/git_weights.hpp"
#include "qstab/random_instances.hpp"

using namespace qstab;
using QMat = Matrix<Rational>;

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

Representation<Rational> loop_rep(const QMat& f, Rational eps = Rational(0)) {
    Representation<Rational> rep;
    rep.quiver.vertices = {"v"};
    rep.quiver.arrows = {{"a", 0, 0, 1}};
    rep.dims = {f.rows()};
    rep.maps = {{f}};
    rep.epsilon = eps;
    return rep;
}

OneParamSubgroup<Rational> diag_lambda(std::vector<std::vector<long long>> weights) {
    OneParamSubgroup<Rational> l;
    for (auto& w : weights) {
        l.basis.push_back(QMat::identity(w.size(), {}));
        l.weights.push_back(std::move(w));
    }
    return l;
}

std::vector<Rational> q(std::initializer_list<long long> xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("gamma_prime on one step") {
    // R = 2, R_1 = 1, alpha = (1) -> (-1, 1)
    WeightedFiltrationAlpha<Rational> filt;
    filt.steps = {{qmat({{1}, {0}})}};
    filt.alpha = {Rational(1)};
    const auto g = gamma_prime(filt, {1}, {2});
    CHECK(g.entries == q({-1, 1}));

    // linear in alpha
    filt.alpha = {Rational(2)};
    CHECK(gamma_prime(filt, {1}, {2}).entries == q({-2, 2}));
}

TEST_CASE("gamma_prime sums block vectors over steps") {
    // R = 3, R_1 = 1, R_2 = 2, alpha = (1,1): (-2,1,1) + (-1,-1,2) = (-3,0,3)
    WeightedFiltrationAlpha<Rational> filt;
    filt.steps = {{qmat({{1}, {0}, {0}})}, {qmat({{1, 0}, {0, 1}, {0, 0}})}};
    filt.alpha = {Rational(1), Rational(1)};
    const auto g = gamma_prime(filt, {1}, {3});
    CHECK(g.entries == q({-3, 0, 3}));
}

TEST_CASE("gamma_prime entries always sum to zero and are nondecreasing") {
    InstanceRng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        DimensionVector dims;
        std::vector<long long> sigma;
        const std::size_t nv = 1 + rng.below(3);
        for (std::size_t v = 0; v < nv; ++v) {
            dims.push_back(1 + rng.below(3));
            sigma.push_back(rng.range(1, 3));
        }
        const auto flag = random_vsplit_flag<Rational>(rng, dims, {});
        WeightedFiltrationAlpha<Rational> filt;
        filt.steps = flag.steps;
        for (std::size_t i = 0; i < flag.steps.size(); ++i)
            filt.alpha.push_back(Rational(rng.range(1, 5), rng.range(1, 3)));
        const auto g = gamma_prime(filt, sigma, dims);
        Rational sum(0);
        for (const auto& e : g.entries) sum += e;
        CHECK(sum == Rational(0));
        for (std::size_t k = 0; k + 1 < g.entries.size(); ++k)
            CHECK(g.entries[k] <= g.entries[k + 1]);
    }
}

TEST_CASE("gamma_prime of the empty filtration is the zero vector") {
    WeightedFiltrationAlpha<Rational> filt;
    const auto g = gamma_prime(filt, {2, 1}, {2, 1});
    CHECK(g.entries == q({0, 0, 0, 0, 0}));
}

TEST_CASE("hm_weight: strictly lowering nilpotent block") {
    const auto rep = loop_rep(qmat({{0, 1}, {0, 0}}));
    const auto mu = hm_weight(rep, diag_lambda({{-1, 1}}));
    REQUIRE(mu.has_value());
    CHECK(*mu == Rational(-2));
}

TEST_CASE("hm_weight: diagonal blocks give zero") {
    const auto rep = loop_rep(QMat::identity(2, {}));
    for (auto weights : {std::vector<long long>{-1, 1}, {0, 2}, {-3, -1}}) {
        const auto mu = hm_weight(rep, diag_lambda({weights}));
        REQUIRE(mu.has_value());
        CHECK(*mu == Rational(0));
    }
}

TEST_CASE("hm_weight with nonzero augmentation is never negative") {
    InstanceRng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const Quiver quiver = sample_quiver(rng);
        DimensionVector dims;
        for (std::size_t v = 0; v < quiver.vertex_count(); ++v) dims.push_back(1 + rng.below(3));
        auto rep = random_representation<Rational>(rng, quiver, dims, {}, true);
        rep.epsilon = Rational(rng.range(1, 5));
        const auto lambda = random_one_param_subgroup<Rational>(rng, dims, {});
        const auto mu = hm_weight(rep, lambda);
        REQUIRE(mu.has_value());
        CHECK(*mu >= Rational(0));
    }
}

TEST_CASE("hm_weight is undefined on the projectively trivial representation") {
    auto rep = loop_rep(QMat(2, 2, {}));
    CHECK_FALSE(hm_weight(rep, diag_lambda({{-1, 1}})).has_value());
}

TEST_CASE("flag characterization matches the spec instances") {
    CHECK(flag_characterization(loop_rep(qmat({{0, 1}, {0, 0}})), diag_lambda({{-1, 1}})));
    CHECK_FALSE(flag_characterization(loop_rep(QMat::identity(2, {})), diag_lambda({{-1, 1}})));
    // nonzero augmentation always fails
    CHECK_FALSE(
        flag_characterization(loop_rep(qmat({{0, 1}, {0, 0}}), Rational(1)), diag_lambda({{-1, 1}})));
}

TEST_CASE("sign convention lock: hm_weight < 0 iff the flag characterization holds") {
    InstanceRng rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        const Quiver quiver = sample_quiver(rng);
        DimensionVector dims;
        for (std::size_t v = 0; v < quiver.vertex_count(); ++v) dims.push_back(1 + rng.below(3));
        const auto rep =
            random_representation<Rational>(rng, quiver, dims, {}, rng.below(3) == 0);
        const auto lambda = random_one_param_subgroup<Rational>(rng, dims, {});
        const auto mu = hm_weight(rep, lambda);
        REQUIRE(mu.has_value());
        CHECK((*mu < Rational(0)) == flag_characterization(rep, lambda));
    }
}

TEST_CASE("hm_weight is invariant under simultaneous conjugation") {
    InstanceRng rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const Quiver quiver = sample_quiver(rng);
        DimensionVector dims;
        for (std::size_t v = 0; v < quiver.vertex_count(); ++v) dims.push_back(1 + rng.below(3));
        const auto rep = random_representation<Rational>(rng, quiver, dims, {}, rng.coin());
        const auto lambda = random_one_param_subgroup<Rational>(rng, dims, {});

        std::vector<QMat> g;
        for (auto d : dims) g.push_back(random_invertible<Rational>(rng, d, {}));
        OneParamSubgroup<Rational> conj_lambda;
        for (std::size_t v = 0; v < dims.size(); ++v) {
            conj_lambda.basis.push_back(g[v] * lambda.basis[v]);
            conj_lambda.weights.push_back(lambda.weights[v]);
        }
        CHECK(hm_weight(rep, lambda) == hm_weight(rep.conjugated(g), conj_lambda));
    }
}

TEST_CASE("hm_weight depends on lambda only through its weighted flag") {
    InstanceRng rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        const Quiver quiver = sample_quiver(rng);
        DimensionVector dims;
        for (std::size_t v = 0; v < quiver.vertex_count(); ++v) dims.push_back(1 + rng.below(3));
        const auto rep = random_representation<Rational>(rng, quiver, dims, {}, rng.coin());
        const auto lambda = random_one_param_subgroup<Rational>(rng, dims, {});

        // mix basis vectors within equal-weight groups: same eigenspaces
        OneParamSubgroup<Rational> mixed = lambda;
        for (std::size_t v = 0; v < dims.size(); ++v) {
            QMat mix(dims[v], dims[v], Rational::Context{});
            for (std::size_t i = 0; i < dims[v]; ++i)
                for (std::size_t j = 0; j < dims[v]; ++j) {
                    if (lambda.weights[v][i] != lambda.weights[v][j]) continue;
                    mix.at(i, j) = i == j ? Rational(1) : Rational(rng.range(-2, 2));
                }
            if (mix.rank() != dims[v]) continue;
            mixed.basis[v] = lambda.basis[v] * mix;
        }
        const auto fa = ops_to_flag(lambda);
        const auto fb = ops_to_flag(mixed);
        REQUIRE(fa.weights == fb.weights);
        CHECK(hm_weight(rep, lambda) == hm_weight(rep, mixed));
    }
}

TEST_CASE("character pairing") {
    CHECK(character_pairing(q({-1, 1}), std::vector<std::size_t>{0, 0}) == Rational(0));
    CHECK(character_pairing(q({-1, 1}), std::vector<std::size_t>{0, 1}) == Rational(-1));
    // full tuple under the normalization sum eta_v r_v = 0
    CHECK(character_pairing(q({-2, 1}), std::vector<std::size_t>{1, 2}) == Rational(0));
}

TEST_CASE("tensor embedding of a rank-one endomorphism at dimension two") {
    // E_11 -> e_1 (x) e_2 (x) det^{-1}, sign +1
    const auto rep = loop_rep(qmat({{1, 0}, {0, 0}}));
    const auto t = embed_end_to_tensor(rep, {1});
    CHECK(t.space_dim == 2);
    CHECK(t.summands == 2);
    CHECK(t.det_twist == -1);
    REQUIRE(t.coefficients.size() == 1);
    const auto& [key, value] = *t.coefficients.begin();
    CHECK(key.summand == 0);
    CHECK(key.indices == std::vector<std::size_t>{0, 1});
    CHECK(value == Rational(1));

    // E_12 -> -e_1 (x) e_1 (x) det^{-1}: completing (2) with (1) is odd
    const auto t2 = embed_end_to_tensor(loop_rep(qmat({{0, 1}, {0, 0}})), {1});
    REQUIRE(t2.coefficients.size() == 1);
    CHECK(t2.coefficients.begin()->first.indices == std::vector<std::size_t>{0, 0});
    CHECK(t2.coefficients.begin()->second == Rational(-1));
}

TEST_CASE("tensor embedding rejects amplified dimension above the cross-check bound") {
    const auto rep = loop_rep(QMat::identity(2, {}));
    CHECK_THROWS_AS(embed_end_to_tensor(rep, {2}), std::invalid_argument);
}

TEST_CASE("tensor embedding is equivariant under base change") {
    InstanceRng rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        // loop with dims 2 or a Kronecker-type quiver with total dimension <= 3
        Representation<Rational> rep;
        std::vector<long long> sigma;
        if (rng.coin()) {
            rep = loop_rep(random_matrix<Rational>(rng, 2, 2, {}),
                           Rational(rng.range(0, 2)));
            sigma = {1};
        } else {
            rep.quiver.vertices = {"v1", "v2"};
            rep.quiver.arrows = {{"a", 0, 1, 1}};
            rep.dims = {1, 2};
            rep.maps = {{random_matrix<Rational>(rng, 2, 1, {})}};
            rep.epsilon = Rational(rng.range(0, 2));
            sigma = {1, 1};
        }
        if (!rep.is_projectively_nontrivial()) continue;

        std::vector<QMat> g;
        for (auto d : rep.dims) g.push_back(random_invertible<Rational>(rng, d, {}));
        const auto lhs = embed_end_to_tensor(rep.conjugated(g), sigma);
        const auto rhs = tensor_base_change(embed_end_to_tensor(rep, sigma), g, sigma, rep.dims);
        CHECK(lhs.coefficients == rhs.coefficients);
    }
}

TEST_CASE("dual tensor weight agrees with the block weight") {
    InstanceRng rng(59);
    for (int trial = 0; trial < 80; ++trial) {
        const auto f = random_matrix<Rational>(rng, 2, 2, {});
        const auto rep = loop_rep(f, Rational(rng.range(0, 1)));
        if (!rep.is_projectively_nontrivial()) continue;

        std::vector<long long> w{rng.range(-2, 2), rng.range(-2, 2)};
        std::sort(w.begin(), w.end());
        const auto mu = hm_weight(rep, diag_lambda({w}));
        REQUIRE(mu.has_value());

        const auto dual = embed_end_to_tensor(transpose_blocks(rep), {1});
        CHECK(tensor_min_weight(dual, w) == *mu);
    }
}

TEST_CASE("dual tensor weight handles non-special one-parameter subgroups") {
    // block e_2 -> e_1 under weights (1, 4): mu = 1 - 4 = -3; the weight sum
    // is nonzero, so the det-twist shift matters
    const auto rep = loop_rep(qmat({{0, 1}, {0, 0}}));
    const auto mu = hm_weight(rep, diag_lambda({{1, 4}}));
    REQUIRE(mu.has_value());
    CHECK(*mu == Rational(-3));
    const auto dual = embed_end_to_tensor(transpose_blocks(rep), {1});
    CHECK(tensor_min_weight(dual, {1, 4}) == Rational(-3));
}
