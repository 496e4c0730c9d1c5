#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "oqw/graph.hpp"
#include "oqw/operators.hpp"
#include "oqw/oracle.hpp"

using namespace oqw;
using Eigen::MatrixXcd;

namespace {
constexpr double kPi = std::numbers::pi;
const Cx kI(0, 1);
}  // namespace

TEST_CASE("series exponential reproduces closed forms") {
    SUBCASE("involutory 2x2") {
        // H = [[0, e^{ia}], [e^{-ia}, 0]]: exp(i t H) = cos t I + i sin t H
        const double alpha = 1.9;
        MatrixXcd h(2, 2);
        h << 0, std::exp(kI * alpha), std::exp(-kI * alpha), 0;
        for (double theta : {0.0, 0.3, 2.0, 11.0}) {
            MatrixXcd expect =
                std::cos(theta) * MatrixXcd::Identity(2, 2) + kI * std::sin(theta) * h;
            CHECK((oracle::series_expm(theta, h) - expect).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
    SUBCASE("scalar phase on the identity") {
        MatrixXcd h = MatrixXcd::Identity(3, 3);
        const double theta = 0.77;
        MatrixXcd e = oracle::series_expm(theta, h);
        CHECK((e - std::polar(1.0, theta) * MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <
              1e-14);
    }
    SUBCASE("result is always unitary for Hermitian input") {
        oracle::TestRng rng(311);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 2 + rng.below(6);
            MatrixXcd a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = Cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
            MatrixXcd h = a + a.adjoint();
            MatrixXcd u = oracle::series_expm(rng.uniform(0, 3), h);
            CHECK(unitarity_defect(u) < 1e-12);
        }
    }
    SUBCASE("non-Hermitian input is rejected") {
        MatrixXcd h(2, 2);
        h << 0, 1, 2, 0;
        CHECK_THROWS_AS(oracle::series_expm(1.0, h), std::invalid_argument);
    }
    SUBCASE("non-square input is rejected") {
        CHECK_THROWS_AS(oracle::series_expm(1.0, MatrixXcd::Zero(2, 3)), std::invalid_argument);
    }
}

TEST_CASE("dense hamiltonian only couples within tiles") {
    // path 0->1->2 but the tessellation only pairs {0,1}
    OrientedGraph g;
    g.vertex_count = 3;
    g.arcs = {{0, 1}, {1, 2}};
    Tessellation t{{Tile{{0, 1}}, Tile{{2}}}};
    const double alpha = 0.4;
    MatrixXcd h = oracle::dense_hamiltonian(g, t, alpha);
    CHECK(std::abs(h(0, 1) - std::exp(kI * alpha)) < 1e-15);
    CHECK(std::abs(h(1, 0) - std::exp(-kI * alpha)) < 1e-15);
    // the (1,2) arc crosses tiles, so it contributes nothing
    CHECK(std::abs(h(1, 2)) == 0.0);
    CHECK(std::abs(h(2, 1)) == 0.0);
}

TEST_CASE("rng is deterministic and in range") {
    oracle::TestRng a(2024), b(2024), c(2025);
    bool all_equal = true;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        const double y = b.uniform();
        if (x != y) all_equal = false;
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(all_equal);
    // a different seed diverges immediately with overwhelming probability
    CHECK(a.uniform() != c.uniform());
    for (int i = 0; i < 100; ++i) {
        const int v = a.below(7);
        CHECK(v >= 0);
        CHECK(v < 7);
    }
    const double u = a.uniform(2.0, 5.0);
    CHECK(u >= 2.0);
    CHECK(u < 5.0);
}

TEST_CASE("random covers are valid and reproducible") {
    oracle::TestRng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + rng.below(11);
        TessellationCover cover = oracle::random_oriented_cover(n, rng);
        CHECK(validate_oriented(cover.host).ok);
        REQUIRE(!cover.tessellations.empty());
        auto rep = validate_cover(cover);
        CHECK(rep.ok);  // every edge covered, every tessellation a clique partition
    }

    oracle::TestRng r1(5), r2(5);
    TessellationCover c1 = oracle::random_oriented_cover(9, r1);
    TessellationCover c2 = oracle::random_oriented_cover(9, r2);
    CHECK(c1.host.arcs == c2.host.arcs);
    REQUIRE(c1.tessellations.size() == c2.tessellations.size());
    for (size_t i = 0; i < c1.tessellations.size(); ++i) {
        REQUIRE(c1.tessellations[i].tiles.size() == c2.tessellations[i].tiles.size());
        for (size_t j = 0; j < c1.tessellations[i].tiles.size(); ++j)
            CHECK(c1.tessellations[i].tiles[j].vertices ==
                  c2.tessellations[i].tiles[j].vertices);
    }
}

TEST_CASE("block-built step equals the dense series step") {
    oracle::TestRng rng(1234);
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + rng.below(11);
        TessellationCover cover = oracle::random_oriented_cover(n, rng);
        for (int draw = 0; draw < 3; ++draw) {
            WalkParams p{rng.uniform(0, 2 * kPi), rng.uniform(0, kPi)};
            MatrixXcd production =
                assemble_dense_step(evolution_step_plan(cover, p), cover.host.vertex_count);
            MatrixXcd reference = oracle::dense_step(cover, p);
            worst = std::max(worst, (production - reference).cwiseAbs().maxCoeff());
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("dense step rejects oversized systems") {
    WalkFamily fam = build_oriented_line(LineVariant::uniform, 40);  // 80 vertices
    CHECK_THROWS_AS(oracle::dense_step(fam.cover, WalkParams{0.1, 0.2}),
                    std::invalid_argument);
}
