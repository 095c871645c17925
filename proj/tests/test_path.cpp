#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "conelab/path.hpp"
#include "helpers.hpp"

using namespace conelab;
using conelab::testing::pattern_nodes;
using conelab::testing::pattern_y;
using conelab::testing::rnd_functional;
using conelab::testing::rnd_vector;

namespace {

VectorPath main_path(long k_max, long n) {
    return VectorPath::harmonic_knots(pattern_nodes(k_max, n));
}

}  // namespace

TEST_CASE("node identity: eval at every knot returns y_k t_k exactly") {
    const long m = 12, n = 16;
    VectorPath path = main_path(m, n);
    for (long k = 1; k <= m; ++k) {
        SeqVector v = path.eval(Rational(1, k));
        CHECK(v == scale(Rational(1, k), pattern_y(k, n)));
        CHECK(scale(Rational(k), v) == pattern_y(k, n));
    }
}

TEST_CASE("zero nodes give the zero path") {
    std::vector<SeqVector> nodes(5, SeqVector::zero(Space::C0, 6));
    VectorPath path = VectorPath::harmonic_knots(nodes);
    for (const Rational& r : {Rational(1), Rational(2, 5), Rational(7, 8)})
        CHECK(path.eval(r).norm().upper == Rational(0));
}

TEST_CASE("midpoint of a segment is the affine midpoint") {
    const long n = 12;
    VectorPath path = main_path(8, n);
    const long k = 3;
    Rational mid = (path.knot(k) + path.knot(k + 1)) / Rational(2);
    SeqVector expect = scale(Rational(1, 2), add(scale(path.knot(k), pattern_y(k, n)),
                                                 scale(path.knot(k + 1), pattern_y(k + 1, n))));
    SeqVector got = path.eval(mid);
    for (long j = 1; j <= got.size(); ++j) CHECK(got.coord(j) == expect.coord(j));
}

TEST_CASE("evaluation domain") {
    VectorPath path = main_path(5, 10);
    CHECK_THROWS_AS(path.eval(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(path.eval(Rational(-1)), std::domain_error);
    CHECK_THROWS_AS(path.eval(Rational(1, 6)), std::domain_error);  // below t_5 = 1/5
    CHECK_NOTHROW(path.eval(Rational(1, 6), /*extrapolate_final=*/true));

    // r > t_1 extends segment 1: F(2) = y_1 t_1 + (2-1)/(1/2-1) (y_2/2 - y_1)
    SeqVector got = path.eval(Rational(2));
    SeqVector expect = add(scale(Rational(1), pattern_y(1, 10)),
                           scale(Rational(2) - Rational(1),
                                 scale(Rational(1) / (Rational(1, 2) - Rational(1)),
                                       subtract(scale(Rational(1, 2), pattern_y(2, 10)),
                                                scale(Rational(1), pattern_y(1, 10))))));
    for (long j = 1; j <= got.size(); ++j) CHECK(got.coord(j) == expect.coord(j));
}

TEST_CASE("second-difference criterion on the main construction") {
    const long m = 12, n = 16;
    auto nodes = pattern_nodes(m, n);
    ConeSpec minus_k(scaled_basis(n), -1);
    auto duals = dual_generators(minus_k, m);

    SecondDiffResult r = second_difference_criterion(nodes, duals);
    CHECK(r.verdict == Tri::Yes);

    // margins: dual k against the k-th second difference pairs to exactly -1
    for (long k = 1; k + 2 <= m; ++k) {
        SeqVector sd = subtract(subtract(scale(Rational(2), nodes[static_cast<std::size_t>(k)]),
                                         nodes[static_cast<std::size_t>(k - 1)]),
                                nodes[static_cast<std::size_t>(k + 1)]);
        Pairing p = pair(duals[static_cast<std::size_t>(k - 1)], sd);
        CHECK(p.exact());
        CHECK(p.value == Rational(-1));
    }
}

TEST_CASE("second-difference criterion fails against l1+ generators") {
    const long m = 10, n = 14;
    auto nodes = pattern_nodes(m, n);
    std::vector<Functional> plus;
    for (long k = 1; k <= m; ++k) plus.push_back(Functional::unit(k));

    SecondDiffResult r = second_difference_criterion(nodes, plus);
    REQUIRE(r.verdict == Tri::No);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->k == 1);
    CHECK(r.witness->dual_index == 1);
    CHECK(r.witness->value.value == Rational(1));  // e_1*(b_1) = 1

    // the failing value at (k, e_k*) is 1/k throughout
    for (long k = 1; k + 2 <= m; ++k) {
        SeqVector sd = subtract(subtract(scale(Rational(2), nodes[static_cast<std::size_t>(k)]),
                                         nodes[static_cast<std::size_t>(k - 1)]),
                                nodes[static_cast<std::size_t>(k + 1)]);
        CHECK(pair(Functional::unit(k), sd).value == Rational(1, k));
    }
}

TEST_CASE("constant nodes satisfy the criterion for any duals") {
    std::mt19937_64 rng(9);
    std::vector<SeqVector> nodes(6, rnd_vector(rng, 8));
    std::vector<Functional> duals{rnd_functional(rng, 8), rnd_functional(rng, 8)};
    CHECK(second_difference_criterion(nodes, duals).verdict == Tri::Yes);
}

TEST_CASE("convexity scan certifies the main construction against -K") {
    const long m = 20, n = 24;
    VectorPath path = main_path(m, n);
    ConeSpec minus_k(scaled_basis(n), -1);
    const Rational lambdas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    auto grid = knot_pair_grid(path.knots(), lambdas);

    ConvexityReport report = kconvexity_scan(path, minus_k, grid, m);
    CHECK(report.verdict == Tri::Yes);
    CHECK(report.grid_size == static_cast<long>(grid.size()));
    CHECK_FALSE(report.violation.has_value());
}

TEST_CASE("flipping the cone sign produces an exact violation") {
    const long m = 12, n = 16;
    VectorPath path = main_path(m, n);
    ConeSpec plus_k(scaled_basis(n), +1);
    const Rational lambdas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    auto grid = knot_pair_grid(path.knots(), lambdas);

    ConvexityReport report = kconvexity_scan(path, plus_k, grid, m);
    REQUIRE(report.verdict == Tri::No);
    REQUIRE(report.violation.has_value());
    const auto& v = *report.violation;
    CHECK(v.margin.exact());
    CHECK(v.margin.value.sign() < 0);

    // the recorded violation re-evaluates to exactly its margin
    const GridTriple& t = v.triple;
    Rational mid = t.lambda * t.r1 + (Rational(1) - t.lambda) * t.r2;
    SeqVector combo = subtract(add(scale(t.lambda, path.eval(t.r1)),
                                   scale(Rational(1) - t.lambda, path.eval(t.r2))),
                               path.eval(mid));
    auto duals = dual_generators(plus_k, m);
    CHECK(pair(duals[static_cast<std::size_t>(v.dual_index - 1)], combo).value == v.margin.value);
}

TEST_CASE("zero path is certified for any cone") {
    std::vector<SeqVector> nodes(5, SeqVector::zero(Space::C0, 8));
    VectorPath path = VectorPath::harmonic_knots(nodes);
    const Rational lambdas[] = {Rational(1, 2)};
    auto grid = knot_pair_grid(path.knots(), lambdas);
    CHECK(kconvexity_scan(path, ConeSpec(scaled_basis(8), +1), grid, 5).verdict == Tri::Yes);
    CHECK(kconvexity_scan(path, ConeSpec(scaled_basis(8), -1), grid, 5).verdict == Tri::Yes);
}

TEST_CASE("a certified scan implies midpoint convexity of every composite") {
    // scalarization soundness, re-derived through scalar evaluations of the
    // composites u*(F(.)) rather than through the margin computation
    const long m = 12, n = 16;
    VectorPath path = main_path(m, n);
    ConeSpec minus_k(scaled_basis(n), -1);
    const Rational lambdas[] = {Rational(1, 2)};
    auto grid = knot_pair_grid(path.knots(), lambdas);
    REQUIRE(kconvexity_scan(path, minus_k, grid, m).verdict == Tri::Yes);

    for (const Functional& u : dual_generators(minus_k, m)) {
        auto composite = [&](const Rational& r) {
            Pairing p = pair(u, path.eval(r));
            REQUIRE(p.exact());
            return p.value;
        };
        for (const GridTriple& t : grid) {
            Rational mid = t.lambda * t.r1 + (Rational(1) - t.lambda) * t.r2;
            CHECK(composite(mid) <=
                  t.lambda * composite(t.r1) + (Rational(1) - t.lambda) * composite(t.r2));
        }
    }
}

TEST_CASE("slope condition and the second-difference criterion coincide (t_k = 1/k)") {
    // main construction, duals of -K_{b_k}
    const long m = 30, n = 34;
    auto nodes = pattern_nodes(m, n);
    auto duals = dual_generators(ConeSpec(scaled_basis(n), -1), m);
    CHECK(slope_criterion_equivalence(nodes, duals, m));

    // seeded random nodes and random functionals
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<SeqVector> rnodes;
        for (int k = 0; k < 10; ++k) rnodes.push_back(rnd_vector(rng, 12));
        std::vector<Functional> rduals{rnd_functional(rng, 12), rnd_functional(rng, 12),
                                       rnd_functional(rng, 12)};
        CHECK(slope_criterion_equivalence(rnodes, rduals, 10));
    }

    // constant nodes: both sides trivially true
    std::vector<SeqVector> cnodes(6, rnd_vector(rng, 8));
    std::vector<Functional> cduals{rnd_functional(rng, 8)};
    CHECK(slope_criterion_equivalence(cnodes, cduals, 6));
}
