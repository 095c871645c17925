#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "conelab/isomorphism.hpp"
#include "helpers.hpp"

using namespace conelab;
using conelab::testing::pattern_nodes;
using conelab::testing::rnd_functional;
using conelab::testing::rnd_vector;

TEST_CASE("diagonal isomorphisms") {
    LinearIso ident = LinearIso::identity();
    CHECK(ident.norm_bound() == Rational(1));
    CHECK(ident.inverse_norm_bound() == Rational(1));
    std::mt19937_64 rng(2);
    SeqVector v = rnd_vector(rng, 8);
    CHECK(ident.forward(v) == v);
    CHECK(ident.inverse(v) == v);

    LinearIso shift = LinearIso::harmonic_shift();
    CHECK(shift.norm_bound() == Rational(2));
    CHECK(shift.inverse_norm_bound() == Rational(1));
    SeqVector e1 = SeqVector::unit(Space::C0, 1, 4);
    CHECK(shift.forward(e1) == scale(Rational(2), e1));  // d_1 = 2

    // d_n = 1/n has no positive lower bound: not an isomorphism onto c0
    CHECK_THROWS_AS(LinearIso::diagonal("bad", [](long n) { return Rational(1, n); },
                                        Rational(0), Rational(1)),
                    std::invalid_argument);
    // claimed bounds must survive the sample check
    CHECK_THROWS_AS(LinearIso::diagonal("bad", [](long n) { return Rational(1, n); },
                                        Rational(1, 2), Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("summing coordinate change") {
    LinearIso s = LinearIso::summing_change(16);
    SeqVector a = SeqVector::make(Space::C0, {Rational(1), Rational(0), Rational(0)});
    CHECK(s.forward(a) == a);  // x_1 = e_1

    SeqVector b = SeqVector::make(Space::C0, {Rational(0), Rational(1), Rational(0)});
    SeqVector x2 = s.forward(b);
    CHECK(x2.coord(1) == Rational(1));
    CHECK(x2.coord(2) == Rational(1));
    CHECK(x2.coord(3) == Rational(0));

    std::mt19937_64 rng(4);
    for (int i = 0; i < 30; ++i) {
        SeqVector v = rnd_vector(rng, 12);
        CHECK(s.inverse(s.forward(v)) == v);
        CHECK(s.forward(s.inverse(v)) == v);
    }

    SeqVector tailed = SeqVector::make(Space::C0, {Rational(1)},
                                       TailDescriptor::harmonic(Rational(1)));
    CHECK_THROWS_AS(s.forward(tailed), std::invalid_argument);
    CHECK_THROWS_AS(s.forward(rnd_vector(rng, 20)), std::invalid_argument);  // past truncation
}

TEST_CASE("round trip is exact on prefixes for every built-in iso") {
    std::mt19937_64 rng(6);
    for (const char* name : {"identity", "diagonal", "summing-change"}) {
        LinearIso iso = iso_by_name(name, 16);
        for (int i = 0; i < 20; ++i) {
            SeqVector v = rnd_vector(rng, 10);
            SeqVector back = iso.inverse(iso.forward(v));
            for (long j = 1; j <= v.size(); ++j) CHECK(back.coord(j) == v.coord(j));
        }
    }
    CHECK_THROWS_AS(iso_by_name("nope", 16), std::invalid_argument);
}

TEST_CASE("transported duals satisfy the pairing identity") {
    std::mt19937_64 rng(8);
    for (const char* name : {"identity", "diagonal", "summing-change"}) {
        LinearIso iso = iso_by_name(name, 16);
        for (int i = 0; i < 20; ++i) {
            Functional u = rnd_functional(rng, 10);
            Functional w = iso.transport_dual(u);
            SeqVector v = rnd_vector(rng, 10);
            Pairing lhs = pair(w, iso.forward(v));
            Pairing rhs = pair(u, v);
            CHECK(lhs.exact());
            CHECK(lhs.value == rhs.value);
        }
    }
}

TEST_CASE("declared norm bounds hold on samples for every built-in iso") {
    std::mt19937_64 rng(10);
    for (const char* name : {"identity", "diagonal", "summing-change"}) {
        LinearIso iso = iso_by_name(name, 16);
        for (int i = 0; i < 30; ++i) {
            SeqVector v = rnd_vector(rng, 9);
            CHECK(iso.forward(v).norm().lower <= iso.norm_bound() * v.norm().lower);
            CHECK(iso.inverse(v).norm().lower <= iso.inverse_norm_bound() * v.norm().lower);
        }
    }
}

TEST_CASE("conical extension is linear and decomposition-independent") {
    ConeSpec cone(canonical_basis(10), +1);
    LinearIso doubling =
        LinearIso::diagonal("doubling", [](long) { return Rational(2); }, Rational(2), Rational(2));
    ConicalExtension g(cone, 8, [&](const SeqVector& v) { return doubling.forward(v); });

    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
        SeqVector x = rnd_vector(rng, 6);
        SeqVector gx = g(x);
        for (long j = 1; j <= x.size(); ++j) CHECK(gx.coord(j) == Rational(2) * x.coord(j));

        // negative homogeneity through the case split
        SeqVector gnx = g(scale(Rational(-1), x));
        for (long j = 1; j <= x.size(); ++j) CHECK(gnx.coord(j) == -gx.coord(j));
        SeqVector gsx = g(scale(Rational(-3, 2), x));
        for (long j = 1; j <= x.size(); ++j)
            CHECK(gsx.coord(j) == Rational(-3, 2) * gx.coord(j));

        // additivity
        SeqVector y = rnd_vector(rng, 6);
        SeqVector gsum = g(add(x, y));
        SeqVector gy = g(y);
        for (long j = 1; j <= x.size(); ++j)
            CHECK(gsum.coord(j) == gx.coord(j) + gy.coord(j));
    }

    // two different decompositions of the same x give the same value
    SeqVector x = SeqVector::make(Space::C0, {Rational(1), Rational(-2), Rational(3)});
    auto [p, q] = generating_decomposition(cone, x, 8);
    SeqVector r = SeqVector::make(Space::C0, {Rational(1), Rational(1), Rational(1)});
    SeqVector v1 = g.from_decomposition(p, q);
    SeqVector v2 = g.from_decomposition(add(p, r), add(q, r));
    for (long j = 1; j <= x.size(); ++j) CHECK(v1.coord(j) == v2.coord(j));
}

TEST_CASE("pushforward membership delegates through the inverse") {
    ConeSpec positive(canonical_basis(8), +1);

    PushforwardCone ident{positive, LinearIso::identity()};
    SeqVector v = SeqVector::make(Space::C0, {Rational(1), Rational(2)});
    CHECK(pushforward_membership(ident, v, 4) == cone_contains(positive, v, 4));

    PushforwardCone doubled{positive, LinearIso::diagonal("doubling", [](long) { return Rational(2); },
                                                          Rational(2), Rational(2))};
    SeqVector neg = SeqVector::make(Space::C0, {Rational(-1), Rational(0)});
    CHECK(pushforward_membership(doubled, neg, 4) == Tri::No);

    PushforwardCone shifted{positive, LinearIso::harmonic_shift()};
    SeqVector w = shifted.iso.forward(SeqVector::make(Space::C0, {Rational(1), Rational(1), Rational(0)}));
    CHECK(pushforward_membership(shifted, w, 4) == Tri::Yes);
}

TEST_CASE("pushforward normality stays within the transfer bound") {
    ConeSpec positive(canonical_basis(9), +1);

    PushforwardCone ident{positive, LinearIso::identity()};
    auto r1 = pushforward_normality_check(ident, 8, {500, 3});
    CHECK(r1.source.lower_bound == Rational(1));
    CHECK(r1.pushed_lower_bound == Rational(1));
    CHECK(r1.transfer_bound == Rational(1));
    CHECK(r1.within_bound);

    PushforwardCone shifted{positive, LinearIso::harmonic_shift()};
    auto r2 = pushforward_normality_check(shifted, 8, {500, 3});
    CHECK(r2.pushed_lower_bound <= Rational(2));
    CHECK(r2.within_bound);

    PushforwardCone summed{positive, LinearIso::summing_change(16)};
    auto r3 = pushforward_normality_check(summed, 8, {500, 3});
    CHECK(r3.within_bound);
}

TEST_CASE("non-normality survives the pushforward") {
    const long j = 8, n = 2 * j + 2;
    ConeSpec cone(difference_basis(n), +1);
    PushforwardCone pushed{cone, LinearIso::harmonic_shift()};
    auto r = pushforward_normality_check(pushed, n, {300, 5});
    // the transported ramp family keeps at least (L/U) * j = j/2
    CHECK(r.pushed_lower_bound >= Rational(j, 2));
    CHECK(r.within_bound);
}

TEST_CASE("convexity transfers through every built-in iso") {
    const long m = 10, n = 20;
    VectorPath path = VectorPath::harmonic_knots(pattern_nodes(m, n));
    ConeSpec minus_k(scaled_basis(n), -1);
    const Rational lambdas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    auto grid = knot_pair_grid(path.knots(), lambdas);

    for (const char* name : {"identity", "diagonal", "summing-change"}) {
        LinearIso iso = iso_by_name(name, n + 2);
        TransferReport r = transfer_convexity(iso, path, minus_k, grid, m);
        CHECK(r.source.certified());
        CHECK(r.transported.certified());
        CHECK(r.margins_match);
        CHECK(r.pass_preserved);
    }

    // a violated source stays violated under the identity (margins equal)
    ConeSpec plus_k(scaled_basis(n), +1);
    TransferReport rv = transfer_convexity(LinearIso::identity(), path, plus_k, grid, m);
    CHECK_FALSE(rv.source.certified());
    CHECK_FALSE(rv.transported.certified());
    CHECK(rv.margins_match);
    CHECK(rv.pass_preserved);  // vacuously
}
