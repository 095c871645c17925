#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "conelab/polyline.hpp"

using namespace conelab;

namespace {

// Seeded random polyline with M knots. When `convex` is set, values are built
// by integrating a non-increasing slope sequence so the slope condition holds
// by construction; otherwise values are free (and usually violate it).
ScalarPolyline random_polyline(std::mt19937_64& rng, long m, bool convex) {
    std::vector<Rational> knots;
    Rational t(static_cast<long long>(rng() % 5) + 1, static_cast<long long>(rng() % 4) + 1);
    for (long i = 0; i < m; ++i) {
        knots.push_back(t);
        t = t * Rational(static_cast<long long>(rng() % 3) + 1,
                         static_cast<long long>(rng() % 3) + 4);  // shrink by a factor < 1
    }
    std::vector<Rational> values;
    if (convex) {
        Rational a(static_cast<long long>(rng() % 9) - 4);
        Rational slope(static_cast<long long>(rng() % 9) - 2,
                       static_cast<long long>(rng() % 4) + 1);
        values.push_back(a);
        for (long i = 0; i + 1 < m; ++i) {
            values.push_back(values.back() +
                             slope * (knots[static_cast<std::size_t>(i + 1)] -
                                      knots[static_cast<std::size_t>(i)]));
            slope -= Rational(static_cast<long long>(rng() % 5),
                              static_cast<long long>(rng() % 4) + 1);  // non-increasing
        }
    } else {
        for (long i = 0; i < m; ++i)
            values.emplace_back(static_cast<long long>(rng() % 19) - 9,
                                static_cast<long long>(rng() % 6) + 1);
    }
    return ScalarPolyline(std::move(knots), std::move(values));
}

}  // namespace

TEST_CASE("affine pieces") {
    ScalarPolyline p({Rational(1), Rational(1, 2)}, {Rational(1), Rational(1, 2)});
    CHECK(p.affine_piece(1, Rational(1)) == Rational(1));        // f_m(t_m) = a_m
    CHECK(p.affine_piece(1, Rational(3, 4)) == Rational(3, 4));  // this data lies on y = x
    CHECK(p.affine_piece(1, p.knot(2)) == p.value(2));           // interpolation endpoint
    CHECK_THROWS_AS(p.affine_piece(2, Rational(1)), std::out_of_range);
}

TEST_CASE("interpolation endpoints hold on random data") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        ScalarPolyline p = random_polyline(rng, 6, false);
        for (long m = 1; m <= p.pieces(); ++m) {
            CHECK(p.affine_piece(m, p.knot(m)) == p.value(m));
            CHECK(p.affine_piece(m, p.knot(m + 1)) == p.value(m + 1));
        }
    }
}

TEST_CASE("sup evaluation") {
    // identity data: every piece is y = x, so g(x) = x
    ScalarPolyline ident({Rational(1), Rational(1, 2), Rational(1, 3)},
                         {Rational(1), Rational(1, 2), Rational(1, 3)});
    CHECK(ident.sup_eval(Rational(1, 2)) == Rational(1, 2));
    CHECK(ident.sup_eval(Rational(5, 12)) == Rational(5, 12));

    // both pieces evaluated, max taken: f_1(1/3) = 1/3, f_2(1/3) = 1/2
    ScalarPolyline p({Rational(1), Rational(1, 2), Rational(1, 3)},
                     {Rational(1), Rational(1, 2), Rational(1, 2)});
    CHECK(p.affine_piece(1, Rational(1, 3)) == Rational(1, 3));
    CHECK(p.affine_piece(2, Rational(1, 3)) == Rational(1, 2));
    CHECK(p.sup_eval(Rational(1, 3)) == Rational(1, 2));

    CHECK_THROWS_AS(p.sup_eval(Rational(2)), std::domain_error);
    CHECK_THROWS_AS(p.sup_eval(Rational(1, 4)), std::domain_error);
    CHECK_NOTHROW(p.sup_eval(Rational(2), /*allow_outside=*/true));
}

TEST_CASE("slope condition") {
    ScalarPolyline ident({Rational(1), Rational(1, 2), Rational(1, 3)},
                         {Rational(1), Rational(1, 2), Rational(1, 3)});
    CHECK(ident.slope_condition());

    ScalarPolyline ok({Rational(1), Rational(1, 2), Rational(1, 3)},
                      {Rational(0), Rational(0), Rational(1)});
    CHECK(ok.piece_slope(1) == Rational(0));
    CHECK(ok.piece_slope(2) == Rational(-6));
    CHECK(ok.slope_condition());  // 0 >= -6

    ScalarPolyline bad({Rational(1), Rational(1, 2), Rational(1, 3)},
                       {Rational(0), Rational(1), Rational(1)});
    CHECK(bad.piece_slope(1) == Rational(-2));
    CHECK(bad.piece_slope(2) == Rational(0));
    REQUIRE(bad.slope_violation().has_value());
    CHECK(*bad.slope_violation() == 1);

    ScalarPolyline two({Rational(1), Rational(1, 2)}, {Rational(0), Rational(0)});
    CHECK_THROWS_AS(two.slope_violation(), std::invalid_argument);
}

TEST_CASE("lemma 4.2 iff on the hand-built cases") {
    ScalarPolyline ok({Rational(1), Rational(1, 2), Rational(1, 3)},
                      {Rational(0), Rational(0), Rational(1)});
    Lemma42Result r1 = lemma42_iff_check(ok);
    CHECK(r1.slope_ok);
    CHECK(r1.node_identity);
    CHECK(r1.grid_convex);
    CHECK(r1.equivalent());

    ScalarPolyline bad({Rational(1), Rational(1, 2), Rational(1, 3)},
                       {Rational(0), Rational(1), Rational(1)});
    Lemma42Result r2 = lemma42_iff_check(bad);
    CHECK_FALSE(r2.slope_ok);
    CHECK_FALSE(r2.node_identity);  // g(t_1) = f_2(1) = 1 > a_1 = 0
    CHECK(bad.sup_eval(Rational(1)) == Rational(1));
    REQUIRE(r2.overshoot.has_value());
    CHECK(*r2.overshoot == Rational(1));  // f_{m+1}(t_m) - a_m, exactly
    CHECK(r2.equivalent());
}

TEST_CASE("lemma 4.2 iff holds on seeded random polylines") {
    std::mt19937_64 rng(42);
    int holds = 0, violates = 0;
    for (int i = 0; i < 200; ++i) {
        long m = 3 + static_cast<long>(rng() % 10);  // M <= 12
        ScalarPolyline p = random_polyline(rng, m, i % 2 == 0);
        Lemma42Result r = lemma42_iff_check(p);
        CHECK(r.equivalent());
        if (r.slope_ok) {
            ++holds;
        } else {
            ++violates;
            REQUIRE(r.violating_m.has_value());
            REQUIRE(r.overshoot.has_value());
            CHECK(r.overshoot->sign() > 0);  // converse witness f_{m+1}(t_m) > a_m
        }
    }
    CHECK(holds >= 20);
    CHECK(violates >= 20);
}

TEST_CASE("g is convex on the knot grid whenever the slope condition holds") {
    std::mt19937_64 rng(17);
    const Rational lambdas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    for (int i = 0; i < 40; ++i) {
        ScalarPolyline p = random_polyline(rng, 3 + static_cast<long>(rng() % 8), true);
        REQUIRE(p.slope_condition());
        for (long a = 1; a <= p.size(); ++a)
            for (long b = a; b <= p.size(); ++b)
                for (const Rational& l : lambdas) {
                    Rational x = l * p.knot(a) + (Rational(1) - l) * p.knot(b);
                    CHECK(p.sup_eval(x) <=
                          l * p.sup_eval(p.knot(a)) + (Rational(1) - l) * p.sup_eval(p.knot(b)));
                }
    }
}
