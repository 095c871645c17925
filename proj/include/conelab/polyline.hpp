#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

/// Piecewise-affine data (t_1 > t_2 > ... > t_M > 0 with values a_1..a_M) and
/// the supremum-of-affine-pieces function g built on it: piece m interpolates
/// (t_m, a_m) -- (t_{m+1}, a_{m+1}) and extends affinely to all of R, and
/// g = max over pieces. g interpolates the nodes exactly when the decreasing
/// slope condition holds; that equivalence is the content of lemma42_iff_check.
class ScalarPolyline {
public:
    ScalarPolyline(std::vector<Rational> knots, std::vector<Rational> values)
        : knots_(std::move(knots)), values_(std::move(values)) {
        if (knots_.size() != values_.size())
            throw std::invalid_argument("ScalarPolyline: knots/values length mismatch");
        if (knots_.size() < 2) throw std::invalid_argument("ScalarPolyline: need at least 2 knots");
        if (knots_.back().sign() <= 0)
            throw std::invalid_argument("ScalarPolyline: knots must be positive");
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
            if (!(knots_[i] > knots_[i + 1]))
                throw std::invalid_argument("ScalarPolyline: knots must be strictly decreasing");
    }

    long size() const { return static_cast<long>(knots_.size()); }  // M
    long pieces() const { return size() - 1; }

    const Rational& knot(long m) const { return knots_.at(static_cast<std::size_t>(m - 1)); }
    const Rational& value(long m) const { return values_.at(static_cast<std::size_t>(m - 1)); }

    /// f_m(x) = a_m + (x - t_m)/(t_{m+1} - t_m) * (a_{m+1} - a_m), 1 <= m <= M-1.
    Rational affine_piece(long m, const Rational& x) const {
        if (m < 1 || m > pieces()) throw std::out_of_range("affine_piece: piece index out of range");
        const Rational slope = piece_slope(m);
        return value(m) + (x - knot(m)) * slope;
    }

    /// (a_{m+1} - a_m)/(t_{m+1} - t_m), 1 <= m <= M-1.
    Rational piece_slope(long m) const {
        if (m < 1 || m > pieces()) throw std::out_of_range("piece_slope: index out of range");
        return (value(m + 1) - value(m)) / (knot(m + 1) - knot(m));
    }

    /// g(x) = max_m f_m(x) on the knot hull [t_M, t_1]; outside it only when
    /// extrapolation is explicitly allowed (the sup over finitely many pieces
    /// stays finite but no longer reflects the infinite construction).
    Rational sup_eval(const Rational& x, bool allow_outside = false) const {
        if (!allow_outside && (x < knots_.back() || x > knots_.front()))
            throw std::domain_error("sup_eval: point outside [t_M, t_1]");
        Rational best = affine_piece(1, x);
        for (long m = 2; m <= pieces(); ++m) {
            Rational v = affine_piece(m, x);
            if (v > best) best = v;
        }
        return best;
    }

    /// Smallest m (1-based) violating slope_m >= slope_{m+1}; nullopt if none.
    /// Requires M >= 3.
    std::optional<long> slope_violation() const {
        if (size() < 3) throw std::invalid_argument("slope_violation: need M >= 3");
        for (long m = 1; m + 1 <= pieces(); ++m)
            if (piece_slope(m) < piece_slope(m + 1)) return m;
        return std::nullopt;
    }

    bool slope_condition() const { return !slope_violation().has_value(); }

private:
    std::vector<Rational> knots_;
    std::vector<Rational> values_;
};

struct Lemma42Result {
    bool slope_ok = false;
    bool node_identity = false;  // g(t_m) == a_m for every m
    bool grid_convex = false;    // midpoint convexity over every knot pair
    std::optional<long> violating_m;
    std::optional<Rational> overshoot;  // f_{m+1}(t_m) - a_m at the violation, > 0
    bool equivalent() const { return slope_ok == (node_identity && grid_convex); }
};

/// Checks both directions of the iff independently: the slope condition on
/// one side, node identity plus exact midpoint convexity of g on the other.
/// On a slope violation at m the converse witness f_{m+1}(t_m) > a_m is
/// evaluated and recorded.
inline Lemma42Result lemma42_iff_check(const ScalarPolyline& p) {
    Lemma42Result r;
    r.violating_m = p.slope_violation();
    r.slope_ok = !r.violating_m.has_value();
    if (r.violating_m) {
        const long m = *r.violating_m;
        r.overshoot = p.affine_piece(m + 1, p.knot(m)) - p.value(m);
    }

    r.node_identity = true;
    for (long m = 1; m <= p.size(); ++m)
        if (p.sup_eval(p.knot(m)) != p.value(m)) { r.node_identity = false; break; }

    r.grid_convex = true;
    const Rational half(1, 2);
    for (long i = 1; i <= p.size() && r.grid_convex; ++i)
        for (long j = i; j <= p.size(); ++j) {
            const Rational mid = (p.knot(i) + p.knot(j)) * half;
            if (p.sup_eval(mid) > (p.sup_eval(p.knot(i)) + p.sup_eval(p.knot(j))) * half) {
                r.grid_convex = false;
                break;
            }
        }
    return r;
}

}  // namespace conelab
