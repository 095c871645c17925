#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/parallel.hpp"
#include "conelab/polyline.hpp"
#include "conelab/seqvector.hpp"

namespace conelab {

/// The piecewise-linear vector path: node values y_k t_k at knots t_k, affine
/// in between. Evaluation at a knot returns the node value exactly; the first
/// segment extends to all r > t_1.
class VectorPath {
public:
    VectorPath(std::vector<Rational> knots, std::vector<SeqVector> nodes)
        : knots_(std::move(knots)), nodes_(std::move(nodes)) {
        if (knots_.size() != nodes_.size())
            throw std::invalid_argument("VectorPath: knots/nodes length mismatch");
        if (knots_.size() < 2) throw std::invalid_argument("VectorPath: need at least 2 knots");
        if (knots_.back().sign() <= 0)
            throw std::invalid_argument("VectorPath: knots must be positive");
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
            if (!(knots_[i] > knots_[i + 1]))
                throw std::invalid_argument("VectorPath: knots must be strictly decreasing");
    }

    /// t_k = 1/k for k = 1..nodes.size().
    static VectorPath harmonic_knots(std::vector<SeqVector> nodes) {
        std::vector<Rational> knots;
        knots.reserve(nodes.size());
        for (long k = 1; k <= static_cast<long>(nodes.size()); ++k)
            knots.emplace_back(Rational(1, k));
        return VectorPath(std::move(knots), std::move(nodes));
    }

    long size() const { return static_cast<long>(knots_.size()); }  // M
    const Rational& knot(long k) const { return knots_.at(static_cast<std::size_t>(k - 1)); }
    const SeqVector& node(long k) const { return nodes_.at(static_cast<std::size_t>(k - 1)); }
    std::span<const Rational> knots() const { return knots_; }
    std::span<const SeqVector> nodes() const { return nodes_; }

    /// Value at ray parameter r > 0. Segment k covers (t_{k+1}, t_k];
    /// segment 1 additionally covers r > t_1 and the last segment closes at
    /// r = t_M. Below t_M only with explicit extrapolation.
    SeqVector eval(const Rational& r, bool extrapolate_final = false) const {
        if (r.sign() <= 0)
            throw std::domain_error("VectorPath::eval: r must be > 0");
        long k;
        if (r >= knots_.front()) {
            k = 1;
        } else if (r < knots_.back()) {
            if (!extrapolate_final)
                throw std::domain_error("VectorPath::eval: r below the last knot");
            k = size() - 1;
        } else {
            k = 1;
            while (k + 1 < size() && r <= knot(k + 1)) ++k;
        }
        const Rational &tk = knot(k), &tk1 = knot(k + 1);
        const SeqVector left = scale(tk, node(k));
        const SeqVector right = scale(tk1, node(k + 1));
        const Rational w = (r - tk) / (tk1 - tk);
        return add(left, scale(w, subtract(right, left)));
    }

private:
    std::vector<Rational> knots_;
    std::vector<SeqVector> nodes_;
};

// ---------------------------------------------------------------------------
// Convexity criteria.
// ---------------------------------------------------------------------------

struct SecondDiffWitness {
    long k = 0;           // node index of the failing second difference
    long dual_index = 0;  // 1-based index into the dual list
    Pairing value;        // y*(2 y_{k+1} - y_k - y_{k+2}); must be <= 0
};

struct SecondDiffResult {
    Tri verdict = Tri::Indeterminate;
    std::optional<SecondDiffWitness> witness;  // first failure (k, dual) on non-Yes
    bool passed() const { return verdict == Tri::Yes; }
};

/// Checks y*(2 y_{k+1} - y_k - y_{k+2}) <= 0 for every dual generator and
/// every k. Witness order is lexicographic in (k, dual index).
inline SecondDiffResult second_difference_criterion(std::span<const SeqVector> nodes,
                                 std::span<const Functional> duals) {
    if (nodes.size() < 3)
        throw std::invalid_argument("second_difference_criterion: need at least 3 nodes");
    SecondDiffResult out;
    std::optional<SecondDiffWitness> first_indeterminate;
    for (long k = 1; k + 2 <= static_cast<long>(nodes.size()); ++k) {
        const SeqVector second_diff =
            subtract(subtract(scale(Rational(2), nodes[static_cast<std::size_t>(k)]),
                              nodes[static_cast<std::size_t>(k - 1)]),
                     nodes[static_cast<std::size_t>(k + 1)]);
        for (long d = 1; d <= static_cast<long>(duals.size()); ++d) {
            Pairing p = pair(duals[static_cast<std::size_t>(d - 1)], second_diff);
            if (p.certified_nonpositive()) continue;
            if (p.sign() == Pairing::Sign::Positive) {
                out.verdict = Tri::No;
                out.witness = SecondDiffWitness{k, d, std::move(p)};
                return out;
            }
            if (!first_indeterminate) first_indeterminate = SecondDiffWitness{k, d, std::move(p)};
        }
    }
    if (first_indeterminate) {
        out.verdict = Tri::Indeterminate;
        out.witness = std::move(first_indeterminate);
    } else {
        out.verdict = Tri::Yes;
    }
    return out;
}

struct GridTriple {
    Rational r1, r2, lambda;
};

/// All knot pairs (t_i, t_j), i < j, crossed with the given lambda weights.
inline std::vector<GridTriple> knot_pair_grid(std::span<const Rational> knots,
                                              std::span<const Rational> lambdas) {
    for (const auto& l : lambdas)
        if (l.sign() < 0 || l > Rational(1))
            throw std::invalid_argument("knot_pair_grid: lambda outside [0,1]");
    std::vector<GridTriple> grid;
    for (std::size_t i = 0; i < knots.size(); ++i)
        for (std::size_t j = i + 1; j < knots.size(); ++j)
            for (const auto& l : lambdas) grid.push_back({knots[i], knots[j], l});
    return grid;
}

struct ConvexityViolation {
    long dual_index = 0;  // 1-based
    long grid_index = 0;  // 1-based
    GridTriple triple;
    Pairing margin;  // u*(lambda F(r1) + (1-lambda) F(r2) - F(mid)); negative
};

/// Sample-level K-convexity certificate. Yes means every margin on the grid
/// was certified >= 0; No carries the first violation in (dual, grid) order.
struct ConvexityReport {
    Tri verdict = Tri::Indeterminate;
    std::optional<ConvexityViolation> violation;
    long dual_count = 0;
    long grid_size = 0;
    bool certified() const { return verdict == Tri::Yes; }
};

inline ConvexityReport kconvexity_scan(const VectorPath& path, const ConeSpec& cone,
                                       std::span<const GridTriple> grid, long dual_count) {
    const std::vector<Functional> duals = dual_generators(cone, dual_count);

    // The combination vectors do not depend on the dual; precompute them.
    const long g = static_cast<long>(grid.size());
    std::vector<SeqVector> combos;
    combos.reserve(grid.size());
    {
        auto combo_of = [&](const GridTriple& t) {
            const Rational mid = t.lambda * t.r1 + (Rational(1) - t.lambda) * t.r2;
            return subtract(add(scale(t.lambda, path.eval(t.r1)),
                                scale(Rational(1) - t.lambda, path.eval(t.r2))),
                            path.eval(mid));
        };
        constexpr long kChunk = 64;
        const long chunks = (g + kChunk - 1) / kChunk;
        combos = chunked_reduce<std::vector<SeqVector>>(
            chunks, {},
            [&](long ci) {
                std::vector<SeqVector> part;
                const long lo = ci * kChunk, hi = std::min(g, lo + kChunk);
                part.reserve(static_cast<std::size_t>(hi - lo));
                for (long i = lo; i < hi; ++i)
                    part.push_back(combo_of(grid[static_cast<std::size_t>(i)]));
                return part;
            },
            [](std::vector<SeqVector>& acc, std::vector<SeqVector>&& part) {
                for (auto& v : part) acc.push_back(std::move(v));
            });
    }

    ConvexityReport report;
    report.dual_count = dual_count;
    report.grid_size = g;
    std::optional<ConvexityViolation> first_indeterminate;
    for (long d = 1; d <= dual_count; ++d) {
        for (long i = 1; i <= g; ++i) {
            Pairing p = pair(duals[static_cast<std::size_t>(d - 1)],
                             combos[static_cast<std::size_t>(i - 1)]);
            if (p.certified_nonnegative()) continue;
            ConvexityViolation v{d, i, grid[static_cast<std::size_t>(i - 1)], std::move(p)};
            if (v.margin.sign() == Pairing::Sign::Negative) {
                report.verdict = Tri::No;
                report.violation = std::move(v);
                return report;
            }
            if (!first_indeterminate) first_indeterminate = std::move(v);
        }
    }
    if (first_indeterminate) {
        report.verdict = Tri::Indeterminate;
        report.violation = std::move(first_indeterminate);
    } else {
        report.verdict = Tri::Yes;
    }
    return report;
}

/// For knots t_k = 1/k: per dual functional u*, the decreasing-slope condition
/// on the composite values a_m = u*(y_m)/m coincides with the second-difference
/// criterion restricted to u*. Both sides are computed independently; returns
/// true when they agree (including the position of the first failure).
inline bool slope_criterion_equivalence(std::span<const SeqVector> nodes,
                                   std::span<const Functional> duals, long m_count) {
    if (m_count < 3 || m_count > static_cast<long>(nodes.size()))
        throw std::invalid_argument("slope_criterion_equivalence: need 3 <= M <= node count");
    for (const auto& u : duals) {
        std::vector<Rational> knots, values;
        knots.reserve(static_cast<std::size_t>(m_count));
        values.reserve(static_cast<std::size_t>(m_count));
        for (long m = 1; m <= m_count; ++m) {
            Pairing p = pair(u, nodes[static_cast<std::size_t>(m - 1)]);
            if (!p.exact())
                throw std::logic_error("slope_criterion_equivalence: inexact pairing");
            knots.emplace_back(Rational(1, m));
            values.push_back(p.value / Rational(m));
        }
        const auto slope_fail = ScalarPolyline(std::move(knots), std::move(values)).slope_violation();

        std::optional<long> sdc_fail;
        for (long k = 1; k + 2 <= m_count; ++k) {
            const SeqVector second_diff =
                subtract(subtract(scale(Rational(2), nodes[static_cast<std::size_t>(k)]),
                                  nodes[static_cast<std::size_t>(k - 1)]),
                         nodes[static_cast<std::size_t>(k + 1)]);
            Pairing p = pair(u, second_diff);
            if (!p.exact())
                throw std::logic_error("slope_criterion_equivalence: inexact pairing");
            if (p.value.sign() > 0) { sdc_fail = k; break; }
        }
        if (slope_fail != sdc_fail) return false;
    }
    return true;
}

}  // namespace conelab
