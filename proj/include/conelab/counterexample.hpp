#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelab/basis.hpp"
#include "conelab/cone.hpp"
#include "conelab/path.hpp"
#include "conelab/seqvector.hpp"

namespace conelab {

struct LabeledFunctional {
    std::string label;
    Functional functional;
};

/// Inputs of the main construction: node count, truncation, the basis {b_i}
/// targeted by the second-difference identity, the two seed vectors, and the
/// functionals probed by the weak-Cauchy report.
struct CounterexampleConfig {
    long k_max;
    long truncation;  // N
    BasisSystem basis;
    SeqVector y1, y2;
    std::vector<LabeledFunctional> dual_test_set;
    std::vector<Rational> lambdas{Rational(1, 4), Rational(1, 2), Rational(3, 4)};

    static CounterexampleConfig defaults(long k_max = 30, long n = kDefaultTruncation) {
        std::vector<Rational> harm(static_cast<std::size_t>(n));
        for (long j = 1; j <= n; ++j) harm[static_cast<std::size_t>(j - 1)] = Rational(1, j);
        SeqVector y2 = SeqVector::make(Space::C0, std::move(harm),
                                       TailDescriptor::harmonic(Rational(1)));

        std::vector<LabeledFunctional> duals;
        for (long j = 1; j <= 10; ++j)
            duals.push_back({"e" + std::to_string(j) + "*", Functional::unit(j)});
        std::vector<Rational> geo(static_cast<std::size_t>(n));
        for (long j = 1; j <= n; ++j)
            geo[static_cast<std::size_t>(j - 1)] =
                Rational::pow(Rational(1, 2), static_cast<std::uint64_t>(j));
        duals.push_back({"geometric(1/2)",
                         Functional(SeqVector::make(
                             Space::L1, std::move(geo),
                             TailDescriptor::geometric(Rational(1), Rational(1, 2))))});

        CounterexampleConfig cfg{k_max, n, scaled_basis(n), SeqVector::zero(Space::C0, n),
                                 std::move(y2), std::move(duals)};
        cfg.validate();
        return cfg;
    }

    void validate() const {
        if (k_max < 3) throw std::invalid_argument("config: k_max must be >= 3");
        if (truncation < k_max + 2)
            throw std::invalid_argument("config: need N >= k_max + 2");
        if (basis.prefix_len() < k_max)
            throw std::invalid_argument("config: basis truncation below k_max");
        if (y1.space() != Space::C0 || y2.space() != Space::C0)
            throw std::invalid_argument("config: seed vectors must be c0-tagged");
    }
};

/// Closed form y_k = (k-1) y_2 - (k-2) y_1 - sum_{i=1}^{k-2} (k-i-1) b_i.
/// With the default seeds and the scaled basis this reproduces the pattern
/// (1, ..., 1, (k-1)/k, (k-1)/(k+1), ...).
inline SeqVector generate_y(long k, const CounterexampleConfig& cfg) {
    if (k < 1 || k > cfg.k_max)
        throw std::out_of_range("generate_y: k outside 1..k_max");
    SeqVector acc = subtract(scale(Rational(k - 1), cfg.y2), scale(Rational(k - 2), cfg.y1));
    for (long i = 1; i <= k - 2; ++i)
        acc = subtract(acc, scale(Rational(k - i - 1), cfg.basis.element(i)));
    return acc;
}

inline std::vector<SeqVector> generate_nodes(const CounterexampleConfig& cfg) {
    std::vector<SeqVector> nodes;
    nodes.reserve(static_cast<std::size_t>(cfg.k_max));
    for (long k = 1; k <= cfg.k_max; ++k) nodes.push_back(generate_y(k, cfg));
    return nodes;
}

struct RecurrenceFailure {
    long k = 0;
    SeqVector residual;  // 2 y_{k+1} - y_k - y_{k+2} - b_k
};

struct RecurrenceReport {
    bool pass = false;
    std::vector<RecurrenceFailure> failures;
};

/// Verifies 2 y_{k+1} - y_k - y_{k+2} = b_k exactly on the shared prefix for
/// every k up to nodes.size() - 2, on an explicit node list.
inline RecurrenceReport recurrence_check_nodes(std::span<const SeqVector> nodes,
                                               const BasisSystem& basis) {
    if (nodes.size() < 3)
        throw std::invalid_argument("recurrence_check: need at least 3 nodes");
    RecurrenceReport report;
    report.pass = true;
    for (long k = 1; k + 2 <= static_cast<long>(nodes.size()); ++k) {
        SeqVector residual =
            subtract(subtract(subtract(scale(Rational(2), nodes[static_cast<std::size_t>(k)]),
                                       nodes[static_cast<std::size_t>(k - 1)]),
                              nodes[static_cast<std::size_t>(k + 1)]),
                     basis.element(k));
        bool zero = true;
        for (const auto& c : residual.prefix())
            if (!c.is_zero()) { zero = false; break; }
        if (!zero || !residual.tail().is_zero()) {
            report.pass = false;
            report.failures.push_back({k, std::move(residual)});
        }
    }
    return report;
}

inline RecurrenceReport recurrence_check(const CounterexampleConfig& cfg) {
    return recurrence_check_nodes(generate_nodes(cfg), cfg.basis);
}

struct WeakCauchyRow {
    long k = 0;
    Pairing value;      // <f, y_{k+1} - y_k> with certified error
    Rational upper;     // |value| + error
    Rational shifted_expansion;  // the index-shifted expansion, prefix-truncated
    Rational discrepancy;        // value - shifted_expansion
};

/// Exact pairings of f against consecutive differences, with certified
/// intervals. Each row also evaluates the index-shifted expansion
/// f_{k+1} 2/(k+1) + sum_{j>=k+2} f_j / j, which is sometimes quoted for this
/// pairing but does not match the exact coordinates of y_{k+1} - y_k (those
/// give f_k/k + sum_{j>=k+1} f_j/j); the difference is recorded per row
/// rather than silently corrected. Both expressions tend to zero, so the
/// conclusion drawn from the rows is unaffected.
inline std::vector<WeakCauchyRow> weak_cauchy_report(const Functional& f,
                                                     const CounterexampleConfig& cfg) {
    std::vector<SeqVector> nodes = generate_nodes(cfg);
    std::vector<WeakCauchyRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.k_max - 1));
    const SeqVector& fv = f.vector();
    for (long k = 1; k + 1 <= cfg.k_max; ++k) {
        WeakCauchyRow row;
        row.k = k;
        row.value = pair(f, subtract(nodes[static_cast<std::size_t>(k)],
                                     nodes[static_cast<std::size_t>(k - 1)]));
        row.upper = row.value.upper_abs();
        Rational shifted(0);
        if (k + 1 <= fv.size())
            shifted += fv.coord(k + 1) * Rational(2) / Rational(k + 1);
        for (long j = k + 2; j <= fv.size(); ++j)
            shifted += fv.coord(j) / Rational(j);
        row.shifted_expansion = shifted;
        row.discrepancy = row.value.value - shifted;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Upper bounds non-increasing across the listed rows.
inline bool weak_cauchy_monotone(std::span<const WeakCauchyRow> rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].upper > rows[i - 1].upper) return false;
    return true;
}

struct DivergenceEntry {
    long k = 0, m = 0;
    Rational gap_lower;  // exact prefix sup norm of y_m - y_k
    Rational bound;      // 1 - (k-1)/(m-1)
    Rational coord_gap;  // |(y_m - y_k)_{m-1}|, the attaining coordinate
};

struct CoordinateTrace {
    long j = 0;
    std::vector<Rational> values;  // (y_k)_j for k = 1..k_max
};

/// Two-part witness that {y_k} has no weak limit in c0: pairwise norm gaps
/// bounded below, and coordinatewise convergence to 1 (so any weak limit
/// would be (1,1,...), which is not in c0).
struct NonconvergenceReport {
    std::vector<DivergenceEntry> gaps;
    std::vector<CoordinateTrace> traces;
    Rational max_gap;
};

inline NonconvergenceReport nonconvergence_report(const CounterexampleConfig& cfg,
                                                  long trace_coords = 10) {
    if (cfg.k_max < 4)
        throw std::invalid_argument("nonconvergence_report: need k_max >= 4");
    std::vector<SeqVector> nodes = generate_nodes(cfg);
    NonconvergenceReport report;
    report.max_gap = Rational(0);
    for (long k = 1; k <= cfg.k_max; ++k)
        for (long m = k + 1; m <= cfg.k_max; ++m) {
            const SeqVector diff = subtract(nodes[static_cast<std::size_t>(m - 1)],
                                            nodes[static_cast<std::size_t>(k - 1)]);
            DivergenceEntry e;
            e.k = k;
            e.m = m;
            e.gap_lower = diff.norm().lower;
            e.bound = Rational(1) - Rational(k - 1) / Rational(m - 1);
            e.coord_gap = diff.coord(m - 1).abs();
            if (e.gap_lower > report.max_gap) report.max_gap = e.gap_lower;
            report.gaps.push_back(std::move(e));
        }
    for (long j = 1; j <= std::min(trace_coords, cfg.truncation); ++j) {
        CoordinateTrace t;
        t.j = j;
        for (long k = 1; k <= cfg.k_max; ++k)
            t.values.push_back(nodes[static_cast<std::size_t>(k - 1)].coord(j));
        report.traces.push_back(std::move(t));
    }
    return report;
}

inline VectorPath build_main_path(const CounterexampleConfig& cfg) {
    return VectorPath::harmonic_knots(generate_nodes(cfg));
}

/// F(t_k h) / t_k for every k; equals generate_y(k) exactly (node identity).
inline std::vector<std::pair<long, SeqVector>> difference_quotients(
    const CounterexampleConfig& cfg) {
    VectorPath path = build_main_path(cfg);
    std::vector<std::pair<long, SeqVector>> out;
    out.reserve(static_cast<std::size_t>(cfg.k_max));
    for (long k = 1; k <= cfg.k_max; ++k)
        out.emplace_back(k, scale(Rational(k), path.eval(path.knot(k))));
    return out;
}

struct WeakCauchySection {
    std::string label;
    std::vector<WeakCauchyRow> rows;
    bool monotone = false;
    Rational final_upper;
};

struct PipelineReport {
    bool node_identity = false;
    bool recurrence = false;
    SecondDiffResult second_diff;
    ConvexityReport convexity;
    std::vector<WeakCauchySection> weak_cauchy;
    NonconvergenceReport nonconvergence;
    std::string verdict;  // counterexample-certified | not-a-counterexample | inconclusive
};

/// Full desk-scale pipeline: recurrence and node identities, convexity of the
/// path against -K_{b_k} (second-difference criterion plus the grid scan),
/// weak-Cauchy intervals over the dual test set, and the divergence table.
/// Certified iff convexity passes, some gap exceeds 1/2, and every
/// weak-Cauchy upper-bound sequence is non-increasing.
inline PipelineReport run_pipeline(const CounterexampleConfig& cfg) {
    cfg.validate();
    PipelineReport report;
    std::vector<SeqVector> nodes = generate_nodes(cfg);

    report.recurrence = recurrence_check_nodes(nodes, cfg.basis).pass;

    VectorPath path = VectorPath::harmonic_knots(nodes);
    report.node_identity = true;
    for (long k = 1; k <= cfg.k_max; ++k) {
        if (!(scale(Rational(k), path.eval(path.knot(k))) == nodes[static_cast<std::size_t>(k - 1)])) {
            report.node_identity = false;
            break;
        }
    }

    const ConeSpec cone(cfg.basis, -1);
    const std::vector<Functional> duals = dual_generators(cone, cfg.k_max);
    report.second_diff = second_difference_criterion(nodes, duals);
    const std::vector<GridTriple> grid = knot_pair_grid(path.knots(), cfg.lambdas);
    report.convexity = kconvexity_scan(path, cone, grid, cfg.k_max);

    for (const auto& lf : cfg.dual_test_set) {
        WeakCauchySection section;
        section.label = lf.label;
        section.rows = weak_cauchy_report(lf.functional, cfg);
        section.monotone = weak_cauchy_monotone(section.rows);
        section.final_upper = section.rows.empty() ? Rational(0) : section.rows.back().upper;
        report.weak_cauchy.push_back(std::move(section));
    }

    report.nonconvergence = nonconvergence_report(cfg);

    const bool indeterminate = report.second_diff.verdict == Tri::Indeterminate ||
                               report.convexity.verdict == Tri::Indeterminate;
    bool monotone_all = true;
    for (const auto& s : report.weak_cauchy) monotone_all = monotone_all && s.monotone;
    const bool convex = report.second_diff.verdict == Tri::Yes && report.convexity.verdict == Tri::Yes;
    const bool diverges = report.nonconvergence.max_gap > Rational(1, 2);

    if (indeterminate)
        report.verdict = "inconclusive";
    else if (convex && diverges && monotone_all)
        report.verdict = "counterexample-certified";
    else
        report.verdict = "not-a-counterexample";
    return report;
}

}  // namespace conelab
