#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/parallel.hpp"

namespace conelab {

/// Search parameters actually used by an estimate, recorded for reproduction.
struct EstimateBudget {
    long n = 0;
    bool exhaustive_signs = false;
    long sampled_patterns = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::string families;
};

// ---------------------------------------------------------------------------
// Unconditional-basis constant: lower bounds on the sign-flip inequality
// ||sum eps_n c_n x_n|| <= C_1 ||sum c_n x_n||.
// ---------------------------------------------------------------------------

struct SignWitness {
    std::vector<Rational> coeffs;  // c_1..c_m
    std::vector<int> signs;        // eps_1..eps_m, each +-1
};

/// Re-evaluates a witness ratio from scratch; the estimate invariant is that
/// this reproduces lower_bound exactly.
inline Rational sign_flip_ratio(const BasisSystem& b, const SignWitness& w) {
    if (w.coeffs.size() != w.signs.size() || w.coeffs.empty())
        throw std::invalid_argument("sign_flip_ratio: malformed witness");
    std::vector<Rational> flipped(w.coeffs.size());
    for (std::size_t i = 0; i < w.coeffs.size(); ++i)
        flipped[i] = Rational(w.signs[i]) * w.coeffs[i];
    const Rational den = detail::combine(b, w.coeffs).norm().lower;
    if (den.is_zero()) throw std::invalid_argument("sign_flip_ratio: zero denominator");
    return detail::combine(b, flipped).norm().lower / den;
}

struct UnconditionalityEstimate {
    Rational lower_bound;
    SignWitness witness;
    EstimateBudget budget;
};

struct UncondStrategy {
    long max_exhaustive = 20;    // exhaustive sign enumeration up to this many terms
    long samples_beyond = 4096;  // sampled patterns per coefficient family past it
    std::uint64_t seed = 1;
    std::vector<std::vector<Rational>> extra_families;
};

namespace detail {

inline std::vector<std::vector<Rational>> coefficient_families(long m,
                                                               const UncondStrategy& s) {
    std::vector<std::vector<Rational>> fams;
    std::vector<Rational> ones(static_cast<std::size_t>(m), Rational(1));
    std::vector<Rational> alternating(static_cast<std::size_t>(m));
    std::vector<Rational> harmonic(static_cast<std::size_t>(m));
    for (long i = 1; i <= m; ++i) {
        alternating[static_cast<std::size_t>(i - 1)] = Rational(i % 2 == 0 ? 1 : -1);
        harmonic[static_cast<std::size_t>(i - 1)] = Rational(1, i);
    }
    fams.push_back(std::move(ones));
    fams.push_back(std::move(alternating));
    fams.push_back(std::move(harmonic));
    for (const auto& f : s.extra_families)
        if (static_cast<long>(f.size()) == m) fams.push_back(f);
    return fams;
}

struct BestSigns {
    Rational ratio{0};
    SignWitness witness;
};

}  // namespace detail

/// Max over tried (c, eps) of ||sum eps c x|| / ||sum c x||, exact prefix
/// norms. Coefficient families are tried at every length m <= n, so the bound
/// is monotone non-decreasing in n for a fixed strategy. Sign patterns are
/// exhaustive up to max_exhaustive terms, deterministically sampled beyond.
inline UnconditionalityEstimate unconditionality_lower_bound(const BasisSystem& b, long n,
                                                             const UncondStrategy& strategy = {}) {
    if (n < 1 || n > b.prefix_len())
        throw std::out_of_range("unconditionality_lower_bound: n outside basis truncation");

    detail::BestSigns best;
    long sampled = 0;
    bool all_exhaustive = true;
    const long max_exhaustive = std::min<long>(strategy.max_exhaustive, 30);

    for (long m = 1; m <= n; ++m) {
        const bool exhaustive = m <= max_exhaustive;
        if (!exhaustive) all_exhaustive = false;
        const std::uint64_t patterns =
            exhaustive ? (std::uint64_t{1} << m) : static_cast<std::uint64_t>(strategy.samples_beyond);
        if (!exhaustive) sampled += strategy.samples_beyond;

        for (const auto& coeffs : detail::coefficient_families(m, strategy)) {
            const Rational den = detail::combine(b, coeffs).norm().lower;
            if (den.is_zero()) continue;  // degenerate configuration, skipped

            constexpr std::uint64_t kChunk = 1024;
            const long chunks = static_cast<long>((patterns + kChunk - 1) / kChunk);
            auto run_chunk = [&](long ci) {
                detail::BestSigns local;
                std::mt19937_64 rng(strategy.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(ci + 1)));
                const std::uint64_t lo = static_cast<std::uint64_t>(ci) * kChunk;
                const std::uint64_t hi = std::min<std::uint64_t>(patterns, lo + kChunk);
                std::vector<Rational> flipped(coeffs.size());
                std::vector<int> signs(coeffs.size());
                for (std::uint64_t p = lo; p < hi; ++p) {
                    for (long i = 0; i < m; ++i) {
                        const bool flip = exhaustive ? ((p >> i) & 1) != 0 : (rng() & 1) != 0;
                        signs[static_cast<std::size_t>(i)] = flip ? -1 : 1;
                        flipped[static_cast<std::size_t>(i)] =
                            Rational(signs[static_cast<std::size_t>(i)]) *
                            coeffs[static_cast<std::size_t>(i)];
                    }
                    Rational ratio = detail::combine(b, flipped).norm().lower / den;
                    if (ratio > local.ratio) local = {std::move(ratio), {coeffs, signs}};
                }
                return local;
            };
            auto merged = chunked_reduce<detail::BestSigns>(
                chunks, detail::BestSigns{},
                run_chunk,
                [](detail::BestSigns& acc, detail::BestSigns&& c) {
                    if (c.ratio > acc.ratio) acc = std::move(c);
                });
            if (merged.ratio > best.ratio) best = std::move(merged);
        }
    }

    EstimateBudget budget;
    budget.n = n;
    budget.exhaustive_signs = all_exhaustive;
    budget.sampled_patterns = sampled;
    budget.seed = strategy.seed;
    budget.families = "ones,alternating,harmonic at every length <= n";
    return {best.ratio, std::move(best.witness), std::move(budget)};
}

// ---------------------------------------------------------------------------
// Normality constant: lower bounds on sup ||x|| / ||y|| over 0 <=_K x <=_K y.
// ---------------------------------------------------------------------------

struct NormalityWitness {
    std::vector<Rational> x_coeffs;  // x = sum x_coeffs[i] * basis element i
    std::vector<Rational> y_coeffs;
};

inline Rational normality_ratio(const ConeSpec& c, const NormalityWitness& w) {
    const Rational den = detail::combine(c.basis, w.y_coeffs).norm().lower;
    if (den.is_zero()) throw std::invalid_argument("normality_ratio: zero denominator");
    return detail::combine(c.basis, w.x_coeffs).norm().lower / den;
}

struct NormalityEstimate {
    Rational lower_bound;
    NormalityWitness witness;
    EstimateBudget budget;
};

struct NormalityBudget {
    long trials = 10000;
    std::uint64_t seed = 1;
};

namespace detail {

/// Hand-constructed witness families per built-in cone. For the difference
/// basis: x = j * x_j against a triangular ramp y peaking at index j, giving
/// ratio exactly j. Blind grid search misses these.
inline std::vector<NormalityWitness> registered_witness_families(const ConeSpec& c, long n) {
    std::vector<NormalityWitness> fams;
    if (c.basis.name() == "difference") {
        const Rational s(c.sign);
        for (long j = 2; 2 * j <= n; ++j) {
            NormalityWitness w;
            w.x_coeffs.assign(static_cast<std::size_t>(n), Rational(0));
            w.y_coeffs.assign(static_cast<std::size_t>(n), Rational(0));
            w.x_coeffs[static_cast<std::size_t>(j - 1)] = s * Rational(j);
            for (long i = 1; i <= 2 * j; ++i)
                w.y_coeffs[static_cast<std::size_t>(i - 1)] =
                    s * Rational(i <= j ? i : 2 * j - i);
            fams.push_back(std::move(w));
        }
    }
    return fams;
}

struct BestPair {
    Rational ratio{0};
    NormalityWitness witness;
};

}  // namespace detail

namespace detail {

/// One pass over baseline, registered families, and seeded grid samples.
/// When `transform` is set, every sampled pair is additionally evaluated
/// after the transform on the SAME sample stream; the pushed maximum is then
/// directly comparable with the source maximum (isomorphism transfer bound).
struct NormalitySearchOut {
    BestPair source;
    BestPair pushed;  // meaningful only when a transform was supplied
};

inline NormalitySearchOut normality_search(
    const ConeSpec& c, long n, const NormalityBudget& budget,
    const std::function<SeqVector(const SeqVector&)>& transform) {
    if (n < 1 || n > c.basis.prefix_len())
        throw std::out_of_range("normality search: n outside basis truncation");

    auto ratio_of = [](const SeqVector& x, const SeqVector& y) -> std::optional<Rational> {
        const Rational den = y.norm().lower;
        if (den.is_zero()) return std::nullopt;
        return x.norm().lower / den;
    };

    NormalitySearchOut best;
    auto consider = [&](const NormalityWitness& w) {
        const SeqVector x = combine(c.basis, w.x_coeffs);
        const SeqVector y = combine(c.basis, w.y_coeffs);
        if (auto r = ratio_of(x, y); r && *r > best.source.ratio) best.source = {*r, w};
        if (transform) {
            if (auto r = ratio_of(transform(x), transform(y)); r && *r > best.pushed.ratio)
                best.pushed = {*r, w};
        }
    };

    {
        NormalityWitness baseline;
        baseline.x_coeffs.assign(static_cast<std::size_t>(n), Rational(0));
        baseline.x_coeffs[0] = Rational(c.sign);
        baseline.y_coeffs = baseline.x_coeffs;
        consider(baseline);
    }
    for (const auto& w : registered_witness_families(c, n)) consider(w);

    // Grid values {0..4}/{1,2} for both x coefficients and the gap y - x.
    static const Rational kGrid[] = {Rational(0),     Rational(1, 2), Rational(1),
                                     Rational(3, 2),  Rational(2),    Rational(5, 2),
                                     Rational(3),     Rational(7, 2), Rational(4)};
    constexpr long kChunk = 2048;
    const long chunks = (budget.trials + kChunk - 1) / kChunk;
    auto run_chunk = [&](long ci) {
        NormalitySearchOut local;
        std::mt19937_64 rng(budget.seed ^ (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(ci + 1)));
        const long lo = ci * kChunk;
        const long hi = std::min(budget.trials, lo + kChunk);
        const Rational s(c.sign);
        NormalityWitness w;
        w.x_coeffs.assign(static_cast<std::size_t>(n), Rational(0));
        w.y_coeffs.assign(static_cast<std::size_t>(n), Rational(0));
        for (long t = lo; t < hi; ++t) {
            for (long i = 0; i < n; ++i) {
                const Rational& alpha = kGrid[rng() % 9];
                const Rational& gap = kGrid[rng() % 9];
                w.x_coeffs[static_cast<std::size_t>(i)] = s * alpha;
                w.y_coeffs[static_cast<std::size_t>(i)] = s * (alpha + gap);
            }
            const SeqVector x = combine(c.basis, w.x_coeffs);
            const SeqVector y = combine(c.basis, w.y_coeffs);
            if (auto r = ratio_of(x, y); r && *r > local.source.ratio) local.source = {*r, w};
            if (transform) {
                if (auto r = ratio_of(transform(x), transform(y)); r && *r > local.pushed.ratio)
                    local.pushed = {*r, w};
            }
        }
        return local;
    };
    auto merged = chunked_reduce<NormalitySearchOut>(
        chunks, NormalitySearchOut{},
        run_chunk,
        [](NormalitySearchOut& acc, NormalitySearchOut&& chunk) {
            if (chunk.source.ratio > acc.source.ratio) acc.source = std::move(chunk.source);
            if (chunk.pushed.ratio > acc.pushed.ratio) acc.pushed = std::move(chunk.pushed);
        });
    if (merged.source.ratio > best.source.ratio) best.source = std::move(merged.source);
    if (merged.pushed.ratio > best.pushed.ratio) best.pushed = std::move(merged.pushed);
    return best;
}

}  // namespace detail

/// Search over exact-grid coefficient pairs with 0 <=_K x <=_K y plus the
/// registered witness families. Deterministic for a fixed budget (chunked
/// sampling, merge in chunk order). Returns the 1-witness x = y when nothing
/// better is found.
inline NormalityEstimate normality_lower_bound(const ConeSpec& c, long n,
                                               const NormalityBudget& budget = {}) {
    detail::BestPair best = detail::normality_search(c, n, budget, nullptr).source;
    EstimateBudget b;
    b.n = n;
    b.trials = budget.trials;
    b.seed = budget.seed;
    b.families = c.basis.name() == "difference" ? "triangular ramps + grid sampling"
                                                : "grid sampling";
    return {best.ratio, std::move(best.witness), std::move(b)};
}

/// ||t^n|| / ||1|| in C^1[0,1] with the norm ||x||_inf + ||x'||_inf: the
/// closed-form ratio (n+1)/1 exhibiting the non-normal positive cone there.
inline Rational c1_example_ratio(long n) {
    if (n < 1) throw std::out_of_range("c1_example_ratio: n must be >= 1");
    return Rational(n + 1);
}

}  // namespace conelab
