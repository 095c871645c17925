#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/constants.hpp"
#include "conelab/path.hpp"
#include "conelab/seqvector.hpp"

namespace conelab {

/// A concrete isomorphism of c0 at truncation, with declared (certified)
/// operator norm bounds: coordinatewise diagonal maps, and the triangular
/// coordinate change onto the summing basis. Application is exact on
/// prefixes; tails survive only as scaled bound descriptors.
class LinearIso {
public:
    enum class Kind { Diagonal, BasisChange };

    static LinearIso diagonal(std::string name, std::function<Rational(long)> entries,
                              Rational lower, Rational upper, long sample_check = 128) {
        if (lower.sign() <= 0)
            throw std::invalid_argument("diagonal iso: lower bound must be > 0 (bounded inverse)");
        if (upper < lower) throw std::invalid_argument("diagonal iso: U < L");
        for (long j = 1; j <= sample_check; ++j) {
            const Rational a = entries(j).abs();
            if (a < lower || a > upper)
                throw std::invalid_argument("diagonal iso: sampled entry outside [L, U]");
        }
        LinearIso iso;
        iso.kind_ = Kind::Diagonal;
        iso.name_ = std::move(name);
        iso.entries_ = std::move(entries);
        iso.norm_bound_ = std::move(upper);
        iso.inverse_norm_bound_ = Rational(1) / lower;
        return iso;
    }

    static LinearIso identity() {
        return diagonal("identity", [](long) { return Rational(1); }, Rational(1), Rational(1));
    }

    /// d_n = 1 + 1/n: bounds L = 1, U = 2.
    static LinearIso harmonic_shift() {
        return diagonal("diagonal(1+1/n)",
                        [](long n) { return Rational(1) + Rational(1, n); }, Rational(1),
                        Rational(2));
    }

    /// Coordinate change from canonical to summing-basis coefficients:
    /// forward is the tail-sum transform (e_n maps to (1,...,1,0,...)),
    /// inverse the difference transform. The forward norm on vectors of
    /// length <= truncation is certified by the triangular all-ones matrix:
    /// norm_bound = truncation, inverse_norm_bound = 2.
    static LinearIso summing_change(long truncation) {
        if (truncation < 1) throw std::invalid_argument("summing_change: bad truncation");
        LinearIso iso;
        iso.kind_ = Kind::BasisChange;
        iso.name_ = "summing-change";
        iso.truncation_ = truncation;
        iso.norm_bound_ = Rational(truncation);
        iso.inverse_norm_bound_ = Rational(2);
        return iso;
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const Rational& norm_bound() const { return norm_bound_; }
    const Rational& inverse_norm_bound() const { return inverse_norm_bound_; }

    SeqVector forward(const SeqVector& v) const { return apply(v, false); }
    SeqVector inverse(const SeqVector& v) const { return apply(v, true); }

    /// u o i^{-1} as an explicit functional (finite-support u only).
    Functional transport_dual(const Functional& u) const {
        const SeqVector& uv = u.vector();
        if (!uv.tail().is_zero())
            throw std::invalid_argument("transport_dual: finite-support functionals only");
        if (kind_ == Kind::Diagonal) {
            std::vector<Rational> c(uv.prefix());
            for (long j = 1; j <= uv.size(); ++j) {
                const Rational d = entries_(j);
                if (d.is_zero()) throw std::domain_error("diagonal iso: zero entry");
                c[static_cast<std::size_t>(j - 1)] /= d;
            }
            return Functional(SeqVector::make(Space::L1, std::move(c)));
        }
        // (u o S^{-1})_j = u_j - u_{j-1}: pairs with tail sums by telescoping.
        std::vector<Rational> c(static_cast<std::size_t>(uv.size() + 1));
        for (long j = 1; j <= uv.size() + 1; ++j) {
            Rational cur = j <= uv.size() ? uv.coord(j) : Rational(0);
            Rational prev = j >= 2 ? uv.coord(j - 1) : Rational(0);
            c[static_cast<std::size_t>(j - 1)] = cur - prev;
        }
        return Functional(SeqVector::make(Space::L1, std::move(c)));
    }

private:
    SeqVector apply(const SeqVector& v, bool inverted) const {
        if (kind_ == Kind::Diagonal) {
            std::vector<Rational> c(v.prefix());
            for (long j = 1; j <= v.size(); ++j) {
                const Rational d = entries_(j);
                if (d.is_zero()) throw std::domain_error("diagonal iso: zero entry");
                auto& x = c[static_cast<std::size_t>(j - 1)];
                x = inverted ? x / d : x * d;
            }
            TailDescriptor tail = TailDescriptor::bound_scaled(
                inverted ? inverse_norm_bound_ : norm_bound_, v.tail());
            return SeqVector::make(v.space(), std::move(c), std::move(tail));
        }
        if (!v.tail().is_zero())
            throw std::invalid_argument(name_ + ": finite-support vectors only; truncate first");
        if (v.size() > truncation_)
            throw std::invalid_argument(name_ + ": vector longer than certified truncation");
        const long n = v.size();
        std::vector<Rational> c(static_cast<std::size_t>(n));
        if (!inverted) {
            Rational acc(0);  // tail sums
            for (long j = n; j >= 1; --j) {
                acc += v.coord(j);
                c[static_cast<std::size_t>(j - 1)] = acc;
            }
        } else {
            for (long j = 1; j <= n; ++j) {
                Rational next = j + 1 <= n ? v.coord(j + 1) : Rational(0);
                c[static_cast<std::size_t>(j - 1)] = v.coord(j) - next;
            }
        }
        return SeqVector::make(v.space(), std::move(c));
    }

    Kind kind_ = Kind::Diagonal;
    std::string name_;
    std::function<Rational(long)> entries_;  // Diagonal
    long truncation_ = 0;                    // BasisChange
    Rational norm_bound_{1};
    Rational inverse_norm_bound_{1};
};

inline LinearIso iso_by_name(std::string_view name, long truncation) {
    if (name == "identity") return LinearIso::identity();
    if (name == "diagonal") return LinearIso::harmonic_shift();
    if (name == "summing-change") return LinearIso::summing_change(truncation);
    throw std::invalid_argument("unknown iso name: " + std::string(name));
}

/// i(K) for a basis cone K: membership of w is membership of i^{-1}(w) in K.
struct PushforwardCone {
    ConeSpec source;
    LinearIso iso;
};

inline Tri pushforward_membership(const PushforwardCone& pc, const SeqVector& w, long n) {
    return cone_contains(pc.source, pc.iso.inverse(w), n);
}

/// Linear extension G(x) = i(p) - i(q) of a map defined on a generating cone,
/// where x = p - q is the coefficient-sign decomposition. The decomposition
/// oracle is explicit (cone + truncation); no extension theorem is assumed.
class ConicalExtension {
public:
    ConicalExtension(ConeSpec cone, long n, std::function<SeqVector(const SeqVector&)> on_cone)
        : cone_(std::move(cone)), n_(n), on_cone_(std::move(on_cone)) {}

    SeqVector operator()(const SeqVector& x) const {
        auto [p, q] = generating_decomposition(cone_, x, n_);
        return subtract(on_cone_(p), on_cone_(q));
    }

    /// Evaluate on an explicitly supplied decomposition x = p - q (both in the
    /// cone); used to check well-definedness across decompositions.
    SeqVector from_decomposition(const SeqVector& p, const SeqVector& q) const {
        return subtract(on_cone_(p), on_cone_(q));
    }

private:
    ConeSpec cone_;
    long n_;
    std::function<SeqVector(const SeqVector&)> on_cone_;
};

/// Normality transfer: the pushed lower bound over the same sample stream is
/// certified to stay within norm_bound * inverse_norm_bound * (source bound).
struct PushforwardNormalityResult {
    NormalityEstimate source;
    Rational pushed_lower_bound;
    NormalityWitness pushed_witness;  // source-cone coefficients of the pair
    Rational transfer_bound;
    bool within_bound = false;
};

inline PushforwardNormalityResult pushforward_normality_check(const PushforwardCone& pc, long n,
                                                              const NormalityBudget& budget = {}) {
    auto transform = [&](const SeqVector& v) { return pc.iso.forward(v); };
    auto out = detail::normality_search(pc.source, n, budget, transform);

    PushforwardNormalityResult result;
    EstimateBudget b;
    b.n = n;
    b.trials = budget.trials;
    b.seed = budget.seed;
    b.families = "shared sample stream (source and pushforward)";
    result.source = {out.source.ratio, out.source.witness, std::move(b)};
    result.pushed_lower_bound = out.pushed.ratio;
    result.pushed_witness = std::move(out.pushed.witness);
    result.transfer_bound =
        pc.iso.norm_bound() * pc.iso.inverse_norm_bound() * out.source.ratio;
    result.within_bound = result.pushed_lower_bound <= result.transfer_bound;
    return result;
}

/// Margin matrix of the convexity scan: one pairing per (dual, grid triple).
inline std::vector<std::vector<Pairing>> kconvexity_margins(const VectorPath& path,
                                                            std::span<const Functional> duals,
                                                            std::span<const GridTriple> grid) {
    std::vector<SeqVector> combos;
    combos.reserve(grid.size());
    for (const auto& t : grid) {
        const Rational mid = t.lambda * t.r1 + (Rational(1) - t.lambda) * t.r2;
        combos.push_back(subtract(add(scale(t.lambda, path.eval(t.r1)),
                                      scale(Rational(1) - t.lambda, path.eval(t.r2))),
                                  path.eval(mid)));
    }
    std::vector<std::vector<Pairing>> margins;
    margins.reserve(duals.size());
    for (const auto& u : duals) {
        std::vector<Pairing> row;
        row.reserve(combos.size());
        for (const auto& cb : combos) row.push_back(pair(u, cb));
        margins.push_back(std::move(row));
    }
    return margins;
}

struct TransferReport {
    ConvexityReport source;
    ConvexityReport transported;
    bool margins_match = false;   // transported margins equal source margins exactly
    bool pass_preserved = false;  // transported certified whenever source certified
};

/// Convexity transfer through an isomorphism: the path nodes are mapped
/// forward (basis changes require truncation first), the cone's dual
/// generators are transported as u o i^{-1}, and the same grid is re-scanned.
inline TransferReport transfer_convexity(const LinearIso& iso, const VectorPath& path,
                                         const ConeSpec& cone, std::span<const GridTriple> grid,
                                         long dual_count) {
    const std::vector<Functional> duals = dual_generators(cone, dual_count);

    std::vector<SeqVector> mapped_nodes;
    std::vector<SeqVector> source_nodes;
    mapped_nodes.reserve(static_cast<std::size_t>(path.size()));
    source_nodes.reserve(static_cast<std::size_t>(path.size()));
    const bool truncate = iso.kind() == LinearIso::Kind::BasisChange;
    for (long k = 1; k <= path.size(); ++k) {
        const SeqVector node = truncate ? path.node(k).truncated() : path.node(k);
        source_nodes.push_back(node);
        mapped_nodes.push_back(iso.forward(node));
    }
    const std::vector<Rational> knots(path.knots().begin(), path.knots().end());
    const VectorPath source_path(knots, std::move(source_nodes));
    const VectorPath mapped_path(knots, std::move(mapped_nodes));

    std::vector<Functional> transported;
    transported.reserve(duals.size());
    for (const auto& u : duals) transported.push_back(iso.transport_dual(u));

    TransferReport report;
    report.source = kconvexity_scan(path, cone, grid, dual_count);

    const auto src_margins = kconvexity_margins(source_path, duals, grid);
    const auto dst_margins = kconvexity_margins(mapped_path, transported, grid);
    report.margins_match = true;
    Tri verdict = Tri::Yes;
    std::optional<ConvexityViolation> violation;
    std::optional<ConvexityViolation> indeterminate;
    for (std::size_t d = 0; d < dst_margins.size(); ++d)
        for (std::size_t g = 0; g < dst_margins[d].size(); ++g) {
            const Pairing& m = dst_margins[d][g];
            if (m.value != src_margins[d][g].value) report.margins_match = false;
            if (m.certified_nonnegative()) continue;
            ConvexityViolation v{static_cast<long>(d + 1), static_cast<long>(g + 1), grid[g], m};
            if (m.sign() == Pairing::Sign::Negative) {
                if (!violation) violation = std::move(v);
            } else if (!indeterminate) {
                indeterminate = std::move(v);
            }
        }
    if (violation) {
        verdict = Tri::No;
    } else if (indeterminate) {
        verdict = Tri::Indeterminate;
        violation = indeterminate;
    }
    report.transported.verdict = verdict;
    report.transported.violation = std::move(violation);
    report.transported.dual_count = dual_count;
    report.transported.grid_size = static_cast<long>(grid.size());
    report.pass_preserved = !(report.source.certified() && !report.transported.certified());
    return report;
}

}  // namespace conelab
