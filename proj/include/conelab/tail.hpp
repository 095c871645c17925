#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

/// Describes the coordinates of a sequence vector beyond its stored prefix.
///
/// A descriptor is either exactly zero, a closed-form rule (harmonic c/j,
/// geometric c*r^j), or a combination of descriptors produced by vector
/// arithmetic. Every descriptor certifies
///   sup_bound(m)    >= |coord(j)|            for all described j > m,
///   abssum_bound(m) >= sum_{j>m} |coord(j)|  (absent when not certified finite),
/// with both bounds non-increasing in m and sup_bound(m) -> 0.
///
/// Descriptors are immutable and cheap to copy (shared nodes).
class TailDescriptor {
public:
    enum class Kind { Zero, Harmonic, Geometric, Sum, Prefixed, BoundScaled };
    enum class SignCert { Zero, NonNegative, NonPositive, Unknown };

    TailDescriptor() : TailDescriptor(zero()) {}

    static TailDescriptor zero() {
        static const std::shared_ptr<const Node> shared = std::make_shared<Node>(Node{Kind::Zero});
        return TailDescriptor(shared);
    }

    /// coord(j) = scale / j.
    static TailDescriptor harmonic(Rational scale) {
        if (scale.is_zero()) return zero();
        Node n{Kind::Harmonic};
        n.scale = std::move(scale);
        return wrap(std::move(n));
    }

    /// coord(j) = scale * ratio^j, with 0 < ratio < 1.
    static TailDescriptor geometric(Rational scale, Rational ratio) {
        if (ratio.sign() <= 0 || ratio >= Rational(1))
            throw std::invalid_argument("geometric tail: ratio must be in (0,1)");
        if (scale.is_zero()) return zero();
        Node n{Kind::Geometric};
        n.scale = std::move(scale);
        n.ratio = std::move(ratio);
        return wrap(std::move(n));
    }

    /// Coordinatewise sum of two descriptors over a common prefix length.
    static TailDescriptor sum(const TailDescriptor& a, const TailDescriptor& b) {
        if (a.kind() == Kind::Zero) return b;
        if (b.kind() == Kind::Zero) return a;
        // Harmonic tails form a family closed under addition.
        if (a.kind() == Kind::Harmonic && b.kind() == Kind::Harmonic)
            return harmonic(a.node_->scale + b.node_->scale);
        if (a.kind() == Kind::Geometric && b.kind() == Kind::Geometric &&
            a.node_->ratio == b.node_->ratio)
            return geometric(a.node_->scale + b.node_->scale, a.node_->ratio);
        Node n{Kind::Sum};
        n.left = a.node_;
        n.right = b.node_;
        return wrap(std::move(n));
    }

    /// Explicit coordinates for indices offset+1 .. offset+coords.size(),
    /// `inner` beyond. Used when arithmetic shortens a stored prefix.
    static TailDescriptor prefixed(long offset, std::vector<Rational> coords,
                                   const TailDescriptor& inner) {
        bool all_zero = true;
        for (const auto& c : coords)
            if (!c.is_zero()) { all_zero = false; break; }
        if (all_zero) {
            if (inner.kind() == Kind::Zero) return zero();
            if (coords.empty()) return inner;
        }
        Node n{Kind::Prefixed};
        n.offset = offset;
        n.coords = std::move(coords);
        n.left = inner.node_;
        return wrap(std::move(n));
    }

    /// Bound-only wrapper: |coord(j)| <= factor * inner bound. No exact rule;
    /// produced by maps that certify bounds but not coordinates (isomorphisms).
    static TailDescriptor bound_scaled(Rational factor, const TailDescriptor& inner) {
        if (factor.sign() < 0) throw std::invalid_argument("bound_scaled: negative factor");
        if (factor.is_zero() || inner.kind() == Kind::Zero) return zero();
        Node n{Kind::BoundScaled};
        n.scale = std::move(factor);
        n.left = inner.node_;
        return wrap(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    bool is_zero() const { return kind() == Kind::Zero; }

    /// True when coord(j) is exactly evaluable (false under BoundScaled).
    bool has_rule() const {
        switch (kind()) {
            case Kind::Zero:
            case Kind::Harmonic:
            case Kind::Geometric: return true;
            case Kind::Sum: return left().has_rule() && right().has_rule();
            case Kind::Prefixed: return left().has_rule();
            case Kind::BoundScaled: return false;
        }
        return false;
    }

    Rational coord(long j) const {
        if (j < 1) throw std::out_of_range("tail coord: index must be >= 1");
        switch (kind()) {
            case Kind::Zero: return Rational(0);
            case Kind::Harmonic: return node_->scale / Rational(j);
            case Kind::Geometric:
                return node_->scale * Rational::pow(node_->ratio, static_cast<std::uint64_t>(j));
            case Kind::Sum: return left().coord(j) + right().coord(j);
            case Kind::Prefixed: {
                const long last = node_->offset + static_cast<long>(node_->coords.size());
                if (j <= node_->offset)
                    throw std::out_of_range("tail coord: below descriptor coverage");
                if (j <= last) return node_->coords[static_cast<std::size_t>(j - node_->offset - 1)];
                return left().coord(j);
            }
            case Kind::BoundScaled:
                throw std::logic_error("tail coord: bound-only descriptor has no rule");
        }
        throw std::logic_error("tail coord: bad kind");
    }

    /// Certified sup over described coordinates j > m. Requires m >= 1.
    Rational sup_bound(long m) const {
        if (m < 1) throw std::out_of_range("sup_bound: m must be >= 1");
        switch (kind()) {
            case Kind::Zero: return Rational(0);
            case Kind::Harmonic: return node_->scale.abs() / Rational(m);
            case Kind::Geometric:
                return node_->scale.abs() *
                       Rational::pow(node_->ratio, static_cast<std::uint64_t>(m + 1));
            case Kind::Sum: return left().sup_bound(m) + right().sup_bound(m);
            case Kind::Prefixed: {
                const long last = node_->offset + static_cast<long>(node_->coords.size());
                Rational best = left().sup_bound(std::max(m, last));
                for (long j = std::max(m + 1, node_->offset + 1); j <= last; ++j) {
                    Rational a = node_->coords[static_cast<std::size_t>(j - node_->offset - 1)].abs();
                    if (a > best) best = a;
                }
                return best;
            }
            case Kind::BoundScaled: return node_->scale * left().sup_bound(m);
        }
        throw std::logic_error("sup_bound: bad kind");
    }

    /// Certified bound on sum_{j>m} |coord(j)|; nullopt when not certified finite.
    std::optional<Rational> abssum_bound(long m) const {
        if (m < 1) throw std::out_of_range("abssum_bound: m must be >= 1");
        switch (kind()) {
            case Kind::Zero: return Rational(0);
            case Kind::Harmonic: return std::nullopt;  // harmonic series diverges
            case Kind::Geometric:
                // sum_{j>m} |c| r^j = |c| r^(m+1) / (1-r)
                return node_->scale.abs() *
                       Rational::pow(node_->ratio, static_cast<std::uint64_t>(m + 1)) /
                       (Rational(1) - node_->ratio);
            case Kind::Sum: {
                auto a = left().abssum_bound(m), b = right().abssum_bound(m);
                if (!a || !b) return std::nullopt;
                return *a + *b;
            }
            case Kind::Prefixed: {
                const long last = node_->offset + static_cast<long>(node_->coords.size());
                auto inner = left().abssum_bound(std::max(m, last));
                if (!inner) return std::nullopt;
                Rational acc = *inner;
                for (long j = std::max(m + 1, node_->offset + 1); j <= last; ++j)
                    acc += node_->coords[static_cast<std::size_t>(j - node_->offset - 1)].abs();
                return acc;
            }
            case Kind::BoundScaled: {
                auto inner = left().abssum_bound(m);
                if (!inner) return std::nullopt;
                return node_->scale * *inner;
            }
        }
        throw std::logic_error("abssum_bound: bad kind");
    }

    SignCert sign_certificate() const {
        switch (kind()) {
            case Kind::Zero: return SignCert::Zero;
            case Kind::Harmonic:
            case Kind::Geometric:
                return node_->scale.sign() > 0 ? SignCert::NonNegative : SignCert::NonPositive;
            case Kind::Sum: return combine(left().sign_certificate(), right().sign_certificate());
            case Kind::Prefixed: {
                SignCert c = left().sign_certificate();
                for (const auto& x : node_->coords) {
                    SignCert s = x.sign() > 0   ? SignCert::NonNegative
                                 : x.sign() < 0 ? SignCert::NonPositive
                                                : SignCert::Zero;
                    c = combine(c, s);
                }
                return c;
            }
            case Kind::BoundScaled: return SignCert::Unknown;
        }
        return SignCert::Unknown;
    }

    /// Exact coordinatewise scaling.
    TailDescriptor scaled(const Rational& c) const {
        if (c.is_zero()) return zero();
        switch (kind()) {
            case Kind::Zero: return zero();
            case Kind::Harmonic: return harmonic(node_->scale * c);
            case Kind::Geometric: return geometric(node_->scale * c, node_->ratio);
            case Kind::Sum: return sum(left().scaled(c), right().scaled(c));
            case Kind::Prefixed: {
                std::vector<Rational> coords = node_->coords;
                for (auto& x : coords) x *= c;
                return prefixed(node_->offset, std::move(coords), left().scaled(c));
            }
            case Kind::BoundScaled: return bound_scaled(node_->scale * c.abs(), left());
        }
        throw std::logic_error("scaled: bad kind");
    }

    /// Structural equality: same tree shape and parameters. Sufficient (not
    /// necessary) for describing the same coordinates.
    friend bool operator==(const TailDescriptor& a, const TailDescriptor& b) {
        return node_equal(*a.node_, *b.node_);
    }

    // Accessors for serialization.
    const Rational& scale_param() const { return node_->scale; }
    const Rational& ratio_param() const { return node_->ratio; }
    long prefix_offset() const { return node_->offset; }
    const std::vector<Rational>& prefix_coords() const { return node_->coords; }
    TailDescriptor left() const { return TailDescriptor(node_->left); }
    TailDescriptor right() const { return TailDescriptor(node_->right); }

private:
    struct Node {
        Kind kind = Kind::Zero;
        Rational scale;  // Harmonic/Geometric scale, BoundScaled factor
        Rational ratio;  // Geometric only
        long offset = 0;
        std::vector<Rational> coords;  // Prefixed only
        std::shared_ptr<const Node> left, right;
    };

    explicit TailDescriptor(std::shared_ptr<const Node> n) : node_(std::move(n)) {
        if (!node_) throw std::logic_error("tail: null node");
    }
    static TailDescriptor wrap(Node&& n) {
        return TailDescriptor(std::make_shared<const Node>(std::move(n)));
    }

    static SignCert combine(SignCert a, SignCert b) {
        if (a == SignCert::Zero) return b;
        if (b == SignCert::Zero) return a;
        if (a == b) return a;
        return SignCert::Unknown;
    }

    static bool node_equal(const Node& a, const Node& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Zero: return true;
            case Kind::Harmonic: return a.scale == b.scale;
            case Kind::Geometric: return a.scale == b.scale && a.ratio == b.ratio;
            case Kind::Sum: return node_equal(*a.left, *b.left) && node_equal(*a.right, *b.right);
            case Kind::Prefixed:
                return a.offset == b.offset && a.coords == b.coords &&
                       node_equal(*a.left, *b.left);
            case Kind::BoundScaled: return a.scale == b.scale && node_equal(*a.left, *b.left);
        }
        return false;
    }

    std::shared_ptr<const Node> node_;
};

}  // namespace conelab
