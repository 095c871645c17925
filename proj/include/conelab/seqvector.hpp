#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/rational.hpp"
#include "conelab/tail.hpp"

namespace conelab {

/// Default stored-prefix length for desk-scale runs; overridable everywhere.
inline constexpr long kDefaultTruncation = 64;

enum class Space { C0, L1 };

inline const char* space_name(Space s) { return s == Space::C0 ? "C0" : "L1"; }

struct NormInterval {
    Rational lower;  // exact norm of the stored prefix
    Rational upper;  // lower combined with the certified tail bound
    bool exact() const { return lower == upper; }
};

/// Truncated element of c0 or l1: an explicit coordinate prefix plus a tail
/// descriptor certifying everything beyond it. Immutable after construction;
/// all operations are pure.
class SeqVector {
public:
    static SeqVector make(Space space, std::vector<Rational> coords,
                          TailDescriptor tail = TailDescriptor::zero()) {
        if (coords.empty())
            throw std::invalid_argument("SeqVector: empty prefix");
        if (space == Space::L1 && !tail.abssum_bound(static_cast<long>(coords.size())))
            throw std::invalid_argument("SeqVector: l1 vector needs a finite abssum tail bound");
        return SeqVector(space, std::move(coords), std::move(tail));
    }

    static SeqVector zero(Space space, long n) {
        return SeqVector(space, std::vector<Rational>(static_cast<std::size_t>(n)),
                         TailDescriptor::zero());
    }

    /// Canonical unit vector e_i materialized at prefix length n.
    static SeqVector unit(Space space, long i, long n) {
        if (i < 1 || i > n) throw std::out_of_range("SeqVector::unit: index out of range");
        std::vector<Rational> c(static_cast<std::size_t>(n));
        c[static_cast<std::size_t>(i - 1)] = Rational(1);
        return SeqVector(space, std::move(c), TailDescriptor::zero());
    }

    Space space() const { return space_; }
    long size() const { return static_cast<long>(prefix_.size()); }  // truncation level N
    const std::vector<Rational>& prefix() const { return prefix_; }
    const TailDescriptor& tail() const { return tail_; }

    /// 1-based coordinate; beyond the prefix the tail rule is consulted.
    Rational coord(long j) const {
        if (j < 1) throw std::out_of_range("SeqVector::coord: index must be >= 1");
        if (j <= size()) return prefix_[static_cast<std::size_t>(j - 1)];
        return tail_.coord(j);
    }

    /// Materialize tail-rule coordinates up to a longer prefix.
    SeqVector extend(long n) const {
        if (n <= size()) return *this;
        if (!tail_.has_rule())
            throw std::logic_error("SeqVector::extend: tail has no exact rule");
        std::vector<Rational> c = prefix_;
        c.reserve(static_cast<std::size_t>(n));
        for (long j = size() + 1; j <= n; ++j) c.push_back(tail_.coord(j));
        return SeqVector(space_, std::move(c), tail_);
    }

    /// Drop the tail descriptor, keeping the exact prefix only.
    SeqVector truncated() const { return SeqVector(space_, prefix_, TailDescriptor::zero()); }

    NormInterval norm() const {
        if (space_ == Space::C0) {
            Rational lo(0);
            for (const auto& x : prefix_) {
                Rational a = x.abs();
                if (a > lo) lo = a;
            }
            Rational tb = tail_.sup_bound(size());
            return {lo, std::max(lo, tb)};
        }
        Rational lo(0);
        for (const auto& x : prefix_) lo += x.abs();
        auto tb = tail_.abssum_bound(size());
        if (!tb) throw std::logic_error("SeqVector::norm: l1 tail bound missing");
        return {lo, lo + *tb};
    }

    friend bool operator==(const SeqVector& a, const SeqVector& b) {
        return a.space_ == b.space_ && a.prefix_ == b.prefix_ && a.tail_ == b.tail_;
    }

private:
    SeqVector(Space space, std::vector<Rational> coords, TailDescriptor tail)
        : space_(space), prefix_(std::move(coords)), tail_(std::move(tail)) {}

    Space space_;
    std::vector<Rational> prefix_;
    TailDescriptor tail_;
};

namespace detail {
/// View of a vector's content beyond index n as a tail descriptor (wraps any
/// stored coordinates past n). Requires n <= v.size().
inline TailDescriptor tail_beyond(const SeqVector& v, long n) {
    if (n == v.size()) return v.tail();
    std::vector<Rational> extra(v.prefix().begin() + n, v.prefix().end());
    return TailDescriptor::prefixed(n, std::move(extra), v.tail());
}
}  // namespace detail

inline SeqVector scale(const Rational& c, const SeqVector& v) {
    std::vector<Rational> out = v.prefix();
    for (auto& x : out) x *= c;
    return SeqVector::make(v.space(), std::move(out), v.tail().scaled(c));
}

inline SeqVector add(const SeqVector& u, const SeqVector& v) {
    if (u.space() != v.space())
        throw std::invalid_argument("add: space tag mismatch");
    const long n = std::min(u.size(), v.size());
    std::vector<Rational> out(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j)
        out[static_cast<std::size_t>(j)] =
            u.prefix()[static_cast<std::size_t>(j)] + v.prefix()[static_cast<std::size_t>(j)];
    TailDescriptor tail =
        TailDescriptor::sum(detail::tail_beyond(u, n), detail::tail_beyond(v, n));
    return SeqVector::make(u.space(), std::move(out), std::move(tail));
}

inline SeqVector subtract(const SeqVector& u, const SeqVector& v) {
    return add(u, scale(Rational(-1), v));
}

/// An l1-tagged vector acting on c0-tagged vectors by the duality pairing.
class Functional {
public:
    explicit Functional(SeqVector v) : vec_(std::move(v)) {
        if (vec_.space() != Space::L1)
            throw std::invalid_argument("Functional: requires an l1-tagged vector");
    }

    static Functional unit(long i, long n = 0) {
        return Functional(SeqVector::unit(Space::L1, i, n == 0 ? i : n));
    }

    const SeqVector& vector() const { return vec_; }
    NormInterval norm() const { return vec_.norm(); }

private:
    SeqVector vec_;
};

/// Exact pairing value over the common prefix plus a certified error bound for
/// everything beyond it. The bound is zero whenever either side vanishes
/// exactly past the common prefix (in particular when both tails are Zero).
struct Pairing {
    Rational value;
    Rational error;  // >= 0

    enum class Sign { Negative, Zero, Positive, Indeterminate };

    Sign sign() const {
        if (value.is_zero() && error.is_zero()) return Sign::Zero;
        if (value > error) return Sign::Positive;
        if (-value > error) return Sign::Negative;
        return Sign::Indeterminate;
    }
    bool exact() const { return error.is_zero(); }
    Rational upper_abs() const { return value.abs() + error; }
    /// Certified "<= 0" (resp. ">= 0"): the whole interval is on that side.
    bool certified_nonpositive() const { return value + error <= Rational(0); }
    bool certified_nonnegative() const { return value - error >= Rational(0); }
};

inline Pairing pair(const Functional& f, const SeqVector& v) {
    if (v.space() != Space::C0)
        throw std::invalid_argument("pair: vector must be c0-tagged");
    const SeqVector& fv = f.vector();
    const long p = std::min(fv.size(), v.size());
    Rational value(0);
    for (long j = 0; j < p; ++j)
        value += fv.prefix()[static_cast<std::size_t>(j)] *
                 v.prefix()[static_cast<std::size_t>(j)];

    // |sum_{j>p} f_j v_j| <= (l1 mass of f past p) * (sup of v past p).
    TailDescriptor frest = detail::tail_beyond(fv, p);
    TailDescriptor vrest = detail::tail_beyond(v, p);
    auto fmass = frest.abssum_bound(p);
    if (!fmass) throw std::logic_error("pair: functional tail mass not certified");
    Rational vsup = vrest.sup_bound(p);
    return {std::move(value), *fmass * vsup};
}

}  // namespace conelab
