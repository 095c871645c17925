#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelab/basis.hpp"
#include "conelab/seqvector.hpp"

namespace conelab {

enum class Tri { Yes, No, Indeterminate };

inline const char* tri_name(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        case Tri::Indeterminate: return "indeterminate";
    }
    return "?";
}

/// A cone of the form +K_{x_n} or -K_{x_n} for a basis system: membership is
/// determined by the signs of the biorthogonal coefficients.
struct ConeSpec {
    BasisSystem basis;
    int sign = 1;  // +1 selects K_{x_n}, -1 selects -K_{x_n}

    ConeSpec(BasisSystem b, int s) : basis(std::move(b)), sign(s) {
        if (sign != 1 && sign != -1) throw std::invalid_argument("ConeSpec: sign must be +-1");
    }
};

/// Biorthogonal coefficients (x_1*(v), ..., x_n*(v)) as exact pairings with
/// certified error bounds; Pairing::sign() flags indeterminate entries.
inline std::vector<Pairing> coefficients(const BasisSystem& b, const SeqVector& v, long n) {
    std::vector<Pairing> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k) out.push_back(pair(b.biorthogonal(k), v));
    return out;
}

inline std::vector<Rational> exact_coefficients(const BasisSystem& b, const SeqVector& v, long n) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k) {
        Pairing p = pair(b.biorthogonal(k), v);
        if (!p.exact())
            throw std::logic_error("exact_coefficients: pairing carries a nonzero error bound");
        out.push_back(std::move(p.value));
    }
    return out;
}

/// sign(c) * x_k* for k = 1..n: generating rays of (a sub-cone of) the dual
/// cone at truncation. In general the identification of the dual with the
/// biorthogonal cone needs unconditionality; these are documented as
/// generators of a sub-cone, not assumed to exhaust the dual.
inline std::vector<Functional> dual_generators(const ConeSpec& c, long n) {
    std::vector<Functional> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k) {
        SeqVector g = c.basis.biorthogonal(k).vector();
        out.push_back(Functional(c.sign > 0 ? g : scale(Rational(-1), g)));
    }
    return out;
}

namespace detail {

/// Sum of coefficient multiples of basis elements, materialized at the basis'
/// element length.
inline SeqVector combine(const BasisSystem& b, std::span<const Rational> coeffs) {
    SeqVector acc = SeqVector::zero(Space::C0, b.prefix_len() + 1);
    for (long k = 1; k <= static_cast<long>(coeffs.size()); ++k) {
        const Rational& c = coeffs[static_cast<std::size_t>(k - 1)];
        if (c.is_zero()) continue;
        acc = add(acc, scale(c, b.element(k)));
    }
    return acc;
}

/// Coordinatewise equality treating coordinates past either prefix via tails
/// (both tails must be Zero).
inline bool same_vector_exact(const SeqVector& a, const SeqVector& b) {
    if (!a.tail().is_zero() || !b.tail().is_zero()) return false;
    const long n = std::max(a.size(), b.size());
    for (long j = 1; j <= n; ++j) {
        Rational va = j <= a.size() ? a.coord(j) : Rational(0);
        Rational vb = j <= b.size() ? b.coord(j) : Rational(0);
        if (va != vb) return false;
    }
    return true;
}

}  // namespace detail

/// Tri-state cone membership at truncation: Yes only when every coefficient
/// sign is certified compatible AND the coefficients provably reproduce v;
/// No on a certified strict violation; Indeterminate otherwise.
inline Tri cone_contains(const ConeSpec& c, const SeqVector& v, long n) {
    const BasisSystem& b = c.basis;
    const Rational sgn(c.sign);

    if (v.tail().is_zero()) {
        const long upto = std::min(std::max(n, v.size() + 1), b.prefix_len());
        std::vector<Rational> coeffs;
        coeffs.reserve(static_cast<std::size_t>(upto));
        bool violated = false;
        for (long k = 1; k <= upto; ++k) {
            Pairing p = pair(b.biorthogonal(k), v);
            if (!p.exact()) return Tri::Indeterminate;
            if ((sgn * p.value).sign() < 0) violated = true;
            coeffs.push_back(std::move(p.value));
        }
        if (violated) return Tri::No;
        // Certify that the checked coefficients span v at this truncation.
        if (detail::same_vector_exact(detail::combine(b, coeffs), v)) return Tri::Yes;
        return Tri::Indeterminate;
    }

    // Infinite-support v: coordinate bases admit a sign certificate for the tail.
    const std::string& name = b.name();
    if (name == "canonical" || name == "scaled") {
        for (long j = 1; j <= v.size(); ++j)
            if ((sgn * v.coord(j)).sign() < 0) return Tri::No;
        auto cert = v.tail().sign_certificate();
        if (cert == TailDescriptor::SignCert::Zero) return Tri::Yes;
        if (cert == TailDescriptor::SignCert::NonNegative && c.sign > 0) return Tri::Yes;
        if (cert == TailDescriptor::SignCert::NonPositive && c.sign < 0) return Tri::Yes;
        return Tri::Indeterminate;
    }

    const long upto = std::min(n, b.prefix_len());
    for (long k = 1; k <= upto; ++k) {
        Pairing p = pair(b.biorthogonal(k), v);
        if (p.sign() == Pairing::Sign::Negative && c.sign > 0) return Tri::No;
        if (p.sign() == Pairing::Sign::Positive && c.sign < 0) return Tri::No;
    }
    return Tri::Indeterminate;
}

/// Exactness-of-coefficients check behind the pointedness argument: when the
/// biorthogonal system is exact at truncation, alpha >= 0 and -alpha >= 0
/// force alpha = 0, so K intersect -K = {0} on the represented span.
inline bool pointedness_check(const ConeSpec& c, long n) {
    if (n < 1) throw std::out_of_range("pointedness_check: n must be >= 1");
    for (long k = 1; k <= n; ++k) {
        NormInterval e = c.basis.element(k).norm();
        if (e.lower.is_zero()) return false;  // degenerate basis vector
    }
    return c.basis.check_biorthogonality(n);
}

/// v = p - q with both parts in the cone, via positive/negative coefficient
/// parts. Requires v exactly representable in the first n basis vectors.
inline std::pair<SeqVector, SeqVector> generating_decomposition(const ConeSpec& c,
                                                                const SeqVector& v, long n) {
    std::vector<Rational> coeffs = exact_coefficients(c.basis, v, n);
    SeqVector recon = detail::combine(c.basis, coeffs);
    if (!detail::same_vector_exact(recon, v))
        throw std::invalid_argument(
            "generating_decomposition: v is not representable in the first n basis vectors");
    std::vector<Rational> pc(coeffs.size()), qc(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Rational& x = coeffs[i];
        if (c.sign > 0) {
            pc[i] = std::max(x, Rational(0));
            qc[i] = std::max(-x, Rational(0));
        } else {
            pc[i] = std::min(x, Rational(0));
            qc[i] = std::min(-x, Rational(0));
        }
    }
    return {detail::combine(c.basis, pc), detail::combine(c.basis, qc)};
}

}  // namespace conelab
