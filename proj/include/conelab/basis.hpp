#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conelab/seqvector.hpp"

namespace conelab {

/// Finite prefix of a basis {x_n} of c0 with its biorthogonal functionals
/// {x_n*} in l1, both given by generator rules. Elements are materialized at
/// prefix length prefix_len()+1 so that rules peeking one coordinate past n
/// (summing, difference) stay exact.
class BasisSystem {
public:
    using ElementRule = std::function<SeqVector(long)>;
    using FunctionalRule = std::function<Functional(long)>;

    BasisSystem(std::string name, long prefix_len, ElementRule element,
                FunctionalRule biorthogonal)
        : name_(std::move(name)),
          prefix_len_(prefix_len),
          element_(std::move(element)),
          biorthogonal_(std::move(biorthogonal)) {
        if (prefix_len_ < 1) throw std::invalid_argument("BasisSystem: prefix_len must be >= 1");
    }

    const std::string& name() const { return name_; }
    long prefix_len() const { return prefix_len_; }

    SeqVector element(long n) const {
        check_index(n);
        return element_(n);
    }
    Functional biorthogonal(long n) const {
        check_index(n);
        return biorthogonal_(n);
    }

    /// Exact biorthogonality x_k*(x_j) = delta_kj for all k, j <= count.
    /// Returns false (never throws) on the first failed pairing.
    bool check_biorthogonality(long count) const {
        for (long k = 1; k <= count; ++k) {
            Functional f = biorthogonal(k);
            for (long j = 1; j <= count; ++j) {
                Pairing p = pair(f, element(j));
                if (!p.exact()) return false;
                if (p.value != Rational(k == j ? 1 : 0)) return false;
            }
        }
        return true;
    }

    /// Same-name system at a different truncation.
    BasisSystem resized(long prefix_len) const {
        return BasisSystem(name_, prefix_len, element_, biorthogonal_);
    }

private:
    void check_index(long n) const {
        if (n < 1 || n > prefix_len_)
            throw std::out_of_range("BasisSystem: index outside truncation");
    }

    std::string name_;
    long prefix_len_;
    ElementRule element_;
    FunctionalRule biorthogonal_;
};

/// e_n with biorthogonals e_n*.
inline BasisSystem canonical_basis(long n = kDefaultTruncation) {
    return BasisSystem(
        "canonical", n,
        [n](long i) { return SeqVector::unit(Space::C0, i, n + 1); },
        [](long i) { return Functional::unit(i); });
}

/// b_n = e_n / n with biorthogonals n e_n*.
inline BasisSystem scaled_basis(long n = kDefaultTruncation) {
    return BasisSystem(
        "scaled", n,
        [n](long i) { return scale(Rational(1, i), SeqVector::unit(Space::C0, i, n + 1)); },
        [](long i) {
            return Functional(scale(Rational(i), SeqVector::unit(Space::L1, i, i)));
        });
}

/// x_n = e_1 + ... + e_n (the Gelbaum conditional basis of c0), biorthogonals
/// e_n* - e_{n+1}*.
inline BasisSystem summing_basis(long n = kDefaultTruncation) {
    return BasisSystem(
        "summing", n,
        [n](long i) {
            std::vector<Rational> c(static_cast<std::size_t>(n + 1));
            for (long j = 0; j < i; ++j) c[static_cast<std::size_t>(j)] = Rational(1);
            return SeqVector::make(Space::C0, std::move(c));
        },
        [](long i) {
            std::vector<Rational> c(static_cast<std::size_t>(i + 1));
            c[static_cast<std::size_t>(i - 1)] = Rational(1);
            c[static_cast<std::size_t>(i)] = Rational(-1);
            return Functional(SeqVector::make(Space::L1, std::move(c)));
        });
}

/// x_n = -e_n + e_{n+1} (pointed, generating, non-normal cone), biorthogonals
/// -(e_1* + ... + e_n*).
inline BasisSystem difference_basis(long n = kDefaultTruncation) {
    return BasisSystem(
        "difference", n,
        [n](long i) {
            std::vector<Rational> c(static_cast<std::size_t>(n + 1));
            c[static_cast<std::size_t>(i - 1)] = Rational(-1);
            c[static_cast<std::size_t>(i)] = Rational(1);
            return SeqVector::make(Space::C0, std::move(c));
        },
        [](long i) {
            std::vector<Rational> c(static_cast<std::size_t>(i), Rational(-1));
            return Functional(SeqVector::make(Space::L1, std::move(c)));
        });
}

inline BasisSystem basis_by_name(std::string_view name, long n = kDefaultTruncation) {
    if (name == "canonical") return canonical_basis(n);
    if (name == "scaled") return scaled_basis(n);
    if (name == "summing") return summing_basis(n);
    if (name == "difference") return difference_basis(n);
    throw std::invalid_argument("unknown basis name: " + std::string(name));
}

}  // namespace conelab
