#pragma once

#include <random>
#include <vector>

#include "conelab/counterexample.hpp"
#include "conelab/seqvector.hpp"

namespace conelab::testing {

/// Pattern-formula oracle for the main construction: coordinate j of y_k is 1
/// for j <= k-1 and (k-1)/j for j >= k. Independent of the closed form.
inline SeqVector pattern_y(long k, long n) {
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j)
        c[static_cast<std::size_t>(j - 1)] = j <= k - 1 ? Rational(1) : Rational(k - 1, j);
    return SeqVector::make(Space::C0, std::move(c), TailDescriptor::harmonic(Rational(k - 1)));
}

inline std::vector<SeqVector> pattern_nodes(long k_max, long n) {
    std::vector<SeqVector> nodes;
    for (long k = 1; k <= k_max; ++k) nodes.push_back(pattern_y(k, n));
    return nodes;
}

inline Rational rnd_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 6) {
    return Rational(static_cast<long long>(rng() % (2 * max_num + 1)) - max_num,
                    static_cast<long long>(rng() % max_den) + 1);
}

inline SeqVector rnd_vector(std::mt19937_64& rng, long n) {
    std::vector<Rational> c;
    for (long j = 0; j < n; ++j) c.push_back(rnd_rational(rng));
    return SeqVector::make(Space::C0, std::move(c));
}

inline Functional rnd_functional(std::mt19937_64& rng, long n) {
    std::vector<Rational> c;
    for (long j = 0; j < n; ++j) c.push_back(rnd_rational(rng));
    return Functional(SeqVector::make(Space::L1, std::move(c)));
}

}  // namespace conelab::testing
