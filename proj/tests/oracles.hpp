// Brute-force reference implementations, kept deliberately independent of the
// library's evaluation path: statistics are computed from the defining
// weighted partial-sum form in plain floating point, and distributions by
// direct enumeration.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "wrc/variant.hpp"

namespace oracle {

inline std::vector<int> inverse(std::span<const int> s) {
    std::vector<int> inv(s.size());
    for (size_t i = 0; i < s.size(); ++i) inv[static_cast<size_t>(s[i] - 1)] = static_cast<int>(i) + 1;
    return inv;
}

inline std::vector<double> lower_weights(int n, int p) {
    std::vector<double> w(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        w[static_cast<size_t>(i - 1)] = std::pow(n + 1.0 - i, p) - std::pow(n - static_cast<double>(i), p);
    return w;
}

inline std::vector<double> upper_weights(int n, int p) {
    std::vector<double> w(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        w[static_cast<size_t>(i - 1)] = std::pow(static_cast<double>(i), p) - std::pow(i - 1.0, p);
    return w;
}

/// 1 - 2 sum w_i eta_i / (same sum on the reversal), straight from the
/// definition -- both sums are computed literally.
inline double nu_from_weights(std::span<const double> w, std::span<const int> s) {
    const int n = static_cast<int>(s.size());
    double num = 0.0, den = 0.0;
    double eta = 0.0, eta_rev = 0.0;
    for (int k = 1; k <= n; ++k) {
        eta += s[static_cast<size_t>(k - 1)] - k;
        eta_rev += (n + 1 - k) - k;
        num += w[static_cast<size_t>(k - 1)] * eta;
        den += w[static_cast<size_t>(k - 1)] * eta_rev;
    }
    return 1.0 - 2.0 * num / den;
}

inline double nu(const wrc::WrcVariant& v, std::span<const int> s) {
    const int n = static_cast<int>(s.size());
    const auto w = v.tail == wrc::Tail::Lower ? lower_weights(n, v.p) : upper_weights(n, v.p);
    if (!v.symmetrized) return nu_from_weights(w, s);
    const auto si = inverse(s);
    return 0.5 * (nu_from_weights(w, s) + nu_from_weights(w, si));
}

inline double spearman(std::span<const int> s) {
    const double n = static_cast<double>(s.size());
    double d2 = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        const double d = s[i] - (static_cast<double>(i) + 1.0);
        d2 += d * d;
    }
    return 1.0 - 6.0 * d2 / (n * n * n - n);
}

/// Kendall's tau by explicit pair counting.
inline double kendall(std::span<const int> s) {
    const int n = static_cast<int>(s.size());
    long long concordant = 0, discordant = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) (s[static_cast<size_t>(j)] > s[static_cast<size_t>(i)] ? concordant : discordant)++;
    return static_cast<double>(concordant - discordant) / (0.5 * n * (n - 1));
}

template <class F>
void for_each_permutation(int n, F&& f) {
    std::vector<int> s(static_cast<size_t>(n));
    std::iota(s.begin(), s.end(), 1);
    do {
        f(std::span<const int>(s));
    } while (std::next_permutation(s.begin(), s.end()));
}

/// Uniformly random permutation from a plain linear congruential draw;
/// independent of the library's generator on purpose.
inline std::vector<int> random_permutation(int n, uint64_t& state) {
    std::vector<int> s(static_cast<size_t>(n));
    std::iota(s.begin(), s.end(), 1);
    for (size_t i = s.size(); i > 1; --i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        std::swap(s[i - 1], s[(state >> 33) % i]);
    }
    return s;
}

}  // namespace oracle
