#pragma once

#include <span>
#include <vector>

#include "wrc/checked_int.hpp"
#include "wrc/pairing.hpp"
#include "wrc/variant.hpp"

namespace wrc {

/// Power sum kappa(n, p) = sum_{i=1..n} i^p, exact.  Wide enough for
/// n <= 200, p <= 12; combinations beyond 128-bit range raise Overflow.
int128 kappa(long n, int p);

namespace detail {

/// Integer representation of one WRC statistic at fixed n:
///   nu(S) = (offset - T(S)) / denom,
///   T(S)  = sum_i pos[i-1] * S_i + sum_i i * val[S_i - 1]
/// (val is empty for the non-symmetrised variants).  Exact integer
/// accumulation with a single final division keeps large n and p free of
/// floating-point cancellation, and T admits O(1) updates under
/// transpositions, which the exact-null enumerator relies on.
struct WrcCoefficients {
    int n = 0;
    WrcVariant variant{};
    int128 offset = 0;
    int128 denom = 1;
    std::vector<int128> pos;
    std::vector<int128> val;

    static WrcCoefficients build(const WrcVariant& v, int n);

    int128 statistic(std::span<const int> s) const;
    double evaluate(std::span<const int> s) const { return to_value(statistic(s)); }
    double to_value(int128 t) const {
        return static_cast<double>(static_cast<long double>(offset - t) / static_cast<long double>(denom));
    }
};

}  // namespace detail

/// The weighted rank correlation nu_{n,p} for the given family member.
/// Equals 1 exactly at the identity pairing and -1 at the full reversal.
double nu(const WrcVariant& variant, const RankPairing& pairing);

/// Spearman's rho; identical (bit for bit) to nu(lower, p=1).
double spearman(const RankPairing& pairing);

/// Kendall's tau: (concordant - discordant) / (n choose 2).
double kendall(const RankPairing& pairing);

/// Generic weighted form 1 - 2*sum w_i eta_i / max(sum w_i eta_i), where
/// eta_k = sum_{i<=k} (S_i - i) and the maximum is attained at the reversal.
/// All weights must be strictly positive.
double weighted_nu(std::span<const double> weights, const RankPairing& pairing);

/// Plug-in estimator of the population coefficient obtained from the
/// empirical copula.  Only defined for the non-symmetrised variants.
double empirical_nu(const WrcVariant& variant, const RankPairing& pairing);

}  // namespace wrc
