#include "wrc/rank_core.hpp"

#include <algorithm>
#include <cmath>

namespace wrc {

int128 kappa(long n, int p) {
    if (n < 1) throw Error(ErrorCode::ParameterOutOfDomain, "kappa requires n >= 1");
    if (p < 0) throw Error(ErrorCode::ParameterOutOfDomain, "kappa requires p >= 0");
    int128 sum = 0;
    for (long i = 1; i <= n; ++i) sum = detail::checked_add(sum, detail::checked_ipow(i, p));
    return sum;
}

namespace detail {

WrcCoefficients WrcCoefficients::build(const WrcVariant& v, int n) {
    validate(v);
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "rank statistics need n >= 2");

    const int p = v.p;
    WrcCoefficients c;
    c.n = n;
    c.variant = v;
    c.pos.resize(static_cast<size_t>(n));
    if (v.symmetrized) c.val.resize(static_cast<size_t>(n));

    const int linear_scale = v.symmetrized ? 1 : 2;
    if (v.tail == Tail::Lower) {
        // nu = ((n+1) kappa_{n,p} - sum S_i w_i) / (2 kappa_{n,p+1} - (n+1) kappa_{n,p}),
        // w_i = (n+1-i)^p (doubled when not symmetrised).
        c.offset = checked_mul(n + 1, kappa(n, p));
        c.denom = checked_sub(checked_mul(2, kappa(n, p + 1)), c.offset);
        for (int i = 1; i <= n; ++i)
            c.pos[static_cast<size_t>(i - 1)] = checked_mul(linear_scale, checked_ipow(n + 1 - i, p));
        if (v.symmetrized)
            for (int j = 1; j <= n; ++j) c.val[static_cast<size_t>(j - 1)] = checked_ipow(n + 1 - j, p);
    } else {
        // Upper tail uses scores (i-1)^p and the kappa_{n-1,.} normaliser.
        c.offset = checked_mul(-(n + 1), kappa(n - 1, p));
        c.denom =
            checked_sub(checked_mul(2, kappa(n - 1, p + 1)), checked_mul(n - 1, kappa(n - 1, p)));
        for (int i = 1; i <= n; ++i)
            c.pos[static_cast<size_t>(i - 1)] = checked_mul(-linear_scale, checked_ipow(i - 1, p));
        if (v.symmetrized)
            for (int j = 1; j <= n; ++j) c.val[static_cast<size_t>(j - 1)] = -checked_ipow(j - 1, p);
    }
    return c;
}

int128 WrcCoefficients::statistic(std::span<const int> s) const {
    int128 t = 0;
    const size_t m = s.size();
    for (size_t i = 0; i < m; ++i) t += pos[i] * static_cast<int128>(s[i]);
    if (!val.empty())
        for (size_t i = 0; i < m; ++i) t += static_cast<int128>(i + 1) * val[static_cast<size_t>(s[i] - 1)];
    return t;
}

}  // namespace detail

double nu(const WrcVariant& variant, const RankPairing& pairing) {
    auto c = detail::WrcCoefficients::build(variant, pairing.n());
    return c.evaluate(pairing.s);
}

double spearman(const RankPairing& pairing) { return nu(WrcVariant::spearman(), pairing); }

namespace {

// Inversions of a permutation by merge sort.
long long count_inversions(std::vector<int>& a, std::vector<int>& buf, size_t lo, size_t hi) {
    if (hi - lo < 2) return 0;
    const size_t mid = lo + (hi - lo) / 2;
    long long inv = count_inversions(a, buf, lo, mid) + count_inversions(a, buf, mid, hi);
    size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
            buf[k++] = a[i++];
        } else {
            inv += static_cast<long long>(mid - i);
            buf[k++] = a[j++];
        }
    }
    while (i < mid) buf[k++] = a[i++];
    while (j < hi) buf[k++] = a[j++];
    std::copy(buf.begin() + static_cast<long>(lo), buf.begin() + static_cast<long>(hi),
              a.begin() + static_cast<long>(lo));
    return inv;
}

}  // namespace

double kendall(const RankPairing& pairing) {
    const int n = pairing.n();
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "kendall needs n >= 2");
    std::vector<int> a = pairing.s;
    std::vector<int> buf(a.size());
    const long long inv = count_inversions(a, buf, 0, a.size());
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    return static_cast<double>(pairs - 2 * inv) / static_cast<double>(pairs);
}

double weighted_nu(std::span<const double> weights, const RankPairing& pairing) {
    const int n = pairing.n();
    if (static_cast<int>(weights.size()) != n)
        throw Error(ErrorCode::LengthMismatch, "one weight per rank is required");
    for (double w : weights)
        if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "all weights must be positive");

    // eta_k = sum_{i<=k}(S_i - i); under the reversal eta_k = k(n-k), which
    // maximises every partial sum simultaneously.
    long double num = 0.0L, denom = 0.0L;
    long long eta = 0;
    for (int k = 1; k <= n; ++k) {
        eta += pairing.s[static_cast<size_t>(k - 1)] - k;
        num += static_cast<long double>(weights[static_cast<size_t>(k - 1)]) * static_cast<long double>(eta);
        denom += static_cast<long double>(weights[static_cast<size_t>(k - 1)]) *
                 static_cast<long double>(static_cast<long long>(k) * (n - k));
    }
    return static_cast<double>(1.0L - 2.0L * num / denom);
}

double empirical_nu(const WrcVariant& variant, const RankPairing& pairing) {
    validate(variant);
    if (variant.symmetrized)
        throw Error(ErrorCode::UnsupportedCombination, "the empirical-copula estimator is defined for the non-symmetrised variants only");
    const int n = pairing.n();
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "empirical_nu needs n >= 2");
    const int p = variant.p;

    // Exact integer numerators over the common grid denominator (n+1)^{p+1}:
    //   lower: sum (n+1-i)^p (n+1-S_i);  upper: sum ((n+1)^p - i^p)(n+1-S_i).
    int128 sum = 0;
    const int128 np1p = detail::checked_ipow(n + 1, p);
    for (int i = 1; i <= n; ++i) {
        const int128 wu = variant.tail == Tail::Lower
                              ? detail::checked_ipow(n + 1 - i, p)
                              : detail::checked_sub(np1p, detail::checked_ipow(i, p));
        sum = detail::checked_add(sum, detail::checked_mul(wu, n + 1 - pairing.s[static_cast<size_t>(i - 1)]));
    }
    const long double grid = static_cast<long double>(detail::checked_mul(np1p, n + 1));
    const long double scale = 2.0L * (p + 1) * (p + 2) / (static_cast<long double>(n) * p);
    const long double shift = variant.tail == Tail::Lower
                                  ? static_cast<long double>(p + 2) / p
                                  : static_cast<long double>(p + 2);
    return static_cast<double>(scale * static_cast<long double>(sum) / grid - shift);
}

}  // namespace wrc
