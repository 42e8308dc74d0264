#include "wrc/null_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "wrc/normal.hpp"
#include "wrc/rng.hpp"

namespace wrc {

double NullDistribution::mean() const {
    long double s = 0.0L;
    for (double v : values) s += v;
    return static_cast<double>(s / static_cast<long double>(values.size()));
}

double NullDistribution::variance() const {
    const long double m = mean();
    long double s = 0.0L;
    for (double v : values) s += (v - m) * (v - m);
    return static_cast<double>(s / static_cast<long double>(values.size()));
}

namespace detail {

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

double EnumMoments::mean(const WrcCoefficients& c) const {
    return static_cast<double>(static_cast<long double>(dev_sum) /
                               (static_cast<long double>(count) * static_cast<long double>(c.denom)));
}

double EnumMoments::variance(const WrcCoefficients& c) const {
    const long double cnt = static_cast<long double>(count);
    const long double m = static_cast<long double>(dev_sum) / cnt;
    const long double ms = static_cast<long double>(dev_sq_sum) / cnt;
    const long double d = static_cast<long double>(c.denom);
    return static_cast<double>((ms - m * m) / (d * d));
}

namespace {

void run_units(int units, int threads, const std::function<void(int)>& work) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || units <= 1) {
        for (int u = 0; u < units; ++u) work(u);
        return;
    }
    threads = std::min(threads, units);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int u = t; u < units; u += threads) work(u);
        });
    for (auto& th : pool) th.join();
}

// Heap's algorithm over positions 1..n-1 (position 0 pinned to the unit's
// first element).  Each step is one transposition; OnSwap receives the two
// global positions after which the visitor reads the updated state.
template <class OnSwap>
void heap_rest(std::vector<int>& a, OnSwap&& on_swap) {
    const int m = static_cast<int>(a.size()) - 1;
    if (m <= 0) return;
    std::vector<int> ctr(static_cast<size_t>(m), 0);
    int i = 1;
    while (i < m) {
        if (ctr[static_cast<size_t>(i)] < i) {
            const int x = (i % 2 == 0) ? 0 : ctr[static_cast<size_t>(i)];
            on_swap(x + 1, i + 1);
            ++ctr[static_cast<size_t>(i)];
            i = 1;
        } else {
            ctr[static_cast<size_t>(i)] = 0;
            ++i;
        }
    }
}

std::vector<int> unit_start(int n, int first) {
    std::vector<int> a;
    a.reserve(static_cast<size_t>(n));
    a.push_back(first);
    for (int v = 1; v <= n; ++v)
        if (v != first) a.push_back(v);
    return a;
}

}  // namespace

std::vector<EnumMoments> enumerate_moments(std::span<const WrcCoefficients> stats, int threads) {
    if (stats.empty()) return {};
    const int n = stats.front().n;
    const size_t k = stats.size();
    std::vector<std::vector<EnumMoments>> per_unit(static_cast<size_t>(n), std::vector<EnumMoments>(k));

    run_units(n, threads, [&](int u) {
        std::vector<int> a = unit_start(n, u + 1);
        std::vector<int128> t(k);
        auto& acc = per_unit[static_cast<size_t>(u)];
        for (size_t j = 0; j < k; ++j) t[j] = stats[j].statistic(a);
        auto visit = [&] {
            for (size_t j = 0; j < k; ++j) {
                const int128 dev = stats[j].offset - t[j];
                acc[j].dev_sum += dev;
                acc[j].dev_sq_sum += dev * dev;
                ++acc[j].count;
            }
        };
        visit();
        heap_rest(a, [&](int x, int y) {
            const int sx = a[static_cast<size_t>(x)];
            const int sy = a[static_cast<size_t>(y)];
            for (size_t j = 0; j < k; ++j) {
                const auto& c = stats[j];
                int128 delta = (c.pos[static_cast<size_t>(x)] - c.pos[static_cast<size_t>(y)]) *
                               static_cast<int128>(sy - sx);
                if (!c.val.empty())
                    delta += static_cast<int128>(x - y) *
                             (c.val[static_cast<size_t>(sy - 1)] - c.val[static_cast<size_t>(sx - 1)]);
                t[j] += delta;
            }
            std::swap(a[static_cast<size_t>(x)], a[static_cast<size_t>(y)]);
            visit();
        });
    });

    std::vector<EnumMoments> total(k);
    for (const auto& unit : per_unit)
        for (size_t j = 0; j < k; ++j) {
            total[j].dev_sum += unit[j].dev_sum;
            total[j].dev_sq_sum += unit[j].dev_sq_sum;
            total[j].count += unit[j].count;
        }
    return total;
}

std::vector<double> enumerate_values(const WrcCoefficients& c, int threads) {
    const int n = c.n;
    const uint64_t total = factorial(n);
    const uint64_t per_unit = total / static_cast<uint64_t>(n);
    std::vector<double> out(total);

    run_units(n, threads, [&](int u) {
        std::vector<int> a = unit_start(n, u + 1);
        int128 t = c.statistic(a);
        double* slot = out.data() + static_cast<uint64_t>(u) * per_unit;
        *slot++ = c.to_value(t);
        const bool sym = !c.val.empty();
        heap_rest(a, [&](int x, int y) {
            const int sx = a[static_cast<size_t>(x)];
            const int sy = a[static_cast<size_t>(y)];
            int128 delta = (c.pos[static_cast<size_t>(x)] - c.pos[static_cast<size_t>(y)]) *
                           static_cast<int128>(sy - sx);
            if (sym)
                delta += static_cast<int128>(x - y) *
                         (c.val[static_cast<size_t>(sy - 1)] - c.val[static_cast<size_t>(sx - 1)]);
            t += delta;
            std::swap(a[static_cast<size_t>(x)], a[static_cast<size_t>(y)]);
            *slot++ = c.to_value(t);
        });
    });
    return out;
}

namespace {

// Exact null distribution of Kendall's tau via the inversion-count recursion:
// the number of permutations of m items with k inversions.
std::vector<double> kendall_exact_values(int n) {
    const int kmax = n * (n - 1) / 2;
    std::vector<uint64_t> cnt(static_cast<size_t>(kmax) + 1, 0);
    cnt[0] = 1;
    int top = 0;
    for (int m = 2; m <= n; ++m) {
        // multiply by 1 + q + ... + q^{m-1}
        const int newtop = top + m - 1;
        std::vector<uint64_t> next(static_cast<size_t>(newtop) + 1, 0);
        uint64_t window = 0;
        for (int k = 0; k <= newtop; ++k) {
            if (k <= top) window += cnt[static_cast<size_t>(k)];
            if (k - m >= 0 && k - m <= top) window -= cnt[static_cast<size_t>(k - m)];
            next[static_cast<size_t>(k)] = window;
        }
        cnt = std::move(next);
        top = newtop;
    }
    const double pairs = static_cast<double>(kmax);
    std::vector<double> values;
    values.reserve(detail::factorial(n));
    for (int k = kmax; k >= 0; --k) {
        const double tau = (pairs - 2.0 * static_cast<double>(k)) / pairs;
        values.insert(values.end(), static_cast<size_t>(cnt[static_cast<size_t>(k)]), tau);
    }
    return values;
}

long long inversions(std::span<const int> s, std::vector<int>& a, std::vector<int>& buf) {
    a.assign(s.begin(), s.end());
    buf.resize(a.size());
    long long inv = 0;
    for (size_t width = 1; width < a.size(); width *= 2) {
        for (size_t lo = 0; lo + width < a.size(); lo += 2 * width) {
            const size_t mid = lo + width;
            const size_t hi = std::min(lo + 2 * width, a.size());
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
        }
    }
    return inv;
}

void check_exact_args(int n, int cap) {
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "exact null needs n >= 2");
    if (cap > kMaxExactCap) throw Error(ErrorCode::CapExceeded, "the enumeration cap is limited to n = 11");
    if (n > cap) {
        std::ostringstream msg;
        msg << "exact enumeration is capped at n = " << cap << " (requested n = " << n << ")";
        throw Error(ErrorCode::CapExceeded, msg.str());
    }
}

}  // namespace
}  // namespace detail

NullDistribution exact_null(const Statistic& statistic, int n, bool normalized, int cap, int threads) {
    detail::check_exact_args(n, cap);
    NullDistribution d;
    d.statistic = statistic;
    d.n = n;
    d.kind = NullKind::Exact;
    d.normalized = normalized;
    if (statistic.kind == Statistic::Kind::Kendall) {
        d.values = detail::kendall_exact_values(n);  // already sorted ascending
    } else {
        const auto coeffs = detail::WrcCoefficients::build(statistic.variant, n);
        d.values = detail::enumerate_values(coeffs, threads);
    }
    if (normalized) {
        const double root = std::sqrt(static_cast<double>(n));
        for (double& v : d.values) v *= root;
    }
    std::sort(d.values.begin(), d.values.end());
    return d;
}

NullDistribution exact_null(const WrcVariant& variant, int n, bool normalized, int cap, int threads) {
    return exact_null(Statistic::wrc(variant), n, normalized, cap, threads);
}

std::vector<NullDistribution> mc_null_multi(std::span<const Statistic> statistics, int n, long reps,
                                            uint64_t seed, bool normalized, int threads) {
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "mc null needs n >= 2");
    if (reps < 1000) throw Error(ErrorCode::InsufficientReps, "mc null needs at least 1000 replicates");

    const size_t k = statistics.size();
    std::vector<detail::WrcCoefficients> coeffs(k);
    for (size_t j = 0; j < k; ++j)
        if (statistics[j].kind == Statistic::Kind::Wrc)
            coeffs[j] = detail::WrcCoefficients::build(statistics[j].variant, n);

    std::vector<std::vector<double>> values(k, std::vector<double>(static_cast<size_t>(reps)));
    constexpr long kChunk = 8192;
    const int units = static_cast<int>((reps + kChunk - 1) / kChunk);
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;

    detail::run_units(units, threads, [&](int u) {
        Rng rng = Rng::stream(seed, 0x6d636e756c6cull /* "mcnull" */, static_cast<uint64_t>(u));
        std::vector<int> perm(static_cast<size_t>(n));
        std::vector<int> inva, invbuf;
        const long lo = static_cast<long>(u) * kChunk;
        const long hi = std::min(reps, lo + kChunk);
        for (long r = lo; r < hi; ++r) {
            std::iota(perm.begin(), perm.end(), 1);
            shuffle(perm, rng);
            for (size_t j = 0; j < k; ++j) {
                double v;
                if (statistics[j].kind == Statistic::Kind::Kendall) {
                    const long long inv = detail::inversions(perm, inva, invbuf);
                    v = static_cast<double>(pairs - 2 * inv) / static_cast<double>(pairs);
                } else {
                    v = coeffs[j].evaluate(perm);
                }
                values[j][static_cast<size_t>(r)] = v;
            }
        }
    });

    std::vector<NullDistribution> out(k);
    const double root = std::sqrt(static_cast<double>(n));
    for (size_t j = 0; j < k; ++j) {
        out[j].statistic = statistics[j];
        out[j].n = n;
        out[j].kind = NullKind::MonteCarlo;
        out[j].normalized = normalized;
        out[j].seed = seed;
        out[j].values = std::move(values[j]);
        if (normalized)
            for (double& v : out[j].values) v *= root;
        std::sort(out[j].values.begin(), out[j].values.end());
    }
    return out;
}

NullDistribution mc_null(const Statistic& statistic, int n, long reps, uint64_t seed, bool normalized,
                         int threads) {
    return std::move(mc_null_multi(std::span<const Statistic>(&statistic, 1), n, reps, seed, normalized, threads)
                         .front());
}

NullDistribution mc_null(const WrcVariant& variant, int n, long reps, uint64_t seed, bool normalized,
                         int threads) {
    return mc_null(Statistic::wrc(variant), n, reps, seed, normalized, threads);
}

namespace {

long double power_sum(int n, int p) {
    long double s = 0.0L;
    for (int i = 1; i <= n; ++i) s += std::pow(static_cast<long double>(i), p);
    return s;
}

// Exact rational functions for n * var(nu) of the symmetrised variants,
// p = 2..5.  Evaluated exactly in long double (integer coefficients, n <= a
// few hundred keeps every product well inside the 64-bit mantissa).
long double sym_normalized_variance(Tail tail, int p, long double n) {
    const long double sign = tail == Tail::Lower ? 1.0L : -1.0L;
    // Denominator (n+1)^2 (n-1) for the lower tail becomes (n-1)^3 for the
    // upper tail; the odd-degree numerator coefficients flip sign with it.
    switch (p) {
        case 2: {
            const long double num = 31.0L * n * n + sign * 60.0L * n + 26.0L;
            const long double den = tail == Tail::Lower ? (n + 1) * (n + 1) * (n - 1) : (n - 1) * (n - 1) * (n - 1);
            return n / 30.0L * num / den;
        }
        case 3: {
            const long double num =
                621.0L * n * n * n * n * n + sign * 1995.0L * n * n * n * n + 1902.0L * n * n * n +
                sign * 420.0L * n * n - 44.0L * n;
            const long double f1 = 3.0L * n + sign * 1.0L;
            const long double f2 = 3.0L * n + sign * 4.0L;
            return num / (7.0L * f1 * f1 * f2 * f2 * (n - 1));
        }
        case 4: {
            const long double num = 112.0L * std::pow(n, 6) + sign * 486.0L * std::pow(n, 5) +
                                    658.0L * std::pow(n, 4) + sign * 162.0L * std::pow(n, 3) -
                                    195.0L * n * n - sign * 24.0L * n + 34.0L;
            const long double q = 4.0L * n * n + sign * 5.0L * n - 1.0L;
            const long double den =
                tail == Tail::Lower ? q * q * (n - 1) * (n + 1) * (n + 1) : q * q * (n - 1) * (n - 1) * (n - 1);
            return n / 6.0L * num / den;
        }
        case 5: {
            const long double num = 4100.0L * std::pow(n, 8) + sign * 22176.0L * std::pow(n, 7) +
                                    38244.0L * std::pow(n, 6) + sign * 10164.0L * std::pow(n, 5) -
                                    27789.0L * std::pow(n, 4) - sign * 7623.0L * std::pow(n, 3) +
                                    15298.0L * n * n + sign * 924.0L * n - 2676.0L;
            const long double q = 10.0L * std::pow(n, 4) + sign * 28.0L * std::pow(n, 3) +
                                  17.0L * n * n - sign * 7.0L * n - 4.0L;
            return n / 33.0L * num / ((n - 1) * q * q);
        }
        default:
            throw Error(ErrorCode::UnsupportedCombination, "no closed-form variance for this p");
    }
}

}  // namespace

NullMoments null_moments(const WrcVariant& variant, int n, int cap, int threads) {
    validate(variant);
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "null moments need n >= 2");
    const int p = variant.p;

    if (!variant.symmetrized) {
        // var(nu) = n(n+1)/3 * (kappa_{m,2p} - kappa_{m,p}^2 / n) / denom^2
        // with m = n for the lower tail and m = n-1 for the upper tail.
        const int m = variant.tail == Tail::Lower ? n : n - 1;
        const long double kp = power_sum(m, p);
        const long double k2p = power_sum(m, 2 * p);
        const long double kp1 = power_sum(m, p + 1);
        const long double denom = 2.0L * kp1 - (variant.tail == Tail::Lower ? (n + 1) : (n - 1)) * kp;
        const long double var =
            static_cast<long double>(n) * (n + 1) / 3.0L * (k2p - kp * kp / n) / (denom * denom);
        return {0.0, static_cast<double>(var)};
    }

    if (p == 1) return {0.0, 1.0 / static_cast<double>(n - 1)};
    if (p <= 5)
        return {0.0, static_cast<double>(sym_normalized_variance(variant.tail, p, n) / n)};

    if (n <= cap && cap <= kMaxExactCap) {
        const auto coeffs = detail::WrcCoefficients::build(variant, n);
        const auto m = detail::enumerate_moments(std::span<const detail::WrcCoefficients>(&coeffs, 1), threads);
        return {m.front().mean(coeffs), m.front().variance(coeffs)};
    }
    throw Error(ErrorCode::UnsupportedCombination,
                "symmetrised variance with p > 5 is only available by enumeration (n <= cap)");
}

double asymptotic_sd(const WrcVariant& variant) {
    validate(variant);
    const double p = variant.p;
    if (!variant.symmetrized) return (p + 2.0) / std::sqrt(3.0 * (2.0 * p + 1.0));
    return std::sqrt((p * p + 10.0 * p + 7.0) / (6.0 * (2.0 * p + 1.0)));
}

double quantile(const NullDistribution& dist, double r) {
    if (dist.values.empty()) throw Error(ErrorCode::EmptyDistribution, "quantile of an empty distribution");
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::ROutOfRange, "quantile level must lie in (0,1)");
    const size_t n = dist.values.size();
    const long double t = static_cast<long double>(n) * static_cast<long double>(r);
    const auto nearest = std::llround(static_cast<double>(t));
    if (std::fabs(static_cast<double>(t - static_cast<long double>(nearest))) < 1e-6 && nearest >= 1 &&
        nearest < static_cast<long long>(n)) {
        const size_t j = static_cast<size_t>(nearest);
        return 0.5 * (dist.values[j - 1] + dist.values[j]);
    }
    auto j = static_cast<long long>(std::floor(static_cast<double>(t)));  // return x_(j+1), clamped
    j = std::min<long long>(j, static_cast<long long>(n) - 1);
    return dist.values[static_cast<size_t>(j)];
}

double asymptotic_quantile(const WrcVariant& variant, double r) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::ROutOfRange, "quantile level must lie in (0,1)");
    return std_normal_quantile(r) * asymptotic_sd(variant);
}

namespace {

// Largest support value c with P(null >= c) >= alpha (add-one adjusted for a
// Monte Carlo null), so that `value > c` and `p-value < alpha` agree exactly.
double consistent_critical_value(const NullDistribution& dist, double alpha, bool add_one) {
    const auto& v = dist.values;
    const double n = static_cast<double>(v.size());
    size_t i = v.size();
    double ge = 0.0;
    while (i > 0) {
        size_t j = i;
        while (j > 0 && v[j - 1] == v[i - 1]) --j;
        ge += static_cast<double>(i - j);
        const double p = add_one ? (1.0 + ge) / (n + 1.0) : ge / n;
        if (p >= alpha) return v[i - 1];
        i = j;
    }
    return v.front();
}

double tail_count_ge(const NullDistribution& dist, double obs) {
    const auto it = std::lower_bound(dist.values.begin(), dist.values.end(), obs);
    return static_cast<double>(dist.values.end() - it);
}

}  // namespace

TestReport independence_test(std::span<const double> x, std::span<const double> y,
                             const WrcVariant& variant, const TestMethod& method, double alpha,
                             int cap, int threads) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::ROutOfRange, "alpha must lie in (0,1)");
    const RankPairing pairing = prepare_pairing(x, y);
    const int n = pairing.n();

    TestReport rep;
    rep.variant = variant;
    rep.n = n;
    rep.alpha = alpha;
    rep.method = method.kind;
    rep.statistic = nu(variant, pairing);
    rep.normalized_statistic = rep.statistic * std::sqrt(static_cast<double>(n));

    switch (method.kind) {
        case TestMethodKind::Exact: {
            const NullDistribution dist = exact_null(variant, n, false, cap, threads);
            rep.p_value = tail_count_ge(dist, rep.statistic) * dist.atom();
            rep.critical_value = consistent_critical_value(dist, alpha, false);
            break;
        }
        case TestMethodKind::MonteCarloNull: {
            const NullDistribution dist = mc_null(variant, n, method.reps, method.seed, false, threads);
            rep.p_value = (1.0 + tail_count_ge(dist, rep.statistic)) / (static_cast<double>(method.reps) + 1.0);
            rep.critical_value = consistent_critical_value(dist, alpha, true);
            break;
        }
        case TestMethodKind::Asymptotic: {
            const double sd = asymptotic_sd(variant);
            rep.p_value = 1.0 - std_normal_cdf(rep.normalized_statistic / sd);
            rep.critical_value = std_normal_quantile(1.0 - alpha) * sd / std::sqrt(static_cast<double>(n));
            break;
        }
    }
    rep.reject = rep.p_value < alpha;
    return rep;
}

// --- serialization -------------------------------------------------------

void write_csv(const NullDistribution& dist, std::ostream& out) {
    out << "value,cumulative_probability\n";
    const double n = static_cast<double>(dist.values.size());
    char line[64];
    for (size_t i = 0; i < dist.values.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", dist.values[i], static_cast<double>(i + 1) / n);
        out << line;
    }
}

std::string cache_file_name(const Statistic& statistic, int n, NullKind kind, bool normalized,
                            uint64_t reps, std::optional<uint64_t> seed) {
    std::ostringstream name;
    name << "null-" << statistic_name(statistic);
    if (statistic.kind == Statistic::Kind::Wrc) name << "-p" << statistic.variant.p;
    name << "-n" << n << (kind == NullKind::Exact ? "-exact" : "-mc") << "-reps" << reps;
    if (seed) name << "-seed" << *seed;
    name << (normalized ? "-norm" : "-raw") << "-v" << kCodeVersion << ".bin";
    return name.str();
}

namespace {

constexpr char kMagic[9] = "WRCNUL01";

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
bool get(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return bool(in);
}

}  // namespace

std::string save_cache(const NullDistribution& dist, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::string path =
        (std::filesystem::path(dir) /
         cache_file_name(dist.statistic, dist.n, dist.kind, dist.normalized,
                         static_cast<uint64_t>(dist.values.size()), dist.seed))
            .string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open cache file for writing: " + path);
    out.write(kMagic, 8);
    const uint32_t vlen = static_cast<uint32_t>(kCodeVersion.size());
    put(out, vlen);
    out.write(kCodeVersion.data(), vlen);
    put(out, static_cast<uint8_t>(dist.statistic.kind == Statistic::Kind::Kendall ? 1 : 0));
    put(out, static_cast<uint8_t>(dist.statistic.variant.tail == Tail::Upper ? 1 : 0));
    put(out, static_cast<uint8_t>(dist.statistic.variant.symmetrized ? 1 : 0));
    put(out, static_cast<int32_t>(dist.statistic.variant.p));
    put(out, static_cast<int32_t>(dist.n));
    put(out, static_cast<uint8_t>(dist.kind == NullKind::Exact ? 0 : 1));
    put(out, static_cast<uint8_t>(dist.normalized ? 1 : 0));
    put(out, static_cast<uint8_t>(dist.seed.has_value() ? 1 : 0));
    put(out, static_cast<uint64_t>(dist.seed.value_or(0)));
    put(out, static_cast<uint64_t>(dist.values.size()));
    out.write(reinterpret_cast<const char*>(dist.values.data()),
              static_cast<std::streamsize>(dist.values.size() * sizeof(double)));
    return path;
}

std::optional<NullDistribution> load_cache(const std::string& dir, const Statistic& statistic, int n,
                                           NullKind kind, bool normalized, uint64_t reps,
                                           std::optional<uint64_t> seed) {
    const std::string path =
        (std::filesystem::path(dir) / cache_file_name(statistic, n, kind, normalized, reps, seed)).string();
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    in.read(magic, 8);
    if (!in || std::string_view(magic, 8) != std::string_view(kMagic, 8)) return std::nullopt;
    uint32_t vlen = 0;
    if (!get(in, vlen) || vlen > 64) return std::nullopt;
    std::string version(vlen, '\0');
    in.read(version.data(), vlen);
    if (!in || version != kCodeVersion) return std::nullopt;
    uint8_t stat_kind, tail, sym, exact_kind, norm, has_seed;
    int32_t p, file_n;
    uint64_t file_seed, count;
    if (!get(in, stat_kind) || !get(in, tail) || !get(in, sym) || !get(in, p) || !get(in, file_n) ||
        !get(in, exact_kind) || !get(in, norm) || !get(in, has_seed) || !get(in, file_seed) || !get(in, count))
        return std::nullopt;

    NullDistribution d;
    d.statistic = stat_kind ? Statistic::kendall()
                            : Statistic::wrc({tail ? Tail::Upper : Tail::Lower, sym != 0, p});
    d.n = file_n;
    d.kind = exact_kind ? NullKind::MonteCarlo : NullKind::Exact;
    d.normalized = norm != 0;
    if (has_seed) d.seed = file_seed;
    if (!(d.statistic == statistic) || d.n != n || d.kind != kind || d.normalized != normalized ||
        count != reps || (seed.has_value() != (has_seed != 0)) || (seed && *seed != file_seed))
        return std::nullopt;
    d.values.resize(count);
    in.read(reinterpret_cast<char*>(d.values.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) return std::nullopt;
    return d;
}

}  // namespace wrc
