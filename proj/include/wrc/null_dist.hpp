#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wrc/rank_core.hpp"
#include "wrc/variant.hpp"

namespace wrc {

inline constexpr std::string_view kCodeVersion = "0.1.0";

inline constexpr int kDefaultExactCap = 10;
// n = 11 means 39,916,800 statistic evaluations and a ~320 MB value table;
// callers must raise the cap explicitly to get it.
inline constexpr int kMaxExactCap = 11;

enum class NullKind { Exact, MonteCarlo };

/// A finite null distribution of a rank statistic under independence: either
/// every permutation's value (atom 1/n!) or a seeded Monte Carlo sample.
struct NullDistribution {
    Statistic statistic{};
    int n = 0;
    NullKind kind = NullKind::Exact;
    bool normalized = false;  // values are sqrt(n) * statistic when set
    std::optional<uint64_t> seed{};
    std::vector<double> values;  // sorted ascending

    double atom() const { return 1.0 / static_cast<double>(values.size()); }
    double mean() const;
    double variance() const;
};

namespace detail {

/// Exact accumulated moments of (offset - T) over all permutations.
struct EnumMoments {
    int128 dev_sum = 0;
    int128 dev_sq_sum = 0;
    uint64_t count = 0;
    double mean(const WrcCoefficients& c) const;
    double variance(const WrcCoefficients& c) const;
};

/// One pass over all n! permutations updating every statistic in O(1) per
/// Heap transposition.  Work is partitioned by the first element into n
/// independent units; the merged result does not depend on the partitioning.
std::vector<EnumMoments> enumerate_moments(std::span<const WrcCoefficients> stats, int threads = 0);

/// All n! values of a single statistic, unsorted, unit-major order.
std::vector<double> enumerate_values(const WrcCoefficients& c, int threads = 0);

uint64_t factorial(int n);

}  // namespace detail

/// Exact null distribution over all n! equally likely rank pairings.
NullDistribution exact_null(const WrcVariant& variant, int n, bool normalized,
                            int cap = kDefaultExactCap, int threads = 0);
NullDistribution exact_null(const Statistic& statistic, int n, bool normalized,
                            int cap = kDefaultExactCap, int threads = 0);

/// Monte Carlo null distribution from `reps` uniformly random pairings.
/// Reproducible for a fixed seed regardless of thread count.
NullDistribution mc_null(const WrcVariant& variant, int n, long reps, uint64_t seed,
                         bool normalized, int threads = 0);
NullDistribution mc_null(const Statistic& statistic, int n, long reps, uint64_t seed,
                         bool normalized, int threads = 0);

/// Same permutation stream evaluated for several statistics at once;
/// element i is bit-identical to mc_null(statistics[i], ...).
std::vector<NullDistribution> mc_null_multi(std::span<const Statistic> statistics, int n, long reps,
                                            uint64_t seed, bool normalized, int threads = 0);

struct NullMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact null mean (always zero) and variance of the raw statistic.
/// Non-symmetrised variants use the closed form for any p; symmetrised
/// variants use the exact rational functions for p <= 5 and fall back to
/// enumeration for p > 5 with n <= cap.
NullMoments null_moments(const WrcVariant& variant, int n, int cap = kDefaultExactCap,
                         int threads = 0);

/// Asymptotic standard deviation of sqrt(n) * nu under independence.
double asymptotic_sd(const WrcVariant& variant);

/// r-quantile of a stored distribution: with N values and t = N*r, returns
/// (x_(j) + x_(j+1))/2 when t is the integer j, else x_(floor(t)+1)
/// (1-based order statistics, top index clamped to N).
double quantile(const NullDistribution& dist, double r);

/// Large-sample quantile of sqrt(n) * nu: z_r times the asymptotic sd.
double asymptotic_quantile(const WrcVariant& variant, double r);

enum class TestMethodKind { Exact, MonteCarloNull, Asymptotic };

struct TestMethod {
    TestMethodKind kind = TestMethodKind::Asymptotic;
    long reps = 200000;
    uint64_t seed = 1;

    static TestMethod exact() { return {TestMethodKind::Exact, 0, 0}; }
    static TestMethod monte_carlo(long reps, uint64_t seed) { return {TestMethodKind::MonteCarloNull, reps, seed}; }
    static TestMethod asymptotic() { return {TestMethodKind::Asymptotic, 0, 0}; }
};

/// One-sided test of independence against positive dependence: rejects for
/// large nu.  reject <=> statistic > critical_value <=> p_value < alpha.
struct TestReport {
    WrcVariant variant{};
    int n = 0;
    double statistic = 0.0;
    double normalized_statistic = 0.0;
    double critical_value = 0.0;
    double p_value = 1.0;
    double alpha = 0.05;
    TestMethodKind method = TestMethodKind::Asymptotic;
    bool reject = false;

    static constexpr const char* alternative = "greater";
};

TestReport independence_test(std::span<const double> x, std::span<const double> y,
                             const WrcVariant& variant, const TestMethod& method, double alpha,
                             int cap = kDefaultExactCap, int threads = 0);

// --- serialization -------------------------------------------------------

/// CSV with columns value,cumulative_probability.
void write_csv(const NullDistribution& dist, std::ostream& out);

/// File name the cache uses for a given key.
std::string cache_file_name(const Statistic& statistic, int n, NullKind kind, bool normalized,
                            uint64_t reps, std::optional<uint64_t> seed);

/// Write the distribution to `dir` under its cache name; returns the path.
std::string save_cache(const NullDistribution& dist, const std::string& dir);

/// Load a previously cached distribution; nullopt when absent or the key
/// (including code version) does not match.
std::optional<NullDistribution> load_cache(const std::string& dir, const Statistic& statistic, int n,
                                           NullKind kind, bool normalized, uint64_t reps,
                                           std::optional<uint64_t> seed);

}  // namespace wrc
