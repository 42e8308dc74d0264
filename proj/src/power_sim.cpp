#include "wrc/power_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <thread>

#include "wrc/normal.hpp"
#include "wrc/rng.hpp"

namespace wrc {

std::vector<Statistic> PowerStudyConfig::default_statistics() {
    std::vector<Statistic> stats;
    for (int p = 5; p >= 2; --p) stats.push_back(Statistic::wrc(WrcVariant::lower(p, true)));
    for (int p = 5; p >= 2; --p) stats.push_back(Statistic::wrc(WrcVariant::upper(p, true)));
    stats.push_back(Statistic::spearman());
    stats.push_back(Statistic::kendall());
    return stats;
}

double resolve_critical_value(const Statistic& statistic, int n, double alpha, CriticalSource source,
                              long null_reps, uint64_t null_seed, int exact_cap, int threads) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::ROutOfRange, "alpha must lie in (0,1)");
    switch (source) {
        case CriticalSource::ExactTable:
            return quantile(exact_null(statistic, n, false, exact_cap, threads), 1.0 - alpha);
        case CriticalSource::MCNull: {
            if (static_cast<double>(null_reps) < 100.0 / alpha)
                throw Error(ErrorCode::InsufficientNullReps,
                            "Monte Carlo critical values need at least 100/alpha null replicates");
            return quantile(mc_null(statistic, n, null_reps, null_seed, false, threads), 1.0 - alpha);
        }
        case CriticalSource::Asymptotic: {
            if (statistic.kind == Statistic::Kind::Kendall) {
                // Exact null sd of tau: sqrt((4n+10)/(9n(n-1))).
                const double sd = std::sqrt((4.0 * n + 10.0) / (9.0 * n * (n - 1.0)));
                return std_normal_quantile(1.0 - alpha) * sd;
            }
            return asymptotic_quantile(statistic.variant, 1.0 - alpha) / std::sqrt(static_cast<double>(n));
        }
        case CriticalSource::ExactVarNormal: {
            if (statistic.kind == Statistic::Kind::Kendall) {
                const double sd = std::sqrt((4.0 * n + 10.0) / (9.0 * n * (n - 1.0)));
                return std_normal_quantile(1.0 - alpha) * sd;
            }
            return std_normal_quantile(1.0 - alpha) * std::sqrt(null_moments(statistic.variant, n).variance);
        }
    }
    throw Error(ErrorCode::MethodUnavailable, "unknown critical value source");
}

namespace {

// Ranks of a column of distinct doubles; scratch-buffer variant of
// prepare_pairing for the hot path.  Ties have probability zero under every
// family here and are rejected upstream if they ever occur.
void ranks_into(const std::vector<double>& col, std::vector<int>& idx, std::vector<int>& rank) {
    const int n = static_cast<int>(col.size());
    idx.resize(static_cast<size_t>(n));
    rank.resize(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return col[static_cast<size_t>(a)] < col[static_cast<size_t>(b)]; });
    for (int k = 0; k < n; ++k) {
        if (k > 0 && col[static_cast<size_t>(idx[static_cast<size_t>(k - 1)])] == col[static_cast<size_t>(idx[static_cast<size_t>(k)])])
            throw Error(ErrorCode::TiesPresent, "tied draws in a simulated sample");
        rank[static_cast<size_t>(idx[static_cast<size_t>(k)])] = k + 1;
    }
}

long long inversion_count(std::vector<int>& a, std::vector<int>& buf) {
    long long inv = 0;
    buf.resize(a.size());
    for (size_t width = 1; width < a.size(); width *= 2) {
        for (size_t lo = 0; lo + width < a.size(); lo += 2 * width) {
            const size_t mid = lo + width;
            const size_t hi = std::min(lo + 2 * width, a.size());
            size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (a[i] <= a[j])
                    buf[k++] = a[i++];
                else {
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

struct CellCounts {
    std::vector<long> rejections;  // one per statistic
};

}  // namespace

PowerReport run_power_study(const PowerStudyConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw Error(ErrorCode::ROutOfRange, "alpha must lie in (0,1)");
    if (config.reps < 1000) throw Error(ErrorCode::InsufficientReps, "power studies need reps >= 1000");
    if (config.thetas.empty()) throw Error(ErrorCode::ParameterOutOfDomain, "no theta values given");
    if (config.statistics.empty()) throw Error(ErrorCode::ParameterOutOfDomain, "no statistics given");
    if (config.n < 2) throw Error(ErrorCode::DegenerateSize, "sample size must be >= 2");

    const size_t n_stats = config.statistics.size();
    const size_t n_thetas = config.thetas.size();

    // Validate every theta up front.
    std::vector<CopulaModel> models;
    models.reserve(n_thetas);
    for (double th : config.thetas) models.push_back(CopulaModel::make(config.family, th));

    // Critical values: with an MC null the whole statistic set shares one
    // permutation stream (mc_null_multi is bit-identical to per-statistic
    // mc_null calls with the same seed).
    std::vector<double> crit(n_stats);
    if (config.critical_source == CriticalSource::MCNull) {
        if (static_cast<double>(config.null_reps) < 100.0 / config.alpha)
            throw Error(ErrorCode::InsufficientNullReps,
                        "Monte Carlo critical values need at least 100/alpha null replicates");
        const auto nulls = mc_null_multi(config.statistics, config.n, config.null_reps, config.null_seed,
                                         false, config.threads);
        for (size_t j = 0; j < n_stats; ++j) crit[j] = quantile(nulls[j], 1.0 - config.alpha);
    } else {
        for (size_t j = 0; j < n_stats; ++j)
            crit[j] = resolve_critical_value(config.statistics[j], config.n, config.alpha,
                                             config.critical_source, config.null_reps, config.null_seed,
                                             config.exact_cap, config.threads);
    }

    // Population Spearman coefficient per theta (the tables' second column).
    std::vector<double> rho_s(n_thetas);
    for (size_t t = 0; t < n_thetas; ++t)
        rho_s[t] = population_nu(WrcVariant::spearman(), models[t], PopMethod::Quadrature).value;

    std::vector<detail::WrcCoefficients> coeffs(n_stats);
    for (size_t j = 0; j < n_stats; ++j)
        if (config.statistics[j].kind == Statistic::Kind::Wrc)
            coeffs[j] = detail::WrcCoefficients::build(config.statistics[j].variant, config.n);

    constexpr long kChunk = 1024;
    const long chunks = (config.reps + kChunk - 1) / kChunk;
    const long long pairs = static_cast<long long>(config.n) * (config.n - 1) / 2;

    // theta-major grid of per-chunk rejection counts, merged deterministically.
    std::vector<std::vector<CellCounts>> counts(n_thetas);
    for (auto& c : counts) c.assign(static_cast<size_t>(chunks), CellCounts{std::vector<long>(n_stats, 0)});

    const long total_units = static_cast<long>(n_thetas) * chunks;
    std::atomic<long> next_unit{0};
    auto worker = [&] {
        std::vector<std::pair<double, double>> uv(static_cast<size_t>(config.n));
        std::vector<double> xs(static_cast<size_t>(config.n)), ys(static_cast<size_t>(config.n));
        std::vector<int> idx, xr, yr, s(static_cast<size_t>(config.n)), inva, invbuf;
        for (;;) {
            const long unit = next_unit.fetch_add(1);
            if (unit >= total_units) break;
            const size_t t = static_cast<size_t>(unit) / static_cast<size_t>(chunks);
            const long chunk = unit % chunks;
            Rng rng = Rng::stream(config.seed, static_cast<uint64_t>(config.family),
                                  static_cast<uint64_t>(t), static_cast<uint64_t>(chunk));
            auto& out = counts[t][static_cast<size_t>(chunk)].rejections;
            const long lo = chunk * kChunk;
            const long hi = std::min(config.reps, lo + kChunk);
            for (long r = lo; r < hi; ++r) {
                sample_into(models[t], uv, rng);
                for (int i = 0; i < config.n; ++i) {
                    xs[static_cast<size_t>(i)] = uv[static_cast<size_t>(i)].first;
                    ys[static_cast<size_t>(i)] = uv[static_cast<size_t>(i)].second;
                }
                ranks_into(xs, idx, xr);
                ranks_into(ys, idx, yr);
                for (int i = 0; i < config.n; ++i)
                    s[static_cast<size_t>(xr[static_cast<size_t>(i)] - 1)] = yr[static_cast<size_t>(i)];
                double tau = 0.0;
                bool tau_done = false;
                for (size_t j = 0; j < n_stats; ++j) {
                    double value;
                    if (config.statistics[j].kind == Statistic::Kind::Kendall) {
                        if (!tau_done) {
                            inva = s;
                            tau = static_cast<double>(pairs - 2 * inversion_count(inva, invbuf)) /
                                  static_cast<double>(pairs);
                            tau_done = true;
                        }
                        value = tau;
                    } else {
                        value = coeffs[j].evaluate(s);
                    }
                    if (value > crit[j]) ++out[j];
                }
            }
        }
    };

    int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, static_cast<int>(total_units)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    PowerReport report;
    report.config = config;
    report.critical_values = crit;
    report.cells.reserve(n_thetas * n_stats);
    for (size_t t = 0; t < n_thetas; ++t) {
        for (size_t j = 0; j < n_stats; ++j) {
            long rejected = 0;
            for (const auto& chunk : counts[t]) rejected += chunk.rejections[j];
            PowerCell cell;
            cell.theta = config.thetas[t];
            cell.rho_s = rho_s[t];
            cell.statistic = config.statistics[j];
            cell.reps = config.reps;
            cell.rejection_rate = static_cast<double>(rejected) / static_cast<double>(config.reps);
            cell.binomial_se =
                std::sqrt(cell.rejection_rate * (1.0 - cell.rejection_rate) / static_cast<double>(config.reps));
            cell.critical_value = crit[j];
            report.cells.push_back(cell);
        }
    }
    return report;
}

void write_csv(const PowerReport& report, std::ostream& out) {
    out << "family,theta,rho_s,statistic,p,rejection_rate,binomial_se,reps,critical_value,critical_source\n";
    const char* source = report.config.critical_source == CriticalSource::ExactTable ? "exact"
                         : report.config.critical_source == CriticalSource::MCNull   ? "mc"
                         : report.config.critical_source == CriticalSource::Asymptotic ? "asymptotic"
                                                                                       : "exact-normal";
    char line[256];
    for (const auto& c : report.cells) {
        const int p = c.statistic.kind == Statistic::Kind::Wrc ? c.statistic.variant.p : 0;
        std::snprintf(line, sizeof line, "%s,%.9g,%.9g,%s,%d,%.9g,%.9g,%ld,%.9g,%s\n",
                      family_name(report.config.family).c_str(), c.theta, c.rho_s,
                      statistic_name(c.statistic).c_str(), p, c.rejection_rate, c.binomial_se, c.reps,
                      c.critical_value, source);
        out << line;
    }
}

}  // namespace wrc
