#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wrc/power_sim.hpp"

using namespace wrc;

namespace {

size_t stat_index(const PowerStudyConfig& cfg, const Statistic& s) {
    for (size_t j = 0; j < cfg.statistics.size(); ++j)
        if (cfg.statistics[j] == s) return j;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("default statistic set matches the reporting layout") {
    const auto stats = PowerStudyConfig::default_statistics();
    REQUIRE(stats.size() == 10);
    CHECK(stats[0] == Statistic::wrc(WrcVariant::lower(5, true)));
    CHECK(stats[3] == Statistic::wrc(WrcVariant::lower(2, true)));
    CHECK(stats[4] == Statistic::wrc(WrcVariant::upper(5, true)));
    CHECK(stats[8] == Statistic::spearman());
    CHECK(stats[9] == Statistic::kendall());
}

TEST_CASE("critical value resolution") {
    // exact table: the 90% point of the normalized Spearman null at n=5,
    // rescaled to the raw statistic
    const double crit = resolve_critical_value(Statistic::spearman(), 5, 0.10, CriticalSource::ExactTable);
    CHECK(crit == doctest::Approx(1.565 / std::sqrt(5.0)).epsilon(1e-3));
    CHECK(crit == doctest::Approx(0.6999).epsilon(1e-3));

    const double asym = resolve_critical_value(Statistic::spearman(), 400, 0.05, CriticalSource::Asymptotic);
    CHECK(asym == doctest::Approx(1.6449 / 20.0).epsilon(1e-4));

    const double kend = resolve_critical_value(Statistic::kendall(), 50, 0.05, CriticalSource::Asymptotic);
    CHECK(kend == doctest::Approx(1.6449 * std::sqrt(210.0 / 22050.0)).epsilon(1e-4));

    const double mc = resolve_critical_value(Statistic::spearman(), 50, 0.05, CriticalSource::MCNull, 50000, 7);
    const double asy50 = resolve_critical_value(Statistic::spearman(), 50, 0.05, CriticalSource::Asymptotic);
    CHECK(mc == doctest::Approx(asy50).epsilon(0.05));

    // normal criticals with the exact finite-n sd; Kendall's version always
    // carries the exact variance, so both sources agree there
    const double en = resolve_critical_value(Statistic::spearman(), 50, 0.05, CriticalSource::ExactVarNormal);
    CHECK(en == doctest::Approx(1.6448536 * std::sqrt(1.0 / 49.0)).epsilon(1e-6));
    CHECK(en > asy50);  // the exact sd exceeds the limiting sd at finite n
    CHECK(resolve_critical_value(Statistic::kendall(), 50, 0.05, CriticalSource::ExactVarNormal) ==
          resolve_critical_value(Statistic::kendall(), 50, 0.05, CriticalSource::Asymptotic));

    CHECK_THROWS_AS(resolve_critical_value(Statistic::spearman(), 50, 0.05, CriticalSource::MCNull, 1500, 7),
                    Error);
    CHECK_THROWS_AS(resolve_critical_value(Statistic::spearman(), 50, 0.05, CriticalSource::ExactTable), Error);
}

TEST_CASE("power study: reproducibility, level, monotonicity") {
    PowerStudyConfig cfg;
    cfg.family = CopulaFamily::Gaussian;
    cfg.thetas = {0.0, 0.5};
    cfg.n = 50;
    cfg.reps = 2000;
    cfg.alpha = 0.05;
    cfg.critical_source = CriticalSource::MCNull;
    cfg.null_reps = 20000;
    cfg.null_seed = 404;
    cfg.seed = 2718;

    const auto report = run_power_study(cfg);
    REQUIRE(report.cells.size() == 2 * cfg.statistics.size());
    REQUIRE(report.critical_values.size() == cfg.statistics.size());

    const auto report2 = run_power_study(cfg);
    for (size_t i = 0; i < report.cells.size(); ++i) {
        CHECK(report.cells[i].rejection_rate == report2.cells[i].rejection_rate);
        CHECK(report.cells[i].rho_s == report2.cells[i].rho_s);
    }

    // population Spearman column: (6/pi) asin(theta/2)
    CHECK(report.cell(0, 0).rho_s == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(report.cell(1, 0).rho_s ==
          doctest::Approx(6.0 / 3.14159265358979323846 * std::asin(0.25)).epsilon(1e-5));

    const double slack = 4.0 * std::sqrt(0.05 * 0.95 / static_cast<double>(cfg.reps));
    for (size_t j = 0; j < cfg.statistics.size(); ++j) {
        const auto& null_cell = report.cell(0, j);
        CHECK(null_cell.rejection_rate == doctest::Approx(0.05).epsilon(slack / 0.05));
        CHECK(null_cell.binomial_se ==
              doctest::Approx(std::sqrt(null_cell.rejection_rate * (1 - null_cell.rejection_rate) / cfg.reps)));
        // power rises with dependence
        CHECK(report.cell(1, j).rejection_rate > null_cell.rejection_rate + 0.2);
    }

    // asymptotic and exact-variance-normal criticals keep the level as well
    for (auto source : {CriticalSource::Asymptotic, CriticalSource::ExactVarNormal}) {
        PowerStudyConfig alt = cfg;
        alt.thetas = {0.0};
        alt.critical_source = source;
        const auto alt_report = run_power_study(alt);
        for (size_t j = 0; j < alt.statistics.size(); ++j)
            CHECK(std::fabs(alt_report.cell(0, j).rejection_rate - 0.05) <= slack);
    }
}

TEST_CASE("tail emphasis shows up in power") {
    PowerStudyConfig cfg;
    cfg.n = 50;
    cfg.reps = 2000;
    cfg.critical_source = CriticalSource::MCNull;
    cfg.null_reps = 20000;
    cfg.null_seed = 99;
    cfg.seed = 31337;

    cfg.family = CopulaFamily::Clayton;
    cfg.thetas = {0.75};
    const auto clayton = run_power_study(cfg);
    const size_t sl5 = stat_index(cfg, Statistic::wrc(WrcVariant::lower(5, true)));
    const size_t su5 = stat_index(cfg, Statistic::wrc(WrcVariant::upper(5, true)));
    CHECK(clayton.cell(0, sl5).rejection_rate > clayton.cell(0, su5).rejection_rate);

    cfg.family = CopulaFamily::Gumbel;
    cfg.thetas = {1.4};
    const auto gumbel = run_power_study(cfg);
    CHECK(gumbel.cell(0, su5).rejection_rate > gumbel.cell(0, sl5).rejection_rate);
}

TEST_CASE("exact-table source at small n") {
    PowerStudyConfig cfg;
    cfg.family = CopulaFamily::Frank;
    cfg.thetas = {5.0};
    cfg.n = 8;
    cfg.reps = 1000;
    cfg.critical_source = CriticalSource::ExactTable;
    cfg.statistics = {Statistic::spearman(), Statistic::kendall(), Statistic::wrc(WrcVariant::lower(2))};
    cfg.seed = 5;
    const auto report = run_power_study(cfg);
    for (const auto& cell : report.cells) {
        CHECK(cell.rejection_rate > 0.1);  // strong dependence is visible even at n = 8
        CHECK(cell.rejection_rate <= 1.0);
    }
}

TEST_CASE("configuration validation") {
    PowerStudyConfig cfg;
    cfg.thetas = {0.5};
    cfg.reps = 999;
    CHECK_THROWS_AS(run_power_study(cfg), Error);
    cfg.reps = 1000;
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(run_power_study(cfg), Error);
    cfg.alpha = 0.05;
    cfg.thetas = {};
    CHECK_THROWS_AS(run_power_study(cfg), Error);
    cfg.thetas = {-3.0};  // out of the Clayton domain
    CHECK_THROWS_AS(run_power_study(cfg), Error);
}

TEST_CASE("report serialization") {
    PowerStudyConfig cfg;
    cfg.family = CopulaFamily::Gaussian;
    cfg.thetas = {0.3};
    cfg.n = 10;
    cfg.reps = 1000;
    cfg.critical_source = CriticalSource::Asymptotic;
    cfg.statistics = {Statistic::spearman(), Statistic::kendall()};
    const auto report = run_power_study(cfg);
    std::ostringstream csv;
    write_csv(report, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("family,theta,rho_s,statistic,p,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("spearman") != std::string::npos);
    CHECK(text.find("gaussian") != std::string::npos);
}
