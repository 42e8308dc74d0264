// wrc: weighted rank correlation toolkit command line.
//
// Subcommands: compute, null-table, quantiles, test, population, are-table,
// power, curves.  Output is CSV (default) or JSON; every randomised
// subcommand takes --seed and is bit-reproducible.  Exit codes: 0 success,
// 2 input/parse problem, 3 ties in the input data, 4 capability or cap
// limits, 5 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wrc/copulas.hpp"
#include "wrc/efficiency.hpp"
#include "wrc/null_dist.hpp"
#include "wrc/power_sim.hpp"
#include "wrc/rank_core.hpp"

using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string format = "csv";
    std::string output = "-";
    int digits = 9;
    int threads = 0;
};

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void emit(const GlobalOptions& g, const std::string& text) {
    if (g.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output, std::ios::trunc);
    if (!out) throw wrc::Error(wrc::ErrorCode::ParseError, "cannot open output file: " + g.output);
    out << text;
}

int exit_code_for(wrc::ErrorCode code) {
    switch (code) {
        case wrc::ErrorCode::ParseError:
        case wrc::ErrorCode::LengthMismatch:
        case wrc::ErrorCode::ROutOfRange:
        case wrc::ErrorCode::ParameterOutOfDomain:
            return 2;
        case wrc::ErrorCode::TiesPresent:
            return 3;
        case wrc::ErrorCode::Overflow:
        case wrc::ErrorCode::SlopeUnstable:
            return 5;
        default:
            return 4;
    }
}

// --- input parsing ---------------------------------------------------------

bool parse_double(const std::string& tok, double& out) {
    try {
        size_t used = 0;
        out = std::stod(tok, &used);
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        return used == tok.size();
    } catch (const std::exception&) {
        return false;
    }
}

/// Two numeric columns, comma separated, optional header line.
void read_two_columns(const std::string& path, bool no_header, std::vector<double>& x,
                      std::vector<double>& y) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw wrc::Error(wrc::ErrorCode::ParseError, "cannot open input file: " + path);
        in = &file;
    }
    std::string line;
    long line_no = 0;
    while (std::getline(*in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw wrc::Error(wrc::ErrorCode::ParseError,
                             "line " + std::to_string(line_no) + ": expected two comma-separated columns");
        double a, b;
        const bool ok = parse_double(line.substr(0, comma), a) && parse_double(line.substr(comma + 1), b);
        if (!ok) {
            if (line_no == 1 && !no_header) continue;  // tolerated header
            throw wrc::Error(wrc::ErrorCode::ParseError,
                             "line " + std::to_string(line_no) + ": cannot parse numeric values");
        }
        x.push_back(a);
        y.push_back(b);
    }
    if (x.empty()) throw wrc::Error(wrc::ErrorCode::ParseError, "input contains no data rows");
}

std::vector<int> parse_p_list(const std::string& spec) {
    std::vector<int> ps;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto dash = tok.find('-', 1);
        try {
            if (dash != std::string::npos) {
                const int lo = std::stoi(tok.substr(0, dash));
                const int hi = std::stoi(tok.substr(dash + 1));
                if (lo < 1 || hi < lo) throw std::invalid_argument("range");
                for (int p = lo; p <= hi; ++p) ps.push_back(p);
            } else {
                ps.push_back(std::stoi(tok));
            }
        } catch (const std::exception&) {
            throw wrc::Error(wrc::ErrorCode::ParseError, "cannot parse p list: " + spec);
        }
    }
    if (ps.empty()) throw wrc::Error(wrc::ErrorCode::ParseError, "empty p list");
    return ps;
}

std::vector<double> parse_real_list(const std::string& spec, const char* what) {
    std::vector<double> vals;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double v;
        if (!parse_double(tok, v))
            throw wrc::Error(wrc::ErrorCode::ParseError, std::string("cannot parse ") + what + ": " + spec);
        vals.push_back(v);
    }
    if (vals.empty()) throw wrc::Error(wrc::ErrorCode::ParseError, std::string("empty ") + what + " list");
    return vals;
}

/// Statistic names: lower, upper, sym-lower, sym-upper, spearman, kendall.
wrc::Statistic parse_statistic(const std::string& name, int p) {
    using wrc::Statistic;
    using wrc::WrcVariant;
    if (name == "spearman") return Statistic::spearman();
    if (name == "kendall") return Statistic::kendall();
    if (name == "lower") return Statistic::wrc(WrcVariant::lower(p));
    if (name == "upper") return Statistic::wrc(WrcVariant::upper(p));
    if (name == "sym-lower") return Statistic::wrc(WrcVariant::lower(p, true));
    if (name == "sym-upper") return Statistic::wrc(WrcVariant::upper(p, true));
    throw wrc::Error(wrc::ErrorCode::ParseError, "unknown statistic: " + name);
}

uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t flag_value, uint64_t fallback) {
    if (seed_opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("WRC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw wrc::Error(wrc::ErrorCode::ParseError, "WRC_SEED is not an integer");
        }
    }
    return fallback;
}

// --- subcommand implementations ---------------------------------------------

struct ComputeArgs {
    std::string input = "-";
    bool no_header = false;
    std::string variants = "lower,upper,sym-lower,sym-upper";
    std::string p_list = "1-5";
};

void run_compute(const GlobalOptions& g, const ComputeArgs& a) {
    std::vector<double> x, y;
    read_two_columns(a.input, a.no_header, x, y);
    const wrc::RankPairing pairing = wrc::prepare_pairing(x, y);

    struct Row {
        std::string name;
        int p;
        double value;
    };
    std::vector<Row> rows;
    std::stringstream ss(a.variants);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name == "spearman") {
            rows.push_back({name, 1, wrc::spearman(pairing)});
        } else if (name == "kendall") {
            rows.push_back({name, 0, wrc::kendall(pairing)});
        } else {
            for (int p : parse_p_list(a.p_list)) {
                const auto stat = parse_statistic(name, p);
                rows.push_back({name, p, wrc::nu(stat.variant, pairing)});
            }
        }
    }

    if (g.format == "csv") {
        std::ostringstream out;
        out << "statistic,p,value\n";
        for (const auto& r : rows) out << r.name << ',' << r.p << ',' << fmt(r.value, g.digits) << '\n';
        emit(g, out.str());
    } else {
        json rows_json = json::array();
        for (const auto& r : rows) rows_json.push_back({{"statistic", r.name}, {"p", r.p}, {"value", r.value}});
        emit(g, json{{"command", "compute"}, {"n", pairing.n()}, {"rows", rows_json}}.dump(2) + "\n");
    }
}

struct NullTableArgs {
    std::string variant = "spearman";
    int p = 1;
    int n = 5;
    std::string method = "exact";
    long reps = 200000;
    uint64_t seed = 1;
    bool normalized = false;
    int cap = wrc::kDefaultExactCap;
    std::string cache_dir;
};

void run_null_table(const GlobalOptions& g, const NullTableArgs& a, const CLI::Option* seed_opt) {
    const wrc::Statistic stat = parse_statistic(a.variant, a.p);
    const uint64_t seed = resolve_seed(seed_opt, a.seed, 1);
    const bool exact = a.method == "exact";
    if (exact && a.n >= 11)
        std::cerr << "warning: n = " << a.n << " enumerates " << a.n
                  << "! permutations; expect minutes of runtime and hundreds of MB\n";

    wrc::NullDistribution dist;
    const auto kind = exact ? wrc::NullKind::Exact : wrc::NullKind::MonteCarlo;
    const uint64_t count = exact ? wrc::detail::factorial(a.n) : static_cast<uint64_t>(a.reps);
    std::optional<wrc::NullDistribution> cached;
    if (!a.cache_dir.empty())
        cached = wrc::load_cache(a.cache_dir, stat, a.n, kind, a.normalized, count,
                                 exact ? std::nullopt : std::optional<uint64_t>(seed));
    if (cached) {
        dist = std::move(*cached);
    } else {
        dist = exact ? wrc::exact_null(stat, a.n, a.normalized, a.cap, g.threads)
                     : wrc::mc_null(stat, a.n, a.reps, seed, a.normalized, g.threads);
        if (!a.cache_dir.empty()) wrc::save_cache(dist, a.cache_dir);
    }

    if (g.format == "csv") {
        std::ostringstream out;
        wrc::write_csv(dist, out);
        emit(g, out.str());
    } else {
        json rows = json::array();
        const double n = static_cast<double>(dist.values.size());
        for (size_t i = 0; i < dist.values.size(); ++i)
            rows.push_back({{"value", dist.values[i]}, {"cumulative_probability", (i + 1) / n}});
        json doc{{"command", "null-table"},
                 {"statistic", wrc::statistic_name(dist.statistic)},
                 {"p", stat.kind == wrc::Statistic::Kind::Wrc ? json(stat.variant.p) : json(nullptr)},
                 {"n", dist.n},
                 {"kind", exact ? "exact" : "mc"},
                 {"normalized", dist.normalized},
                 {"atom", dist.atom()},
                 {"rows", rows}};
        if (dist.seed) doc["seed"] = *dist.seed;
        emit(g, doc.dump(2) + "\n");
    }
}

struct QuantileArgs {
    std::string variant = "lower";
    std::string p_list = "1-5";
    int n = 5;
    std::string r_list = "0.90,0.95,0.975,0.99";
    std::string method = "exact";
    int cap = wrc::kDefaultExactCap;
};

void run_quantiles(const GlobalOptions& g, const QuantileArgs& a) {
    const bool asymptotic = a.method == "asymptotic";
    const auto rs = parse_real_list(a.r_list, "quantile level");

    struct Row {
        std::string n_text;
        int p;
        double r, q;
    };
    std::vector<Row> rows;
    json jrows = json::array();
    for (int p : parse_p_list(a.p_list)) {
        const auto stat = parse_statistic(a.variant, p);
        if (stat.kind != wrc::Statistic::Kind::Wrc)
            throw wrc::Error(wrc::ErrorCode::ParseError, "quantile tables cover the WRC statistics");
        if (asymptotic) {
            for (double r : rs) {
                rows.push_back({"inf", p, r, wrc::asymptotic_quantile(stat.variant, r)});
                jrows.push_back({{"n", nullptr}, {"p", p}, {"r", r}, {"quantile", rows.back().q}});
            }
        } else {
            const auto dist = wrc::exact_null(stat.variant, a.n, true, a.cap, g.threads);
            for (double r : rs) {
                rows.push_back({std::to_string(a.n), p, r, wrc::quantile(dist, r)});
                jrows.push_back({{"n", a.n}, {"p", p}, {"r", r}, {"quantile", rows.back().q}});
            }
        }
    }

    if (g.format == "csv") {
        std::ostringstream out;
        out << "variant,n,p,r,quantile\n";
        for (const auto& r : rows)
            out << a.variant << ',' << r.n_text << ',' << r.p << ',' << fmt(r.r, g.digits) << ','
                << fmt(r.q, g.digits) << '\n';
        emit(g, out.str());
    } else {
        emit(g, json{{"command", "quantiles"}, {"variant", a.variant}, {"rows", jrows}}.dump(2) + "\n");
    }
}

struct TestArgs {
    std::string input = "-";
    bool no_header = false;
    std::string variant = "spearman";
    int p = 1;
    std::string method = "asymptotic";
    double alpha = 0.05;
    long reps = 200000;
    uint64_t seed = 1;
    int cap = wrc::kDefaultExactCap;
};

void run_test(const GlobalOptions& g, const TestArgs& a, const CLI::Option* seed_opt) {
    const auto stat = parse_statistic(a.variant, a.p);
    if (stat.kind != wrc::Statistic::Kind::Wrc)
        throw wrc::Error(wrc::ErrorCode::ParseError, "the test subcommand covers the WRC statistics");
    std::vector<double> x, y;
    read_two_columns(a.input, a.no_header, x, y);

    wrc::TestMethod method;
    if (a.method == "exact")
        method = wrc::TestMethod::exact();
    else if (a.method == "mc")
        method = wrc::TestMethod::monte_carlo(a.reps, resolve_seed(seed_opt, a.seed, 1));
    else
        method = wrc::TestMethod::asymptotic();

    const auto rep = wrc::independence_test(x, y, stat.variant, method, a.alpha, a.cap, g.threads);
    if (g.format == "csv") {
        std::ostringstream out;
        out << "variant,p,n,statistic,normalized_statistic,critical_value,p_value,alpha,method,alternative,"
               "reject\n";
        out << a.variant << ',' << a.p << ',' << rep.n << ',' << fmt(rep.statistic, g.digits) << ','
            << fmt(rep.normalized_statistic, g.digits) << ',' << fmt(rep.critical_value, g.digits) << ','
            << fmt(rep.p_value, g.digits) << ',' << fmt(rep.alpha, g.digits) << ',' << a.method << ','
            << wrc::TestReport::alternative << ',' << (rep.reject ? 1 : 0) << '\n';
        emit(g, out.str());
    } else {
        emit(g, json{{"command", "test"},
                     {"variant", a.variant},
                     {"p", a.p},
                     {"n", rep.n},
                     {"statistic", rep.statistic},
                     {"normalized_statistic", rep.normalized_statistic},
                     {"critical_value", rep.critical_value},
                     {"p_value", rep.p_value},
                     {"alpha", rep.alpha},
                     {"method", a.method},
                     {"alternative", wrc::TestReport::alternative},
                     {"reject", rep.reject}}
                    .dump(2) +
                    "\n");
    }
}

struct PopulationArgs {
    std::string copula = "cuadras-auge:0.5";
    std::string variant = "lower";
    std::string p_list = "1-5";
    std::string method = "quadrature";
    long reps = 200000;
    uint64_t seed = 1;
};

void run_population(const GlobalOptions& g, const PopulationArgs& a, const CLI::Option* seed_opt) {
    const auto model = wrc::parse_copula(a.copula);
    wrc::PopMethod method = wrc::PopMethod::Quadrature;
    if (a.method == "closed-form") method = wrc::PopMethod::ClosedForm;
    if (a.method == "mc") method = wrc::PopMethod::MonteCarlo;
    const uint64_t seed = resolve_seed(seed_opt, a.seed, 1);

    std::ostringstream csv;
    csv << "family,theta,variant,p,method,value,error_estimate\n";
    json jrows = json::array();
    for (int p : parse_p_list(a.p_list)) {
        const auto stat = parse_statistic(a.variant, p);
        if (stat.kind != wrc::Statistic::Kind::Wrc)
            throw wrc::Error(wrc::ErrorCode::ParseError, "population coefficients cover the WRC statistics");
        const auto c = wrc::population_nu(stat.variant, model, method, a.reps, seed);
        csv << wrc::family_name(model.family) << ',' << fmt(model.theta, g.digits) << ',' << a.variant << ','
            << p << ',' << a.method << ',' << fmt(c.value, g.digits) << ',' << fmt(c.error_estimate, g.digits)
            << '\n';
        jrows.push_back({{"family", wrc::family_name(model.family)},
                         {"theta", model.theta},
                         {"variant", a.variant},
                         {"p", p},
                         {"method", a.method},
                         {"value", c.value},
                         {"error_estimate", c.error_estimate}});
    }
    if (g.format == "csv")
        emit(g, csv.str());
    else
        emit(g, json{{"command", "population"}, {"rows", jrows}}.dump(2) + "\n");
}

struct AreTableArgs {
    int p_max = 13;
    double step = 1e-3;
};

void run_are_table(const GlobalOptions& g, const AreTableArgs& a) {
    const auto table = wrc::are_table(a.p_max, a.step);
    if (g.format == "csv") {
        std::ostringstream out;
        out << "p,ca_lower,ca_upper,ca_sym_lower,ca_sym_upper,clayton_lower,clayton_upper,clayton_sym_lower,"
               "clayton_sym_upper\n";
        for (const auto& row : table) {
            out << row.p;
            for (double v : row.cuadras_auge) out << ',' << fmt(v, g.digits);
            for (double v : row.clayton) out << ',' << fmt(v, g.digits);
            out << '\n';
        }
        emit(g, out.str());
    } else {
        json rows = json::array();
        const char* names[4] = {"lower", "upper", "sym_lower", "sym_upper"};
        for (const auto& row : table) {
            json ca, cl;
            for (int k = 0; k < 4; ++k) {
                ca[names[k]] = row.cuadras_auge[k];
                cl[names[k]] = row.clayton[k];
            }
            rows.push_back({{"p", row.p}, {"cuadras_auge", ca}, {"clayton", cl}});
        }
        emit(g, json{{"command", "are-table"},
                     {"reference", "spearman"},
                     {"are_kendall_vs_spearman", wrc::kKendallVsSpearmanAre},
                     {"slope_step", a.step},
                     {"rows", rows}}
                    .dump(2) +
                    "\n");
    }
}

struct PowerArgs {
    std::string family = "clayton";
    std::string thetas;
    int n = 50;
    long reps = 5000;
    double alpha = 0.05;
    std::string source = "mc";
    long null_reps = 200000;
    uint64_t null_seed = 20250101;
    uint64_t seed = 1;
    bool pivot = false;
};

void run_power(const GlobalOptions& g, const PowerArgs& a, const CLI::Option* seed_opt) {
    wrc::PowerStudyConfig cfg;
    cfg.family = wrc::parse_family(a.family);
    cfg.thetas = parse_real_list(a.thetas, "theta");
    cfg.n = a.n;
    cfg.reps = a.reps;
    cfg.alpha = a.alpha;
    cfg.null_reps = a.null_reps;
    cfg.null_seed = a.null_seed;
    cfg.seed = resolve_seed(seed_opt, a.seed, 1);
    cfg.threads = g.threads;
    if (a.source == "exact") cfg.critical_source = wrc::CriticalSource::ExactTable;
    if (a.source == "asymptotic") cfg.critical_source = wrc::CriticalSource::Asymptotic;
    if (a.source == "exact-normal") cfg.critical_source = wrc::CriticalSource::ExactVarNormal;

    const auto report = wrc::run_power_study(cfg);
    if (g.format == "csv") {
        std::ostringstream out;
        if (a.pivot) {
            out << "theta,rho_s";
            for (const auto& s : cfg.statistics) {
                out << ',' << wrc::statistic_name(s);
                if (s.kind == wrc::Statistic::Kind::Wrc && !(s == wrc::Statistic::spearman()))
                    out << s.variant.p;
            }
            out << '\n';
            for (size_t t = 0; t < cfg.thetas.size(); ++t) {
                out << fmt(cfg.thetas[t], g.digits) << ',' << fmt(report.cell(t, 0).rho_s, g.digits);
                for (size_t j = 0; j < cfg.statistics.size(); ++j)
                    out << ',' << fmt(report.cell(t, j).rejection_rate, g.digits);
                out << '\n';
            }
        } else {
            wrc::write_csv(report, out);
        }
        emit(g, out.str());
    } else {
        json cells = json::array();
        for (const auto& c : report.cells)
            cells.push_back({{"theta", c.theta},
                             {"rho_s", c.rho_s},
                             {"statistic", wrc::statistic_name(c.statistic)},
                             {"p", c.statistic.kind == wrc::Statistic::Kind::Wrc ? json(c.statistic.variant.p)
                                                                                 : json(nullptr)},
                             {"rejection_rate", c.rejection_rate},
                             {"binomial_se", c.binomial_se},
                             {"reps", c.reps},
                             {"critical_value", c.critical_value}});
        emit(g, json{{"command", "power"},
                     {"family", wrc::family_name(cfg.family)},
                     {"n", cfg.n},
                     {"alpha", cfg.alpha},
                     {"reps", cfg.reps},
                     {"seed", cfg.seed},
                     {"critical_source", a.source},
                     {"null_reps", cfg.null_reps},
                     {"null_seed", cfg.null_seed},
                     {"cells", cells}}
                    .dump(2) +
                    "\n");
    }
}

struct CurvesArgs {
    double theta_step = 0.02;
    int panels = 32;
};

void run_curves(const GlobalOptions& g, const CurvesArgs& a) {
    if (!(a.theta_step > 0.0 && a.theta_step <= 0.5))
        throw wrc::Error(wrc::ErrorCode::ParseError, "theta step must lie in (0, 0.5]");
    struct Cell {
        wrc::CopulaFamily family;
        wrc::Tail tail;
        int p;
        double theta;
        double value;
    };
    const std::vector<int> ps = {1, 2, 3, 4, 5, 10};
    std::vector<double> thetas;
    for (double th = 0.0; th < 1.0 + a.theta_step / 2; th += a.theta_step) thetas.push_back(std::min(th, 1.0));

    std::vector<Cell> cells;
    for (auto family : {wrc::CopulaFamily::CuadrasAuge, wrc::CopulaFamily::Raftery})
        for (auto tail : {wrc::Tail::Lower, wrc::Tail::Upper})
            for (int p : ps)
                for (double th : thetas) cells.push_back({family, tail, p, th, 0.0});

    const int threads =
        std::max(1, g.threads > 0 ? g.threads : static_cast<int>(std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            auto& c = cells[i];
            const wrc::WrcVariant v{c.tail, false, c.p};
            const auto model = wrc::CopulaModel::make(c.family, c.theta);
            c.value = c.family == wrc::CopulaFamily::CuadrasAuge
                          ? wrc::population_nu(v, model, wrc::PopMethod::ClosedForm).value
                          : wrc::population_nu(v, model, wrc::PopMethod::Quadrature, 0, 0, a.panels).value;
        }
    };
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    if (g.format == "csv") {
        std::ostringstream out;
        out << "family,variant,p,theta,value\n";
        for (const auto& c : cells)
            out << wrc::family_name(c.family) << ',' << (c.tail == wrc::Tail::Lower ? "lower" : "upper") << ','
                << c.p << ',' << fmt(c.theta, g.digits) << ',' << fmt(c.value, g.digits) << '\n';
        emit(g, out.str());
    } else {
        json rows = json::array();
        for (const auto& c : cells)
            rows.push_back({{"family", wrc::family_name(c.family)},
                            {"variant", c.tail == wrc::Tail::Lower ? "lower" : "upper"},
                            {"p", c.p},
                            {"theta", c.theta},
                            {"value", c.value}});
        emit(g, json{{"command", "curves"}, {"rows", rows}}.dump(2) + "\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted rank correlation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(
        "Seeds resolve as: --seed flag, then the WRC_SEED environment variable, then built-in defaults.\n"
        "Exit codes: 0 ok, 2 input/parse, 3 ties, 4 capability/cap, 5 numerical.");

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output,-o", g.output, "Output file, - for stdout");
    app.add_option("--digits", g.digits, "Significant digits in CSV output")->check(CLI::Range(1, 17));
    app.add_option("--threads", g.threads, "Worker threads for heavy subcommands (0 = auto)");

    ComputeArgs compute;
    auto* compute_cmd = app.add_subcommand("compute", "Rank correlation coefficients of a two-column sample");
    compute_cmd->add_option("--input,-i", compute.input, "Two-column CSV, - for stdin");
    compute_cmd->add_flag("--no-header", compute.no_header, "Input has no header line");
    compute_cmd->add_option("--variant", compute.variants,
                            "Comma list of lower,upper,sym-lower,sym-upper,spearman,kendall");
    compute_cmd->add_option("--p", compute.p_list, "Weight exponents, e.g. 2 or 1,3 or 1-5");

    NullTableArgs nulltab;
    auto* null_cmd = app.add_subcommand("null-table", "Null distribution of a statistic under independence");
    null_cmd->add_option("--variant", nulltab.variant, "Statistic name");
    null_cmd->add_option("--p", nulltab.p, "Weight exponent");
    null_cmd->add_option("--n", nulltab.n, "Sample size");
    null_cmd->add_option("--method", nulltab.method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    null_cmd->add_option("--reps", nulltab.reps, "Monte Carlo replicates");
    auto* null_seed = null_cmd->add_option("--seed", nulltab.seed, "Monte Carlo seed");
    null_cmd->add_flag("--normalized", nulltab.normalized, "Store sqrt(n) * statistic");
    null_cmd->add_option("--cap", nulltab.cap, "Exact enumeration cap (max 11; n = 11 is slow and large)");
    null_cmd->add_option("--cache-dir", nulltab.cache_dir, "Binary cache directory");

    QuantileArgs quant;
    auto* quant_cmd = app.add_subcommand("quantiles", "Null quantiles of the normalized statistics");
    quant_cmd->add_option("--variant", quant.variant, "Statistic name");
    quant_cmd->add_option("--p", quant.p_list, "Weight exponents, e.g. 1-5");
    quant_cmd->add_option("--n", quant.n, "Sample size (exact method)");
    quant_cmd->add_option("--r", quant.r_list, "Comma list of quantile levels");
    quant_cmd->add_option("--method", quant.method, "exact or asymptotic")
        ->check(CLI::IsMember({"exact", "asymptotic"}));
    quant_cmd->add_option("--cap", quant.cap, "Exact enumeration cap");

    TestArgs test;
    auto* test_cmd = app.add_subcommand("test", "One-sided independence test on a two-column sample");
    test_cmd->add_option("--input,-i", test.input, "Two-column CSV, - for stdin");
    test_cmd->add_flag("--no-header", test.no_header, "Input has no header line");
    test_cmd->add_option("--variant", test.variant, "Statistic name");
    test_cmd->add_option("--p", test.p, "Weight exponent");
    test_cmd->add_option("--method", test.method, "exact, mc or asymptotic")
        ->check(CLI::IsMember({"exact", "mc", "asymptotic"}));
    test_cmd->add_option("--alpha", test.alpha, "Significance level");
    test_cmd->add_option("--reps", test.reps, "Monte Carlo null replicates");
    auto* test_seed = test_cmd->add_option("--seed", test.seed, "Monte Carlo seed");
    test_cmd->add_option("--cap", test.cap, "Exact enumeration cap");

    PopulationArgs pop;
    auto* pop_cmd = app.add_subcommand("population", "Population coefficients of a copula model");
    pop_cmd->add_option("--copula", pop.copula, "family:parameter, e.g. clayton:0.75");
    pop_cmd->add_option("--variant", pop.variant, "Statistic name");
    pop_cmd->add_option("--p", pop.p_list, "Weight exponents");
    pop_cmd->add_option("--method", pop.method, "closed-form, quadrature or mc")
        ->check(CLI::IsMember({"closed-form", "quadrature", "mc"}));
    pop_cmd->add_option("--reps", pop.reps, "Monte Carlo draws");
    auto* pop_seed = pop_cmd->add_option("--seed", pop.seed, "Monte Carlo seed");

    AreTableArgs are;
    auto* are_cmd = app.add_subcommand("are-table", "Pitman efficiencies against the Spearman test");
    are_cmd->add_option("--pmax", are.p_max, "Largest weight exponent")->check(CLI::Range(1, 40));
    are_cmd->add_option("--step", are.step, "Numeric slope step");

    PowerArgs power;
    auto* power_cmd = app.add_subcommand("power", "Monte Carlo power study over a theta grid");
    power_cmd->add_option("--copula", power.family, "Copula family name");
    power_cmd->add_option("--theta", power.thetas, "Comma list of parameter values")->required();
    power_cmd->add_option("--n", power.n, "Sample size per replicate");
    power_cmd->add_option("--reps", power.reps, "Replicates per cell");
    power_cmd->add_option("--alpha", power.alpha, "Significance level");
    power_cmd->add_option("--method", power.source,
                          "Critical values: exact, mc, asymptotic or exact-normal")
        ->check(CLI::IsMember({"exact", "mc", "asymptotic", "exact-normal"}));
    power_cmd->add_option("--null-reps", power.null_reps, "Replicates for the Monte Carlo null");
    power_cmd->add_option("--null-seed", power.null_seed, "Seed for the Monte Carlo null");
    auto* power_seed = power_cmd->add_option("--seed", power.seed, "Study seed");
    power_cmd->add_flag("--pivot", power.pivot, "Wide CSV layout: theta, rho_s, one column per statistic");

    CurvesArgs curves;
    auto* curves_cmd = app.add_subcommand("curves", "Population coefficient curves over theta");
    curves_cmd->add_option("--theta-step", curves.theta_step, "Grid step in theta");
    curves_cmd->add_option("--panels", curves.panels, "Quadrature panels per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*compute_cmd) run_compute(g, compute);
        if (*null_cmd) run_null_table(g, nulltab, null_seed);
        if (*quant_cmd) run_quantiles(g, quant);
        if (*test_cmd) run_test(g, test, test_seed);
        if (*pop_cmd) run_population(g, pop, pop_seed);
        if (*are_cmd) run_are_table(g, are);
        if (*power_cmd) run_power(g, power, power_seed);
        if (*curves_cmd) run_curves(g, curves);
    } catch (const wrc::Error& e) {
        std::cerr << "error (" << wrc::error_code_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
