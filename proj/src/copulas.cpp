#include "wrc/copulas.hpp"

#include <algorithm>
#include <cmath>

#include "wrc/normal.hpp"
#include "wrc/quadrature.hpp"
#include "wrc/rng.hpp"

namespace wrc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::ParameterOutOfDomain, what);
}

bool is_independence(const CopulaModel& m) {
    switch (m.family) {
        case CopulaFamily::Independence: return true;
        case CopulaFamily::Clayton: return m.theta == 0.0;
        case CopulaFamily::Gumbel: return m.theta == 1.0;
        case CopulaFamily::Gaussian: return m.theta == 0.0;
        case CopulaFamily::CuadrasAuge: return m.theta == 0.0;
        case CopulaFamily::Raftery: return m.theta == 0.0;
        case CopulaFamily::Frank: return false;
    }
    return false;
}

bool is_comonotone(const CopulaModel& m) {
    return (m.family == CopulaFamily::CuadrasAuge || m.family == CopulaFamily::Raftery) && m.theta == 1.0;
}

}  // namespace

CopulaModel CopulaModel::clayton(double theta) {
    require(theta >= 0.0 && std::isfinite(theta), "Clayton parameter must satisfy theta >= 0");
    return {CopulaFamily::Clayton, theta};
}

CopulaModel CopulaModel::gumbel(double theta) {
    require(theta >= 1.0 && std::isfinite(theta), "Gumbel parameter must satisfy theta >= 1");
    return {CopulaFamily::Gumbel, theta};
}

CopulaModel CopulaModel::frank(double theta) {
    require(theta != 0.0 && std::isfinite(theta), "Frank parameter must be nonzero");
    return {CopulaFamily::Frank, theta};
}

CopulaModel CopulaModel::gaussian(double rho) {
    require(rho > -1.0 && rho < 1.0, "Gaussian correlation must lie in (-1,1)");
    return {CopulaFamily::Gaussian, rho};
}

CopulaModel CopulaModel::cuadras_auge(double theta) {
    require(theta >= 0.0 && theta <= 1.0, "Cuadras-Auge parameter must lie in [0,1]");
    return {CopulaFamily::CuadrasAuge, theta};
}

CopulaModel CopulaModel::raftery(double theta) {
    require(theta >= 0.0 && theta <= 1.0, "Raftery parameter must lie in [0,1]");
    return {CopulaFamily::Raftery, theta};
}

CopulaModel CopulaModel::make(CopulaFamily family, double theta) {
    switch (family) {
        case CopulaFamily::Independence: return independence();
        case CopulaFamily::Clayton: return clayton(theta);
        case CopulaFamily::Gumbel: return gumbel(theta);
        case CopulaFamily::Frank: return frank(theta);
        case CopulaFamily::Gaussian: return gaussian(theta);
        case CopulaFamily::CuadrasAuge: return cuadras_auge(theta);
        case CopulaFamily::Raftery: return raftery(theta);
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown copula family");
}

std::string family_name(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::Independence: return "independence";
        case CopulaFamily::Clayton: return "clayton";
        case CopulaFamily::Gumbel: return "gumbel";
        case CopulaFamily::Frank: return "frank";
        case CopulaFamily::Gaussian: return "gaussian";
        case CopulaFamily::CuadrasAuge: return "cuadras-auge";
        case CopulaFamily::Raftery: return "raftery";
    }
    return "?";
}

CopulaFamily parse_family(const std::string& name) {
    if (name == "independence") return CopulaFamily::Independence;
    if (name == "clayton") return CopulaFamily::Clayton;
    if (name == "gumbel") return CopulaFamily::Gumbel;
    if (name == "frank") return CopulaFamily::Frank;
    if (name == "gaussian" || name == "normal") return CopulaFamily::Gaussian;
    if (name == "cuadras-auge") return CopulaFamily::CuadrasAuge;
    if (name == "raftery") return CopulaFamily::Raftery;
    throw Error(ErrorCode::UnsupportedFamily, "unknown copula family: " + name);
}

CopulaModel parse_copula(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const CopulaFamily fam = parse_family(name);
    if (colon == std::string::npos) {
        if (fam == CopulaFamily::Independence) return CopulaModel::independence();
        throw Error(ErrorCode::ParseError, "copula specification needs a parameter: " + spec);
    }
    try {
        size_t used = 0;
        const double theta = std::stod(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing characters");
        return CopulaModel::make(fam, theta);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "cannot parse copula parameter in: " + spec);
    }
}

double cdf(const CopulaModel& model, double u, double v) {
    require(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0, "cdf arguments must lie in [0,1]");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    if (is_independence(model)) return u * v;
    if (is_comonotone(model)) return std::min(u, v);

    const double th = model.theta;
    switch (model.family) {
        case CopulaFamily::Independence:
            return u * v;
        case CopulaFamily::Clayton: {
            // (u^-t + v^-t - 1)^(-1/t), evaluated through expm1/log1p so that
            // tiny theta stays exact.
            const double a = std::expm1(-th * std::log(u));
            const double b = std::expm1(-th * std::log(v));
            return std::exp(-std::log1p(a + b) / th);
        }
        case CopulaFamily::Gumbel: {
            const double x = std::pow(-std::log(u), th);
            const double y = std::pow(-std::log(v), th);
            return std::exp(-std::pow(x + y, 1.0 / th));
        }
        case CopulaFamily::Frank: {
            const double num = std::expm1(-th * u) * std::expm1(-th * v);
            return -std::log1p(num / std::expm1(-th)) / th;
        }
        case CopulaFamily::Gaussian:
            return bvn_cdf(std_normal_quantile(u), std_normal_quantile(v), th);
        case CopulaFamily::CuadrasAuge:
            return std::pow(std::min(u, v), th) * std::pow(u * v, 1.0 - th);
        case CopulaFamily::Raftery: {
            // min + (1-t)/(1+t) ((uv)^e - mn^e mx^(-t e)), e = 1/(1-t), in
            // log space: both exponentials stay in [0,1] for any t in (0,1).
            const double e = 1.0 / (1.0 - th);
            const double mn = std::min(u, v);
            const double mx = std::max(u, v);
            const double t1 = std::exp(e * (std::log(u) + std::log(v)));
            const double t2 = std::exp(e * (std::log(mn) - th * std::log(mx)));
            return mn + (1.0 - th) / (1.0 + th) * (t1 - t2);
        }
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown copula family");
}

double conditional_derivative(const CopulaModel& model, double u, double v) {
    require(u > 0.0 && u < 1.0, "conditional derivative needs u in (0,1)");
    require(v >= 0.0 && v <= 1.0, "conditional derivative needs v in [0,1]");
    if (v == 0.0) return 0.0;
    if (v == 1.0) return 1.0;
    if (is_independence(model)) return v;
    if (is_comonotone(model)) return v >= u ? 1.0 : 0.0;

    const double th = model.theta;
    switch (model.family) {
        case CopulaFamily::Independence:
            return v;
        case CopulaFamily::Clayton:
            // dC/du = (C/u)^(1+theta)
            return std::pow(cdf(model, u, v) / u, 1.0 + th);
        case CopulaFamily::Frank: {
            const double a = std::exp(-th * u);
            const double y = std::expm1(-th * v);
            return a * y / (std::expm1(-th) + std::expm1(-th * u) * y);
        }
        case CopulaFamily::Gaussian: {
            const double zu = std_normal_quantile(u);
            const double zv = std_normal_quantile(v);
            return std_normal_cdf((zv - th * zu) / std::sqrt(1.0 - th * th));
        }
        case CopulaFamily::Raftery: {
            // log-space grouping keeps every exponential bounded as th -> 1
            const double e = 1.0 / (1.0 - th);
            if (v < u)
                return (std::exp(e * (std::log(v) + th * std::log(u))) +
                        th * std::exp(e * (std::log(v) - std::log(u)))) /
                       (1.0 + th);
            return 1.0 + (std::exp(e * (th * std::log(u) + std::log(v))) -
                          std::exp(th * e * (std::log(u) - std::log(v)))) /
                             (1.0 + th);
        }
        case CopulaFamily::Gumbel:
        case CopulaFamily::CuadrasAuge: {
            const double h = std::min({1e-6, u / 2, (1.0 - u) / 2});
            return (cdf(model, u + h, v) - cdf(model, u - h, v)) / (2.0 * h);
        }
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown copula family");
}

namespace {

// Positive alpha-stable draw with Laplace transform exp(-s^alpha), 0<alpha<1
// (Kanter / Chambers-Mallows-Stuck construction).
double positive_stable(double alpha, Rng& rng) {
    const double theta = 3.14159265358979323846 * rng.uniform();
    const double w = -std::log(rng.uniform());
    return std::sin(alpha * theta) / std::pow(std::sin(theta), 1.0 / alpha) *
           std::pow(std::sin((1.0 - alpha) * theta) / w, (1.0 - alpha) / alpha);
}

std::pair<double, double> draw_pair(const CopulaModel& model, Rng& rng) {
    if (is_independence(model)) return {rng.uniform(), rng.uniform()};
    const double th = model.theta;
    switch (model.family) {
        case CopulaFamily::Independence:
            return {rng.uniform(), rng.uniform()};
        case CopulaFamily::Clayton: {
            // conditional inversion: v = ((t^(-th/(1+th)) - 1) u^-th + 1)^(-1/th)
            const double u = rng.uniform();
            const double t = rng.uniform();
            const double g = std::expm1(-th / (1.0 + th) * std::log(t)) * std::exp(-th * std::log(u));
            return {u, std::exp(-std::log1p(g) / th)};
        }
        case CopulaFamily::Gumbel: {
            const double alpha = 1.0 / th;
            const double m = positive_stable(alpha, rng);
            const double e1 = -std::log(rng.uniform());
            const double e2 = -std::log(rng.uniform());
            return {std::exp(-std::pow(e1 / m, alpha)), std::exp(-std::pow(e2 / m, alpha))};
        }
        case CopulaFamily::Frank: {
            const double u = rng.uniform();
            const double t = rng.uniform();
            const double a = std::exp(-th * u);
            const double y = t * std::expm1(-th) / (a * (1.0 - t) + t);
            return {u, -std::log1p(y) / th};
        }
        case CopulaFamily::Gaussian: {
            const double u = rng.uniform();
            const double z1 = std_normal_quantile(u);
            const double z2 = th * z1 + std::sqrt(1.0 - th * th) * std_normal_quantile(rng.uniform());
            return {u, std_normal_cdf(z2)};
        }
        case CopulaFamily::CuadrasAuge: {
            // Marshall-Olkin max construction; the diagonal atom is genuine.
            const double v1 = rng.uniform();
            const double v2 = rng.uniform();
            const double v3 = rng.uniform();
            if (th == 1.0) return {v3, v3};
            const double shared = std::pow(v3, 1.0 / th);
            return {std::max(std::pow(v1, 1.0 / (1.0 - th)), shared),
                    std::max(std::pow(v2, 1.0 / (1.0 - th)), shared)};
        }
        case CopulaFamily::Raftery: {
            const double u = rng.uniform();
            const double t = rng.uniform();
            if (th == 1.0) return {u, u};
            // invert the conditional CDF by bisection; it is continuous and
            // nondecreasing in v with no diagonal atom.
            double lo = 0.0, hi = 1.0;
            for (int iter = 0; iter < 80 && hi - lo > 1e-12; ++iter) {
                const double mid = 0.5 * (lo + hi);
                (conditional_derivative(model, u, mid) < t ? lo : hi) = mid;
            }
            return {u, 0.5 * (lo + hi)};
        }
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown copula family");
}

}  // namespace

std::vector<std::pair<double, double>> sample(const CopulaModel& model, long n, uint64_t seed) {
    require(n >= 1, "sample size must be >= 1");
    std::vector<std::pair<double, double>> out(static_cast<size_t>(n));
    constexpr long kChunk = 4096;
    for (long lo = 0; lo < n; lo += kChunk) {
        Rng rng = Rng::stream(seed, 0x636f70736d70ull /* "copsmp" */, static_cast<uint64_t>(lo / kChunk));
        const long hi = std::min(n, lo + kChunk);
        sample_into(model, std::span(out).subspan(static_cast<size_t>(lo), static_cast<size_t>(hi - lo)), rng);
    }
    return out;
}

void sample_into(const CopulaModel& model, std::span<std::pair<double, double>> out, Rng& rng) {
    for (auto& pair : out) pair = draw_pair(model, rng);
}

TailDependence tail_dependence(const CopulaModel& model) {
    const double th = model.theta;
    switch (model.family) {
        case CopulaFamily::Independence: return {0.0, 0.0};
        case CopulaFamily::Clayton: return {th == 0.0 ? 0.0 : std::pow(2.0, -1.0 / th), 0.0};
        case CopulaFamily::Gumbel: return {0.0, 2.0 - std::pow(2.0, 1.0 / th)};
        case CopulaFamily::Frank: return {0.0, 0.0};
        case CopulaFamily::Gaussian: return {0.0, 0.0};
        case CopulaFamily::CuadrasAuge: return {0.0, th};
        case CopulaFamily::Raftery: return {2.0 * th / (th + 1.0), 0.0};
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown copula family");
}

double beta_function(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::ParameterOutOfDomain, "beta function needs a,b > 0");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

bool has_diagonal_kink(CopulaFamily family) {
    return family == CopulaFamily::CuadrasAuge || family == CopulaFamily::Raftery;
}

double quadrature_value(const WrcVariant& variant, const CopulaModel& model, int panels) {
    const double p = variant.p;
    const double scale = variant.symmetrized ? (p + 1) * (p + 2) : 2.0 * (p + 1) * (p + 2);
    auto weight = [&](double u, double v) {
        switch ((variant.tail == Tail::Lower ? 0 : 1) + (variant.symmetrized ? 2 : 0)) {
            case 0: return std::pow(1.0 - u, p - 1);
            case 1: return std::pow(u, p - 1);
            case 2: return std::pow(1.0 - u, p - 1) + std::pow(1.0 - v, p - 1);
            default: return std::pow(u, p - 1) + std::pow(v, p - 1);
        }
    };
    auto f = [&](double u, double v) { return weight(u, v) * (cdf(model, u, v) - u * v); };
    const double raw = has_diagonal_kink(model.family) ? quad::integrate_unit_square_split(f, panels)
                                                       : quad::integrate_unit_square(f, panels);
    return scale * raw;
}

}  // namespace

PopulationCoefficient population_nu(const WrcVariant& variant, const CopulaModel& model, PopMethod method,
                                    long mc_reps, uint64_t mc_seed, int panels) {
    validate(variant);
    PopulationCoefficient out;
    out.variant = variant;
    out.model = model;
    out.method = method;
    const double p = variant.p;

    switch (method) {
        case PopMethod::ClosedForm: {
            if (model.family != CopulaFamily::CuadrasAuge || variant.symmetrized)
                throw Error(ErrorCode::MethodUnavailable,
                            "closed forms cover the non-symmetrised variants of the Cuadras-Auge family only");
            const double th = model.theta;
            if (variant.tail == Tail::Lower)
                out.value = th * (p + 2) * (1.0 - p * (p + 1) * beta_function(p, 4.0 - th)) / (p * (2.0 - th));
            else
                out.value = th * (p + 2) / (p + 3 - th);
            out.error_estimate = 1e-14;
            return out;
        }
        case PopMethod::Quadrature: {
            const double fine = quadrature_value(variant, model, panels);
            const double coarse = quadrature_value(variant, model, std::max(1, panels / 2));
            out.value = fine;
            out.error_estimate = std::max(std::fabs(fine - coarse), 1e-15);
            return out;
        }
        case PopMethod::MonteCarlo: {
            if (mc_reps < 1000) throw Error(ErrorCode::InsufficientReps, "Monte Carlo needs at least 1000 draws");
            const auto draws = sample(model, mc_reps, mc_seed);
            const double base = 2.0 * (p + 1) * (p + 2) / p;
            const double shift = variant.tail == Tail::Lower ? (p + 2) / p : (p + 2);
            auto g = [&](double u, double v) {
                return variant.tail == Tail::Lower ? std::pow(1.0 - u, p) * (1.0 - v)
                                                   : (1.0 - std::pow(u, p)) * (1.0 - v);
            };
            long double sum = 0.0L, sumsq = 0.0L;
            for (const auto& [u, v] : draws) {
                const double x = variant.symmetrized ? base * 0.5 * (g(u, v) + g(v, u)) - shift
                                                     : base * g(u, v) - shift;
                sum += x;
                sumsq += static_cast<long double>(x) * x;
            }
            const long double m = sum / mc_reps;
            const long double var = std::max(0.0L, sumsq / mc_reps - m * m);
            out.value = static_cast<double>(m);
            out.error_estimate = 3.0 * std::sqrt(static_cast<double>(var) / static_cast<double>(mc_reps));
            return out;
        }
    }
    throw Error(ErrorCode::MethodUnavailable, "unknown population method");
}

}  // namespace wrc
