#include "wrc/efficiency.hpp"

#include <cmath>

#include "wrc/null_dist.hpp"

namespace wrc {

double independence_parameter(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::Gumbel: return 1.0;
        case CopulaFamily::Independence:
            throw Error(ErrorCode::UnsupportedFamily, "the independence copula has no dependence parameter");
        default: return 0.0;
    }
}

AreResult are_closed_form(const WrcVariant& variant) {
    validate(variant);
    const double p = variant.p;
    AreResult r;
    r.variant = variant;
    r.family = CopulaFamily::CuadrasAuge;
    r.method = AreResult::Method::ClosedForm;
    if (!variant.symmetrized) {
        r.value = variant.tail == Tail::Lower
                      ? 4.0 * (p + 5) * (p + 5) * (2 * p + 1) / (3.0 * (p + 2) * (p + 2) * (p + 3) * (p + 3))
                      : 16.0 * (2 * p + 1) / (3.0 * (p + 3) * (p + 3));
    } else {
        const double q = p * p + 10 * p + 7;
        r.value = variant.tail == Tail::Lower
                      ? 8.0 * (p + 5) * (p + 5) * (2 * p + 1) / (3.0 * (p + 3) * (p + 3) * q)
                      : 32.0 * (p + 2) * (p + 2) * (2 * p + 1) / (3.0 * (p + 3) * (p + 3) * q);
    }
    return r;
}

namespace {

bool boundary_at_independence(CopulaFamily family) {
    // Frank and Gaussian extend to both sides of independence; the others
    // only into positive dependence.
    return !(family == CopulaFamily::Frank || family == CopulaFamily::Gaussian);
}

double population_value(const WrcVariant& v, CopulaFamily family, double theta, int panels) {
    return population_nu(v, CopulaModel::make(family, theta), PopMethod::Quadrature, 0, 0, panels).value;
}

// d/dtheta of the population coefficient at theta0, second-order accurate.
double slope(const WrcVariant& v, CopulaFamily family, double theta0, double h, int panels) {
    if (boundary_at_independence(family)) {
        // mu(theta0) = 0 exactly at independence, so the one-sided
        // three-point rule reduces to (4 f(h) - f(2h)) / (2h).
        const double f1 = population_value(v, family, theta0 + h, panels);
        const double f2 = population_value(v, family, theta0 + 2 * h, panels);
        return (4.0 * f1 - f2) / (2.0 * h);
    }
    const double fp = population_value(v, family, theta0 + h, panels);
    const double fm = population_value(v, family, theta0 - h, panels);
    return (fp - fm) / (2.0 * h);
}

double are_at_step(const WrcVariant& variant, CopulaFamily family, double theta0, double h, int panels) {
    const double mu_v = slope(variant, family, theta0, h, panels);
    const double mu_sp = slope(WrcVariant::spearman(), family, theta0, h, panels);
    const double ratio = (mu_v / mu_sp) * (asymptotic_sd(WrcVariant::spearman()) / asymptotic_sd(variant));
    return ratio * ratio;
}

}  // namespace

AreResult are_numeric(const WrcVariant& variant, CopulaFamily family, double theta0, double step,
                      int panels) {
    validate(variant);
    if (family == CopulaFamily::Independence)
        throw Error(ErrorCode::UnsupportedFamily, "the independence copula has no dependence parameter");
    if (theta0 != independence_parameter(family))
        throw Error(ErrorCode::ParameterOutOfDomain,
                    "the Pitman slope is taken at the family's independence parameter");
    if (!(step > 0.0)) throw Error(ErrorCode::ParameterOutOfDomain, "step must be positive");

    const double at_h = are_at_step(variant, family, theta0, step, panels);
    const double at_h2 = are_at_step(variant, family, theta0, step / 2, panels);
    if (std::fabs(at_h - at_h2) >= 1e-3)
        throw Error(ErrorCode::SlopeUnstable, "halving the step moved the ARE by 1e-3 or more");

    AreResult r;
    r.variant = variant;
    r.family = family;
    r.method = AreResult::Method::NumericSlope;
    r.slope_step = step;
    r.value = at_h;
    return r;
}

std::vector<AreTableRow> are_table(int p_max, double step, int panels) {
    std::vector<AreTableRow> rows;
    rows.reserve(static_cast<size_t>(p_max));
    const WrcVariant variants[4] = {WrcVariant::lower(1), WrcVariant::upper(1),
                                    WrcVariant::lower(1, true), WrcVariant::upper(1, true)};
    for (int p = 1; p <= p_max; ++p) {
        AreTableRow row;
        row.p = p;
        for (int k = 0; k < 4; ++k) {
            WrcVariant v = variants[k];
            v.p = p;
            row.cuadras_auge[k] = are_closed_form(v).value;
            row.clayton[k] = are_numeric(v, CopulaFamily::Clayton, 0.0, step, panels).value;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wrc
