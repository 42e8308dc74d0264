#pragma once

#include <vector>

#include "wrc/copulas.hpp"
#include "wrc/variant.hpp"

namespace wrc {

/// Pitman asymptotic relative efficiency of the independence test based on a
/// WRC variant against the Spearman test, for a copula family near its
/// independence parameter.
struct AreResult {
    enum class Method { ClosedForm, NumericSlope };

    WrcVariant variant{};
    CopulaFamily family = CopulaFamily::CuadrasAuge;
    double value = 0.0;
    Method method = Method::ClosedForm;
    double slope_step = 0.0;  // NumericSlope only
};

/// Closed-form ARE for the Cuadras-Auge family.
AreResult are_closed_form(const WrcVariant& variant);

/// Numeric-slope ARE: second-order finite difference of the population
/// coefficient at the family's independence parameter (one-sided at a domain
/// boundary), with a step-halving stability check.
AreResult are_numeric(const WrcVariant& variant, CopulaFamily family, double theta0,
                      double step = 1e-3, int panels = kDefaultQuadraturePanels);

/// The independence parameter of each family (Gumbel is 1, the rest 0).
double independence_parameter(CopulaFamily family);

/// The Kendall-based test has the same Pitman efficiency as the Spearman one;
/// reports carry this as a constant.
inline constexpr double kKendallVsSpearmanAre = 1.0;

/// One row of the ARE table: closed-form Cuadras-Auge columns, numeric-slope
/// Clayton columns, variant order lower, upper, sym-lower, sym-upper.
struct AreTableRow {
    int p = 1;
    double cuadras_auge[4] = {0, 0, 0, 0};
    double clayton[4] = {0, 0, 0, 0};
};

std::vector<AreTableRow> are_table(int p_max = 13, double step = 1e-3,
                                   int panels = kDefaultQuadraturePanels);

}  // namespace wrc
