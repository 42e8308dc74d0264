#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wrc/error.hpp"
#include "wrc/variant.hpp"

namespace wrc {

class Rng;

enum class CopulaFamily { Independence, Clayton, Gumbel, Frank, Gaussian, CuadrasAuge, Raftery };

/// A parametric bivariate copula.  Parameters are validated on construction;
/// the boundary parameters that degenerate to the independence or comonotone
/// copula (Clayton 0, Gumbel 1, Gaussian 0, Cuadras-Auge {0,1}, Raftery {0,1})
/// are handled as exact limits throughout.
struct CopulaModel {
    CopulaFamily family = CopulaFamily::Independence;
    double theta = 0.0;  // correlation for the Gaussian family

    static CopulaModel independence() { return {CopulaFamily::Independence, 0.0}; }
    static CopulaModel clayton(double theta);
    static CopulaModel gumbel(double theta);
    static CopulaModel frank(double theta);
    static CopulaModel gaussian(double rho);
    static CopulaModel cuadras_auge(double theta);
    static CopulaModel raftery(double theta);
    static CopulaModel make(CopulaFamily family, double theta);
};

std::string family_name(CopulaFamily family);
CopulaFamily parse_family(const std::string& name);

/// Parse a CLI-style specification "family:parameter", e.g. "clayton:0.75",
/// "gaussian:0.4", "cuadras-auge:0.5"; "independence" takes no parameter.
CopulaModel parse_copula(const std::string& spec);

/// C(u,v) on [0,1]^2.
double cdf(const CopulaModel& model, double u, double v);

/// The conditional distribution dC/du = P(V <= v | U = u), u in (0,1).
/// Analytic where tractable, central finite difference (h = 1e-6) otherwise.
double conditional_derivative(const CopulaModel& model, double u, double v);

/// n i.i.d. pairs with uniform margins and joint law C, reproducible for a
/// fixed seed regardless of chunking.
std::vector<std::pair<double, double>> sample(const CopulaModel& model, long n, uint64_t seed);

/// Fill `out` with draws using the caller's generator; every family consumes
/// a fixed number of uniforms per pair, so callers can lay out streams.
void sample_into(const CopulaModel& model, std::span<std::pair<double, double>> out, Rng& rng);

struct TailDependence {
    double lambda_lower = 0.0;
    double lambda_upper = 0.0;
};

TailDependence tail_dependence(const CopulaModel& model);

enum class PopMethod { ClosedForm, Quadrature, MonteCarlo };

struct PopulationCoefficient {
    WrcVariant variant{};
    CopulaModel model{};
    double value = 0.0;
    PopMethod method = PopMethod::Quadrature;
    double error_estimate = 0.0;
};

inline constexpr int kDefaultQuadraturePanels = 64;

/// Population coefficient nu_p of a copula model.
///  - ClosedForm: Cuadras-Auge, non-symmetrised variants only.
///  - Quadrature: composite Gauss-Legendre on the weighted C(u,v) - uv
///    integral, split along the diagonal for the families with a kink there.
///  - MonteCarlo: sample average of the survival-form integrand.
PopulationCoefficient population_nu(const WrcVariant& variant, const CopulaModel& model, PopMethod method,
                                    long mc_reps = 200000, uint64_t mc_seed = 1,
                                    int panels = kDefaultQuadraturePanels);

/// B(a,b) via log-gamma, a,b > 0.
double beta_function(double a, double b);

}  // namespace wrc
