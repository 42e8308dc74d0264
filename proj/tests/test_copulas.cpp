#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wrc/copulas.hpp"
#include "wrc/normal.hpp"
#include "wrc/pairing.hpp"
#include "wrc/quadrature.hpp"
#include "wrc/rank_core.hpp"
#include "wrc/rng.hpp"

using namespace wrc;

namespace {

// A representative (validated) model per family for grid tests.
std::vector<CopulaModel> representative_models() {
    return {CopulaModel::independence(), CopulaModel::clayton(2.0),     CopulaModel::gumbel(1.8),
            CopulaModel::frank(4.0),     CopulaModel::frank(-3.0),      CopulaModel::gaussian(0.6),
            CopulaModel::gaussian(-0.4), CopulaModel::cuadras_auge(0.5), CopulaModel::raftery(0.4)};
}

// One-dimensional reduction of the bivariate normal CDF used as an oracle:
// integral of phi(t) Phi((y - rho t)/sqrt(1-rho^2)) for t up to x.
double bvn_oracle(double x, double y, double rho) {
    const double s = std::sqrt(1.0 - rho * rho);
    auto f = [&](double t01) {
        const double t = -8.5 + t01 * (x + 8.5);
        const double phi = std::exp(-0.5 * t * t) / std::sqrt(2.0 * 3.14159265358979323846);
        return phi * std_normal_cdf((y - rho * t) / s);
    };
    return quad::integrate_unit(f, 400) * (x + 8.5);
}

double sample_spearman(const std::vector<std::pair<double, double>>& draws) {
    std::vector<double> x, y;
    x.reserve(draws.size());
    y.reserve(draws.size());
    for (const auto& [u, v] : draws) {
        x.push_back(u);
        y.push_back(v);
    }
    return spearman(prepare_pairing(x, y));
}

}  // namespace

TEST_CASE("parameter domains") {
    CHECK_THROWS_AS(CopulaModel::clayton(-0.5), Error);
    CHECK_THROWS_AS(CopulaModel::gumbel(0.99), Error);
    CHECK_THROWS_AS(CopulaModel::frank(0.0), Error);
    CHECK_THROWS_AS(CopulaModel::gaussian(1.0), Error);
    CHECK_THROWS_AS(CopulaModel::gaussian(-1.0), Error);
    CHECK_THROWS_AS(CopulaModel::cuadras_auge(1.5), Error);
    CHECK_THROWS_AS(CopulaModel::raftery(-0.1), Error);
    CHECK_NOTHROW(CopulaModel::clayton(0.0));
    CHECK_NOTHROW(CopulaModel::gumbel(1.0));
    CHECK_NOTHROW(CopulaModel::cuadras_auge(1.0));
    CHECK_NOTHROW(CopulaModel::raftery(1.0));
}

TEST_CASE("specification strings") {
    const auto m = parse_copula("clayton:0.75");
    CHECK(m.family == CopulaFamily::Clayton);
    CHECK(m.theta == 0.75);
    CHECK(parse_copula("gaussian:0.4").family == CopulaFamily::Gaussian);
    CHECK(parse_copula("cuadras-auge:0.5").theta == 0.5);
    CHECK(parse_copula("independence").family == CopulaFamily::Independence);
    CHECK_THROWS_AS(parse_copula("clayton"), Error);
    CHECK_THROWS_AS(parse_copula("clayton:abc"), Error);
    CHECK_THROWS_AS(parse_copula("nonsense:1"), Error);
    CHECK_THROWS_AS(parse_copula("gumbel:0.2"), Error);
    for (const auto& m2 : representative_models()) {
        if (m2.family == CopulaFamily::Independence) continue;
        const auto round = parse_copula(family_name(m2.family) + ":" + std::to_string(m2.theta));
        CHECK(round.family == m2.family);
        CHECK(round.theta == doctest::Approx(m2.theta));
    }
}

TEST_CASE("cdf: grounded, uniform margins, Frechet bounds") {
    for (const auto& m : representative_models()) {
        for (double t : {0.0, 0.1, 0.35, 0.5, 0.77, 0.9, 1.0}) {
            CHECK(cdf(m, t, 0.0) == 0.0);
            CHECK(cdf(m, 0.0, t) == 0.0);
            CHECK(cdf(m, t, 1.0) == doctest::Approx(t).epsilon(1e-12));
            CHECK(cdf(m, 1.0, t) == doctest::Approx(t).epsilon(1e-12));
        }
        for (double u = 0.05; u < 1.0; u += 0.09)
            for (double v = 0.05; v < 1.0; v += 0.09) {
                const double c = cdf(m, u, v);
                CHECK(c >= std::max(0.0, u + v - 1.0) - 1e-12);
                CHECK(c <= std::min(u, v) + 1e-12);
            }
    }
}

TEST_CASE("cdf special values") {
    const auto comonotone = CopulaModel::cuadras_auge(1.0);
    for (double u = 0.1; u < 1.0; u += 0.17)
        for (double v = 0.1; v < 1.0; v += 0.17)
            CHECK(cdf(comonotone, u, v) == doctest::Approx(std::min(u, v)).epsilon(1e-14));

    CHECK(cdf(CopulaModel::cuadras_auge(0.5), 0.5, 0.5) == doctest::Approx(0.353553).epsilon(1e-5));

    const auto raftery0 = CopulaModel::raftery(0.0);
    const auto gumbel1 = CopulaModel::gumbel(1.0);
    const auto clayton0 = CopulaModel::clayton(0.0);
    for (double u = 0.1; u < 1.0; u += 0.13)
        for (double v = 0.1; v < 1.0; v += 0.13) {
            CHECK(cdf(raftery0, u, v) == doctest::Approx(u * v).epsilon(1e-12));
            CHECK(cdf(gumbel1, u, v) == doctest::Approx(u * v).epsilon(1e-12));
            CHECK(cdf(clayton0, u, v) == doctest::Approx(u * v).epsilon(1e-12));
        }

    // tiny Clayton parameters stay finite and close to independence
    const auto clayton_tiny = CopulaModel::clayton(1e-8);
    CHECK(cdf(clayton_tiny, 0.3, 0.7) == doctest::Approx(0.21).epsilon(1e-7));
}

TEST_CASE("bivariate normal CDF") {
    // exact identity at the origin
    for (double rho : {-0.99, -0.95, -0.7, -0.3, 0.0, 0.2, 0.5, 0.75, 0.9, 0.925, 0.95, 0.99})
        CHECK(bvn_cdf(0.0, 0.0, rho) ==
              doctest::Approx(0.25 + std::asin(rho) / (2.0 * 3.14159265358979323846)).epsilon(1e-12));
    // independence factorisation
    for (double x : {-2.0, -0.5, 0.3, 1.7})
        for (double y : {-1.1, 0.0, 0.8, 2.5})
            CHECK(bvn_cdf(x, y, 0.0) == doctest::Approx(std_normal_cdf(x) * std_normal_cdf(y)).epsilon(1e-13));
    // quadrature oracle across both algorithm branches
    for (double rho : {-0.97, -0.6, 0.3, 0.9, 0.95, 0.99})
        for (double x : {-1.5, -0.2, 0.6, 2.1})
            for (double y : {-2.0, 0.1, 1.2}) {
                CHECK(bvn_cdf(x, y, rho) == doctest::Approx(bvn_oracle(x, y, rho)).epsilon(5e-11));
                CHECK(bvn_cdf(x, y, rho) == doctest::Approx(bvn_cdf(y, x, rho)).epsilon(1e-13));
            }
    // margin limit
    CHECK(bvn_cdf(0.7, 8.3, 0.5) == doctest::Approx(std_normal_cdf(0.7)).epsilon(1e-10));
}

TEST_CASE("normal quantile inverts the CDF") {
    for (double p = 0.0005; p < 1.0; p += 0.0101)
        CHECK(std_normal_cdf(std_normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK_THROWS_AS(std_normal_quantile(0.0), Error);
}

TEST_CASE("conditional derivative") {
    SUBCASE("independence and margins") {
        for (double v = 0.0; v <= 1.0; v += 0.125)
            CHECK(conditional_derivative(CopulaModel::independence(), 0.37, v) == v);
        for (const auto& m : representative_models()) {
            for (double u : {0.2, 0.5, 0.8}) {
                CHECK(std::fabs(conditional_derivative(m, u, 1.0) - 1.0) < 1e-8);
                CHECK(std::fabs(conditional_derivative(m, u, 0.0)) < 1e-8);
            }
        }
    }
    SUBCASE("finite-difference oracle") {
        const double h = 1e-6;
        for (const auto& m : representative_models()) {
            for (double u : {0.25, 0.5, 0.75})
                for (double v : {0.2, 0.45, 0.9}) {
                    if ((m.family == CopulaFamily::CuadrasAuge || m.family == CopulaFamily::Raftery) &&
                        std::fabs(u - v) < 0.05)
                        continue;  // kinked on the diagonal
                    const double fd = (cdf(m, u + h, v) - cdf(m, u - h, v)) / (2 * h);
                    CHECK(conditional_derivative(m, u, v) == doctest::Approx(fd).epsilon(2e-5));
                }
        }
        const double got = conditional_derivative(CopulaModel::clayton(2.0), 0.5, 0.5);
        CHECK(got > 0.0);
        CHECK(got < 1.0);
        const double fd = (cdf(CopulaModel::clayton(2.0), 0.5 + h, 0.5) - cdf(CopulaModel::clayton(2.0), 0.5 - h, 0.5)) / (2 * h);
        CHECK(got == doctest::Approx(fd).epsilon(1e-6));
    }
    SUBCASE("monotone nondecreasing in v") {
        for (const auto& m : representative_models())
            for (double u : {0.15, 0.5, 0.85}) {
                double prev = 0.0;
                for (double v = 0.02; v < 1.0; v += 0.02) {
                    const double cur = conditional_derivative(m, u, v);
                    CHECK(cur >= prev - 1e-9);
                    prev = cur;
                }
            }
    }
}

TEST_CASE("samplers: margins, determinism, law") {
    SUBCASE("uniform margins by Kolmogorov-Smirnov") {
        const long n = 100000;
        const double crit = 1.6276 / std::sqrt(static_cast<double>(n));  // 1% level
        for (const auto& m : representative_models()) {
            auto draws = sample(m, n, 2024);
            for (int axis = 0; axis < 2; ++axis) {
                std::vector<double> z(draws.size());
                for (size_t i = 0; i < draws.size(); ++i) z[i] = axis == 0 ? draws[i].first : draws[i].second;
                std::sort(z.begin(), z.end());
                double d = 0.0;
                for (size_t i = 0; i < z.size(); ++i) {
                    d = std::max(d, (i + 1.0) / n - z[i]);
                    d = std::max(d, z[i] - static_cast<double>(i) / n);
                }
                INFO("family ", family_name(m.family), " axis ", axis);
                CHECK(d < crit);
            }
        }
    }
    SUBCASE("comonotone limit") {
        for (const auto& [u, v] : sample(CopulaModel::cuadras_auge(1.0), 1000, 5)) CHECK(u == v);
        for (const auto& [u, v] : sample(CopulaModel::raftery(1.0), 1000, 5)) CHECK(u == v);
    }
    SUBCASE("seeded reproducibility") {
        const auto a = sample(CopulaModel::gumbel(2.0), 9000, 31);
        const auto b = sample(CopulaModel::gumbel(2.0), 9000, 31);
        CHECK(a == b);
        const auto c = sample(CopulaModel::gumbel(2.0), 9000, 32);
        CHECK(a != c);
    }
    SUBCASE("sample Spearman matches the population coefficient") {
        const auto model = CopulaModel::clayton(2.0);
        const auto draws = sample(model, 200000, 99);
        const double pop = population_nu(WrcVariant::spearman(), model, PopMethod::Quadrature).value;
        CHECK(sample_spearman(draws) == doctest::Approx(pop).epsilon(0.01));
    }
    SUBCASE("empirical copula tracks the CDF uniformly") {
        const long n = 200000;
        for (const auto& m : representative_models()) {
            auto draws = sample(m, n, 7171);
            // 20x20 grid counts by a sweep over u with a v histogram
            std::sort(draws.begin(), draws.end());
            double worst = 0.0;
            std::vector<long> vcount(20, 0);
            size_t pos = 0;
            for (int gu = 1; gu <= 20; ++gu) {
                const double u = gu / 20.0;
                for (; pos < draws.size() && draws[pos].first <= u; ++pos) {
                    const int bin = std::min(19, static_cast<int>(draws[pos].second * 20.0));
                    ++vcount[static_cast<size_t>(bin)];
                }
                long cum = 0;
                for (int gv = 1; gv <= 20; ++gv) {
                    cum += vcount[static_cast<size_t>(gv - 1)];
                    const double emp = static_cast<double>(cum) / n;
                    worst = std::max(worst, std::fabs(emp - cdf(m, u, gv / 20.0)));
                }
            }
            INFO("family ", family_name(m.family));
            CHECK(worst <= 0.005);
        }
    }
}

TEST_CASE("tail dependence") {
    const auto ca = tail_dependence(CopulaModel::cuadras_auge(0.7));
    CHECK(ca.lambda_lower == 0.0);
    CHECK(ca.lambda_upper == doctest::Approx(0.7));
    const auto ra = tail_dependence(CopulaModel::raftery(0.5));
    CHECK(ra.lambda_lower == doctest::Approx(0.6667).epsilon(1e-3));
    CHECK(ra.lambda_upper == 0.0);
    const auto ind = tail_dependence(CopulaModel::independence());
    CHECK(ind.lambda_lower == 0.0);
    CHECK(ind.lambda_upper == 0.0);
    CHECK(tail_dependence(CopulaModel::clayton(2.0)).lambda_lower == doctest::Approx(std::pow(2.0, -0.5)));
    CHECK(tail_dependence(CopulaModel::gumbel(2.0)).lambda_upper == doctest::Approx(2.0 - std::sqrt(2.0)));
    CHECK(tail_dependence(CopulaModel::frank(3.0)).lambda_upper == 0.0);
    CHECK(tail_dependence(CopulaModel::gaussian(0.8)).lambda_lower == 0.0);
}

TEST_CASE("beta function") {
    CHECK(beta_function(2.0, 3.5) == doctest::Approx(1.0 / 15.75).epsilon(1e-12));
    CHECK(beta_function(3.0, 4.0) == doctest::Approx(1.0 / 60.0).epsilon(1e-12));
    CHECK(beta_function(5.5, 2.5) == doctest::Approx(beta_function(2.5, 5.5)).epsilon(1e-14));
    CHECK_THROWS_AS(beta_function(0.0, 1.0), Error);
}

TEST_CASE("population coefficients") {
    SUBCASE("closed forms for the Cuadras-Auge family") {
        for (double th = 0.0; th <= 1.0; th += 0.125) {
            const auto upper1 = population_nu(WrcVariant::upper(1), CopulaModel::cuadras_auge(th), PopMethod::ClosedForm);
            CHECK(upper1.value == doctest::Approx(3.0 * th / (4.0 - th)).epsilon(1e-12));
            const auto lower1 = population_nu(WrcVariant::lower(1), CopulaModel::cuadras_auge(th), PopMethod::ClosedForm);
            CHECK(lower1.value == doctest::Approx(3.0 * th / (4.0 - th)).epsilon(1e-10));
        }
        CHECK(population_nu(WrcVariant::upper(1), CopulaModel::cuadras_auge(1.0), PopMethod::ClosedForm).value ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(population_nu(WrcVariant::lower(2), CopulaModel::cuadras_auge(0.5), PopMethod::ClosedForm).value ==
              doctest::Approx(0.412698).epsilon(1e-5));
        CHECK(population_nu(WrcVariant::upper(2), CopulaModel::cuadras_auge(0.5), PopMethod::ClosedForm).value ==
              doctest::Approx(0.444444).epsilon(1e-5));
        // boundary values: independence gives 0, comonotone gives 1
        for (int p = 1; p <= 10; ++p)
            for (Tail tail : {Tail::Lower, Tail::Upper}) {
                const WrcVariant v{tail, false, p};
                CHECK(population_nu(v, CopulaModel::cuadras_auge(0.0), PopMethod::ClosedForm).value ==
                      doctest::Approx(0.0).epsilon(1e-12));
                CHECK(population_nu(v, CopulaModel::cuadras_auge(1.0), PopMethod::ClosedForm).value ==
                      doctest::Approx(1.0).epsilon(1e-10));
            }
        CHECK_THROWS_AS(population_nu(WrcVariant::lower(2, true), CopulaModel::cuadras_auge(0.5), PopMethod::ClosedForm),
                        Error);
        CHECK_THROWS_AS(population_nu(WrcVariant::lower(2), CopulaModel::clayton(1.0), PopMethod::ClosedForm), Error);
    }

    SUBCASE("closed form vs quadrature") {
        for (int p : {1, 2, 3, 4, 5})
            for (double th = 0.1; th < 0.95; th += 0.2)
                for (Tail tail : {Tail::Lower, Tail::Upper}) {
                    const WrcVariant v{tail, false, p};
                    const auto model = CopulaModel::cuadras_auge(th);
                    const auto cf = population_nu(v, model, PopMethod::ClosedForm);
                    const auto q = population_nu(v, model, PopMethod::Quadrature);
                    CHECK(std::fabs(cf.value - q.value) <= 1e-6);
                    CHECK(q.error_estimate <= 1e-7);
                }
    }

    SUBCASE("independence gives zero") {
        for (const auto variant : {WrcVariant::lower(3), WrcVariant::upper(2), WrcVariant::lower(4, true)}) {
            CHECK(std::fabs(population_nu(variant, CopulaModel::independence(), PopMethod::Quadrature).value) <= 1e-7);
            CHECK(std::fabs(population_nu(variant, CopulaModel::independence(), PopMethod::MonteCarlo, 20000, 3).value) <=
                  0.05);
        }
    }

    SUBCASE("tail orderings against the Spearman coefficient") {
        for (double th : {0.2, 0.5, 0.8}) {
            const auto ca = CopulaModel::cuadras_auge(th);
            const auto ra = CopulaModel::raftery(th);
            const double rho_ca = population_nu(WrcVariant::spearman(), ca, PopMethod::Quadrature).value;
            const double rho_ra = population_nu(WrcVariant::spearman(), ra, PopMethod::Quadrature).value;
            for (int p : {2, 5, 10}) {
                CHECK(population_nu(WrcVariant::lower(p), ca, PopMethod::Quadrature).value <= rho_ca + 1e-9);
                CHECK(population_nu(WrcVariant::upper(p), ca, PopMethod::Quadrature).value >= rho_ca - 1e-9);
                CHECK(population_nu(WrcVariant::lower(p), ra, PopMethod::Quadrature).value >= rho_ra - 1e-9);
                CHECK(population_nu(WrcVariant::upper(p), ra, PopMethod::Quadrature).value <= rho_ra + 1e-9);
            }
        }
    }

    SUBCASE("monotone in theta and in p") {
        for (Tail tail : {Tail::Lower, Tail::Upper})
            for (int p : {1, 3, 6}) {
                const WrcVariant v{tail, false, p};
                double prev_ca = -1.0, prev_ra = -1.0;
                for (double th = 0.0; th <= 1.0001; th += 0.1) {
                    const double ca = population_nu(v, CopulaModel::cuadras_auge(std::min(th, 1.0)),
                                                    PopMethod::Quadrature).value;
                    const double ra = population_nu(v, CopulaModel::raftery(std::min(th, 1.0)),
                                                    PopMethod::Quadrature).value;
                    CHECK(ca >= prev_ca - 1e-8);
                    CHECK(ra >= prev_ra - 1e-8);
                    prev_ca = ca;
                    prev_ra = ra;
                }
            }
        for (double th : {0.3, 0.7}) {
            double prev_u = -1.0, prev_l = 2.0;
            for (int p = 2; p <= 10; ++p) {
                const double vu = population_nu(WrcVariant::upper(p), CopulaModel::cuadras_auge(th),
                                                PopMethod::ClosedForm).value;
                const double vl = population_nu(WrcVariant::lower(p), CopulaModel::cuadras_auge(th),
                                                PopMethod::ClosedForm).value;
                CHECK(vu >= prev_u - 1e-12);
                CHECK(vl <= prev_l + 1e-12);
                prev_u = vu;
                prev_l = vl;
            }
        }
    }

    SUBCASE("average-distance representation by direct sampling") {
        // sample U with CDF 1-(1-u)^p, independent uniform V, and average
        // (p+1)(p+2) 2/p (C(U,V) - UV); agrees with quadrature within 3 SE.
        for (const auto& model : {CopulaModel::clayton(1.5), CopulaModel::cuadras_auge(0.6)}) {
            for (int p : {2, 4}) {
                Rng rng(555);
                const long reps = 200000;
                long double sum = 0.0L, sumsq = 0.0L;
                const double scale = 2.0 * (p + 1) * (p + 2) / p;
                for (long i = 0; i < reps; ++i) {
                    const double u = 1.0 - std::pow(1.0 - rng.uniform(), 1.0 / p);
                    const double v = rng.uniform();
                    const double x = scale * (cdf(model, u, v) - u * v);
                    sum += x;
                    sumsq += static_cast<long double>(x) * x;
                }
                const double mean = static_cast<double>(sum / reps);
                const double sd = std::sqrt(static_cast<double>(sumsq / reps) - mean * mean);
                const double q = population_nu(WrcVariant::lower(p), model, PopMethod::Quadrature).value;
                CHECK(std::fabs(mean - q) <= 3.0 * sd / std::sqrt(static_cast<double>(reps)));
            }
        }
    }

    SUBCASE("Monte Carlo method agrees with quadrature within its error estimate") {
        for (const auto variant :
             {WrcVariant::lower(2), WrcVariant::upper(3), WrcVariant::lower(2, true), WrcVariant::upper(4, true)}) {
            for (const auto& model : {CopulaModel::gumbel(1.6), CopulaModel::gaussian(0.5), CopulaModel::raftery(0.45)}) {
                const auto mc = population_nu(variant, model, PopMethod::MonteCarlo, 150000, 17);
                const auto q = population_nu(variant, model, PopMethod::Quadrature);
                CHECK(std::fabs(mc.value - q.value) <= mc.error_estimate + 1e-6);
                CHECK(mc.error_estimate < 0.05);
            }
        }
        CHECK_THROWS_AS(population_nu(WrcVariant::lower(2), CopulaModel::gumbel(1.6), PopMethod::MonteCarlo, 10, 1),
                        Error);
    }
}
