#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "json.hpp"

#include "helpers.hpp"
#include "oracle_eval.hpp"
#include "isc/error.hpp"
#include "isc/kinetics.hpp"
#include "isc/pvt.hpp"

using namespace isc;

namespace {

FluidModel fluid_of(const Deck& d) { return FluidModel(d.fluid.comps, d.fluid.p_ref, d.fluid.t_ref); }

CompArray<double> zeros()
{
    CompArray<double> y{};
    y.fill(0.0);
    return y;
}

}  // namespace

TEST(Pvt, OracleGoldens)
{
    const auto j = nlohmann::json::parse(isc::test::slurp(isc::test::data_path("tests/goldens/properties.json")));
    std::map<std::string, Deck> decks = {{"tube", isc::test::tube_deck()}, {"field", isc::test::field_deck()}};
    std::map<std::string, FluidModel> fluids;
    for (auto& [k, d] : decks) fluids[k] = fluid_of(d);
    int n = 0;
    for (const auto& c : j["cases"]) {
        const std::string tag = c["deck"];
        const double want = c["value"];
        const double got = isc::test::oracle_library_value(decks.at(tag), fluids.at(tag), c);
        const double tol = 1e-10 * std::abs(want) + (want == 0.0 ? 1e-300 : 0.0);
        EXPECT_LE(std::abs(got - want), tol) << c.dump();
        ++n;
    }
    EXPECT_GT(n, 400);
}

TEST(Pvt, KValuePrefactorCollapses)
{
    ComponentProps c;
    c.kv1 = 2000.0;
    c.kv4 = -6869.59;
    c.kv5 = -376.64;
    EXPECT_NEAR(k_value(c, 2000.0, 250.0), std::exp(-6869.59 / (250.0 + 376.64)), 1e-15);
}

TEST(Pvt, TubeWaterK)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    const double k = k_value(f.comp(f.water()), 2014.7, 100.0);
    EXPECT_NEAR(k, 4.7e-4, 0.05e-4);
}

TEST(Pvt, ZeroPrefactorGivesZeroK)
{
    ComponentProps c;
    c.kv4 = -1000.0;
    c.kv5 = -300.0;
    for (double p : {1.0, 100.0, 5000.0}) EXPECT_EQ(k_value(c, p, 400.0), 0.0);
}

TEST(Pvt, DegenerateTemperature)
{
    ComponentProps c;
    c.kv1 = 1.0;
    c.kv5 = 50.0;
    try {
        k_value(c, 100.0, 50.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_temperature);
    }
}

TEST(Pvt, PerFactor)
{
    const double eps = 1e-4;
    EXPECT_EQ(per_factor(eps, eps), 0.5);
    EXPECT_EQ(per_factor(0.0, eps), 0.0);
    EXPECT_EQ(per_factor(-1e-3, eps), 0.0);
    double prev = -1.0;
    for (double s = 0.0; s <= 1.0; s += 1e-3) {
        const double v = per_factor(s, eps);
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Pvt, PseudoKValues)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    const double eps = 1e-4, p = 2014.7, t = 300.0;
    const auto k = pseudo_k_values(f, p, t, eps, 0.0, eps);
    const int w = f.water(), lo = f.index_of("LO"), ho = f.index_of("HO");
    EXPECT_DOUBLE_EQ(k[w], 0.5 * k_value(f.comp(w), p, t));
    EXPECT_EQ(k[ho], 0.0);
    EXPECT_EQ(k[lo], k_value(f.comp(lo), p, t));

    const auto k2 = pseudo_k_values(f, p, t, 0.3, 0.2, eps);
    EXPECT_DOUBLE_EQ(k2[ho], 0.2 / (0.2 + eps) * k_value(f.comp(ho), p, t));
    for (int c : {w, lo, ho}) EXPECT_LE(k2[c], k_value(f.comp(c), p, t));

    const double x[2] = {0.7, 0.3};
    const double yg[2] = {0.2, 0.5};
    const auto y = gas_fractions(f, k2, x, yg);
    EXPECT_EQ(y[lo], k2[lo] * 0.7);
    EXPECT_EQ(y[ho], k2[ho] * 0.3);
    EXPECT_EQ(y[w], k2[w]);
    EXPECT_EQ(y[f.index_of("IR")], 0.5);
}

TEST(Pvt, IdealLimitZ)
{
    EXPECT_EQ(largest_rk_root(0.0, 0.0), 1.0);
    EXPECT_EQ(z_from_ab(0.0, 0.0), 1.0);
}

TEST(Pvt, PureOxygenZ)
{
    const FluidModel f = fluid_of(isc::test::field_deck());
    CompArray<double> y = zeros();
    y[f.index_of("O2")] = 1.0;
    const double z = z_factor(f, 65.0, 200.0, y);
    EXPECT_GT(z, 0.95);
    EXPECT_LT(z, 1.05);

    // recompute A, B from the pure-component constants and check the cubic
    const double tc = -181.77 + units::kRankineOffset, pc = 730.0, tr = 200.0 + units::kRankineOffset;
    const double A = 0.427480 * (65.0 / pc) * std::pow(tc / tr, 2.5);
    const double B = 0.086640 * (65.0 / pc) * (tc / tr);
    EXPECT_LT(std::abs(rk_cubic(z, A, B)), 1e-10);

    // brute-force root isolation over (0, 2)
    double best = -1.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * i / n, b = 2.0 * (i + 1) / n;
        if (rk_cubic(a, A, B) * rk_cubic(b, A, B) > 0.0) continue;
        for (int k = 0; k < 80; ++k) {
            const double m = 0.5 * (a + b);
            (rk_cubic(a, A, B) * rk_cubic(m, A, B) <= 0.0 ? b : a) = m;
        }
        best = std::max(best, 0.5 * (a + b));
    }
    EXPECT_NEAR(z, best, 1e-12);
}

TEST(Pvt, LargestRootProperty)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.0, 2.0), ub(0.0, 0.3);
    for (int i = 0; i < 100; ++i) {
        const double A = ua(rng), B = ub(rng);
        const double z = largest_rk_root(A, B);
        EXPECT_LT(std::abs(rk_cubic(z, A, B)), 1e-10) << A << " " << B;
        // no sign change above z
        const int n = 4000;
        double prev = rk_cubic(z + 1e-6, A, B);
        for (int k = 1; k <= n; ++k) {
            const double v = rk_cubic(z + 1e-6 + 3.0 * k / n, A, B);
            EXPECT_GE(prev * v, 0.0);
            prev = v;
        }
    }
}

TEST(Pvt, IdenticalCriticalPropsMix)
{
    Deck d = isc::test::tube_deck();
    for (auto& c : d.fluid.comps)
        if (c.name == "IR") {
            c.p_crit = 730.0;
            c.t_crit = -181.0;
        }
    const FluidModel f = fluid_of(d);
    CompArray<double> pure = zeros(), mix = zeros();
    pure[f.index_of("O2")] = 1.0;
    mix[f.index_of("O2")] = 0.3;
    mix[f.index_of("IR")] = 0.7;
    EXPECT_NEAR(z_factor(f, 900.0, 250.0, mix), z_factor(f, 900.0, 250.0, pure), 1e-14);
}

TEST(Pvt, GasDensityUnits)
{
    EXPECT_NEAR(gas_density(10.7316, -458.67, 1.0), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(gas_density(200.0, 300.0, 0.9), 2.0 * gas_density(100.0, 300.0, 0.9));
}

TEST(Pvt, LiquidDensity)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    ComponentProps w = f.comp(f.water());
    EXPECT_EQ(liquid_component_density(w, f.p_ref(), f.t_ref(), f.p_ref(), f.t_ref()), w.rho_ref);
    ASSERT_EQ(w.cp, 3e-6);
    w.ct2 = w.cpt = 0.0;
    EXPECT_NEAR(liquid_component_density(w, f.p_ref() + 1e5, f.t_ref(), f.p_ref(), f.t_ref()),
                w.rho_ref * std::exp(0.3), 1e-13);
    double prev = INFINITY;
    for (double t = 77.0; t < 600.0; t += 20.0) {
        const double r = liquid_component_density(w, f.p_ref(), t, f.p_ref(), f.t_ref());
        EXPECT_LT(r, prev);
        prev = r;
    }
}

TEST(Pvt, OilDensityHarmonic)
{
    std::vector<ComponentProps> comps(4);
    comps[3].name = "N2";
    comps[3].phase_class = PhaseClass::gas;
    comps[3].M = 28;
    comps[0].name = "W";
    comps[0].phase_class = PhaseClass::water;
    comps[0].M = 18;
    comps[0].rho_ref = 3;
    comps[1].name = "A";
    comps[1].phase_class = PhaseClass::oil;
    comps[1].M = 100;
    comps[1].rho_ref = 1.0;
    comps[2].name = "B";
    comps[2].phase_class = PhaseClass::oil;
    comps[2].M = 200;
    comps[2].rho_ref = 3.0;
    FluidModel f(comps, 14.7, 77.0);
    const double x[2] = {0.5, 0.5};
    EXPECT_DOUBLE_EQ(oil_phase_density(f, 14.7, 77.0, x), 1.5);
    ComponentProps b1 = comps[2];
    b1.rho_ref = 1.0;
    f = FluidModel({comps[0], comps[1], b1, comps[3]}, 14.7, 77.0);
    EXPECT_DOUBLE_EQ(oil_phase_density(f, 14.7, 77.0, x), 1.0);
    const double x1[2] = {1.0, 0.0};
    f = FluidModel(comps, 14.7, 77.0);
    EXPECT_DOUBLE_EQ(oil_phase_density(f, 14.7, 77.0, x1), 1.0);
}

TEST(Pvt, Viscosities)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    const int lo = f.index_of("LO"), ho = f.index_of("HO");
    const double x1[2] = {1.0, 0.0};
    EXPECT_NEAR(oil_viscosity(f, 250.0, x1), liquid_component_viscosity(f.comp(lo), 250.0), 1e-15);
    CompArray<double> y = zeros();
    y[f.index_of("IR")] = 1.0;
    EXPECT_NEAR(gas_viscosity(f, 400.0, y), gas_component_viscosity(f.comp(f.index_of("IR")), 400.0), 1e-18);
    // tube water at 100 F, temperature in Rankine
    EXPECT_NEAR(liquid_component_viscosity(f.comp(f.water()), 100.0),
                4.7352e-3 * std::exp(2728.2 / 559.67), 1e-15);
    (void)ho;
}

TEST(Pvt, ViscosityBounds)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double t = 60.0 + 1500.0 * u(rng);
        CompArray<double> y = zeros();
        double s = 0.0;
        for (int c : f.volatiles()) s += (y[c] = u(rng));
        double lo = INFINITY, hi = 0.0;
        for (int c : f.volatiles()) {
            y[c] /= s;
            const double m = gas_component_viscosity(f.comp(c), t);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        const double mu = gas_viscosity(f, t, y);
        EXPECT_GE(mu, lo * (1 - 1e-14));
        EXPECT_LE(mu, hi * (1 + 1e-14));

        const double a = u(rng), x[2] = {a, 1.0 - a};
        const double p = 100.0 + 3000.0 * u(rng);
        const double r0 = liquid_component_density(f.comp(f.oil()[0]), p, t, f.p_ref(), f.t_ref());
        const double r1 = liquid_component_density(f.comp(f.oil()[1]), p, t, f.p_ref(), f.t_ref());
        const double ro = oil_phase_density(f, p, t, x);
        EXPECT_GE(ro, std::min(r0, r1) * (1 - 1e-14));
        EXPECT_LE(ro, std::max(r0, r1) * (1 + 1e-14));
    }
}

TEST(Pvt, Enthalpies)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    for (const auto& c : f.comps())
        if (c.phase_class != PhaseClass::solid) EXPECT_EQ(gas_component_enthalpy(c, 77.0, 77.0), 0.0);
    ComponentProps w;
    w.cpg1 = 7.613;
    w.cpg2 = 8.616e-4;
    // 7.613*100 + 8.616e-4/2*(177^2 - 77^2)
    EXPECT_NEAR(gas_component_enthalpy(w, 177.0, 77.0), 772.24232, 1e-9);
    const ComponentProps& lo = f.comp(f.index_of("LO"));
    for (double t : {lo.t_crit, lo.t_crit + 10.0})
        EXPECT_EQ(liquid_component_enthalpy(lo, t, 77.0), gas_component_enthalpy(lo, t, 77.0));
    EXPECT_GT(vaporization_enthalpy(lo, lo.t_crit - 1e-3), 0.0);
    EXPECT_LT(vaporization_enthalpy(lo, lo.t_crit - 1e-9), vaporization_enthalpy(lo, lo.t_crit - 1e-3));
    EXPECT_EQ(vaporization_enthalpy(lo, lo.t_crit), 0.0);
}

TEST(Pvt, InternalEnergies)
{
    EXPECT_EQ(internal_energy(123.0, 0.0, 2.0), 123.0);
    EXPECT_LT(internal_energy(123.0, 10.0, 2.0), 123.0);
    EXPECT_EQ(rock_internal_energy(35.0, 0.01, 77.0, 77.0), 0.0);
    EXPECT_EQ(coke_internal_energy(4.06, 77.0, 77.0), 0.0);
    EXPECT_NEAR(coke_internal_energy(4.06, 177.0, 77.0), 406.0, 1e-12);
}

TEST(Pvt, Porosity)
{
    PorosityParams r;
    r.cpor = 5e-6;
    r.ctpor = 1e-5;
    for (auto model : {PorosityModel::linear, PorosityModel::nonlinear}) {
        r.model = model;
        const auto ph = porosity(r, 0.3, 14.7, 77.0, 0.0, 57.2);
        EXPECT_EQ(ph.fluid, 0.3);
        EXPECT_EQ(ph.total, 0.3);
    }
    r.model = PorosityModel::linear;
    EXPECT_DOUBLE_EQ(porosity(r, 0.3, 14.7, 77.0, 57.2 * 0.15, 57.2).fluid, 0.15);
    r.model = PorosityModel::nonlinear;
    r.ctpor = 0.0;
    EXPECT_NEAR(porosity(r, 0.3, 14.7 + 200.0, 77.0, 0.0, 57.2).total, 0.3 * std::exp(1e-3), 1e-15);
    try {
        porosity(r, 0.3, 14.7, 77.0, 57.2 * 0.31, 57.2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::pore_space_exhausted);
    }
}

// Derivatives carried by Dual<N> against central differences.
TEST(Pvt, DualDerivativesMatchDifferences)
{
    const FluidModel f = fluid_of(isc::test::tube_deck());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    using D = Dual<4>;
    auto check = [](double an, double fd) {
        const double s = std::max({std::abs(an), std::abs(fd), 1e-300});
        return std::abs(an - fd) / s;
    };
    double worst = 0.0;
    int used = 0;
    for (int i = 0; i < 1000; ++i) {
        const double p = 20.0 + 4000.0 * u(rng), t = 60.0 + 1400.0 * u(rng);
        bool near_tc = false;
        for (const auto& c : f.comps()) near_tc |= std::abs(t - c.t_crit) < 0.1;
        if (near_tc) continue;
        const double a = u(rng), xo[2] = {a, 1.0 - a};
        const double yo2 = 0.05 + 0.9 * u(rng);
        auto eval = [&](const auto& P, const auto& T, const auto& X0, const auto& Y) {
            using S = std::decay_t<decltype(P)>;
            const S xs[2] = {X0, 1.0 - X0};
            CompArray<S> y{};
            y.fill(S(0.0));
            y[f.index_of("O2")] = Y;
            y[f.index_of("IR")] = 1.0 - Y;
            std::array<S, 6> out = {z_factor(f, P, T, y),
                                    oil_phase_density(f, P, T, xs),
                                    oil_viscosity(f, T, xs),
                                    gas_viscosity(f, T, y),
                                    oil_enthalpy(f, T, xs) + gas_enthalpy(f, T, y),
                                    k_value(f.comp(f.water()), P, T)};
            return out;
        };
        const auto dv = eval(D::variable(p, 0), D::variable(t, 1), D::variable(a, 2), D::variable(yo2, 3));
        const double base[4] = {p, t, a, yo2};
        for (int k = 0; k < 4; ++k) {
            double xp[4], xm[4];
            std::copy(base, base + 4, xp);
            std::copy(base, base + 4, xm);
            // fractions enter at most quadratically; a larger step keeps
            // cancellation noise of the ~1e5 Btu enthalpies small
            const double h = k < 2 ? 1e-6 * base[k] : 1e-4;
            xp[k] += h;
            xm[k] -= h;
            const auto fp = eval(xp[0], xp[1], xp[2], xp[3]);
            const auto fm = eval(xm[0], xm[1], xm[2], xm[3]);
            for (std::size_t q = 0; q < fp.size(); ++q) {
                const double fd = (fp[q] - fm[q]) / (2 * h);
                const double an = dv[q].d[k];
                if (std::max(std::abs(an), std::abs(fd)) < 1e-7 * std::max(1.0, std::abs(dv[q].v))) continue;
                worst = std::max(worst, check(an, fd));
            }
        }
        (void)xo;
        ++used;
    }
    EXPECT_GT(used, 900);
    EXPECT_LT(worst, 1e-5);
}
