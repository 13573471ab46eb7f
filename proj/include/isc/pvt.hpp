#pragma once

// Fluid and rock property correlations. Every function is templated on the
// scalar type so it can be evaluated with double or with Dual<N> to obtain
// derivatives with respect to the cell unknowns.
//
// Temperatures enter in °F. Correlations that need an absolute scale
// (gas law, RK ratios, viscosity exponentials, Arrhenius) convert to °R via
// units::rankine; the K-value exponent kv4/(T - kv5) stays in °F.

#include <array>
#include <cmath>

#include "isc/dual.hpp"
#include "isc/error.hpp"
#include "isc/fluid.hpp"
#include "isc/units.hpp"

namespace isc {

template <class S>
using CompArray = std::array<S, kMaxComponents>;

// Real roots of Z^3 - Z^2 + (A - B - B^2) Z - AB = 0, largest one, polished.
double largest_rk_root(double A, double B);

// Residual of the RK cubic at Z.
inline double rk_cubic(double Z, double A, double B)
{
    return ((Z - 1.0) * Z + (A - B - B * B)) * Z - A * B;
}

[[noreturn]] void throw_degenerate_temperature(const ComponentProps& c, double t);
[[noreturn]] void throw_missing_critical(const ComponentProps& c);
[[noreturn]] void throw_pore_space_exhausted(double phi, double phi_coke);

// ---------------------------------------------------------------- K-values

template <class S>
S k_value(const ComponentProps& c, const S& p, const S& t_f)
{
    const S dt = t_f - c.kv5;
    if (std::abs(value(dt)) < 1e-9) throw_degenerate_temperature(c, value(t_f));
    if (c.kv1 == 0.0 && c.kv2 == 0.0 && c.kv3 == 0.0) return S(0.0);
    return (c.kv1 / p + c.kv2 * p + c.kv3) * exp(c.kv4 / dt);
}

// S/(S+eps) with S floored at zero.
template <class S>
S per_factor(const S& s, double eps)
{
    const S sp = smax(s, 0.0);
    return sp / (sp + eps);
}

// K* for water and oil components, indexed by component id (zero elsewhere).
// Water always carries the S_w factor; only the heaviest oil component carries
// the S_o factor, lighter oil components keep their raw K.
template <class S>
CompArray<S> pseudo_k_values(const FluidModel& f, const S& p, const S& t_f, const S& sw,
                             const S& so, double eps)
{
    CompArray<S> k{};
    k.fill(S(0.0));
    k[f.water()] = per_factor(sw, eps) * k_value(f.comp(f.water()), p, t_f);
    for (int i = 0; i < f.nco(); ++i) {
        const int c = f.oil()[i];
        S kc = k_value(f.comp(c), p, t_f);
        if (i == f.heaviest_oil_slot()) kc *= per_factor(so, eps);
        k[c] = kc;
    }
    return k;
}

// Gas-phase mole fractions of every volatile component: y_W = K*_W,
// y_Oi = K*_i x_i, and the non-condensable unknowns y_j.
template <class S>
CompArray<S> gas_fractions(const FluidModel& f, const CompArray<S>& kstar, const S* x_oil,
                           const S* y_gas)
{
    CompArray<S> y{};
    y.fill(S(0.0));
    y[f.water()] = kstar[f.water()];
    for (int i = 0; i < f.nco(); ++i) y[f.oil()[i]] = kstar[f.oil()[i]] * x_oil[i];
    for (int j = 0; j < f.ncg(); ++j) y[f.gas()[j]] = y_gas[j];
    return y;
}

// ---------------------------------------------------------------- Z-factor

template <class S>
S z_from_ab(const S& A, const S& B)
{
    const double a = value(A), b = value(B);
    const double z = largest_rk_root(a, b);
    if constexpr (is_dual_v<S>) {
        // implicit differentiation of the cubic
        const double fz = (3.0 * z - 2.0) * z + (a - b - b * b);
        const double fa = z - b;
        const double fb = (-1.0 - 2.0 * b) * z - a;
        S r(z);
        for (std::size_t k = 0; k < r.d.size(); ++k) r.d[k] = -(fa * A.d[k] + fb * B.d[k]) / fz;
        return r;
    } else if constexpr (std::is_same_v<S, double>) {
        return z;
    } else {
        // polish the double root in the wider type
        S zz(z);
        for (int it = 0; it < 3; ++it) {
            const S f = ((zz - 1.0) * zz + (A - B - B * B)) * zz - A * B;
            const S df = (3.0 * zz - 2.0) * zz + (A - B - B * B);
            zz -= f / df;
        }
        return zz;
    }
}

// Pseudo-critical mixing. a accumulates sqrt(Tc^2.5/pc) so that a single
// component maps back onto its own (Tc, pc).
template <class S>
void pseudo_critical(const FluidModel& f, const CompArray<S>& y, S& tc_mix, S& pc_mix)
{
    S a(0.0), b(0.0);
    for (int c : f.volatiles()) {
        const ComponentProps& cp = f.comp(c);
        if (cp.p_crit <= 0.0) throw_missing_critical(cp);
        const double tc = units::rankine(cp.t_crit);
        if (tc <= 0.0) throw_missing_critical(cp);
        a += y[c] * std::sqrt(std::pow(tc, 2.5) / cp.p_crit);
        b += y[c] * (tc / cp.p_crit);
    }
    if (value(b) <= 0.0) {
        tc_mix = S(0.0);
        pc_mix = S(1.0);
        return;
    }
    tc_mix = pow(a * a / b, 2.0 / 3.0);
    pc_mix = tc_mix / b;
}

template <class S>
S z_factor(const FluidModel& f, const S& p, const S& t_f, const CompArray<S>& y)
{
    S tc, pc;
    pseudo_critical(f, y, tc, pc);
    const S tr = units::rankine(t_f);
    const S pr = p / pc;
    const S ratio = tc / tr;
    const S A = 0.427480 * pr * pow(ratio, 2.5);
    const S B = 0.086640 * pr * ratio;
    return z_from_ab(A, B);
}

// ---------------------------------------------------------------- densities

template <class S>
S gas_density(const S& p, const S& t_f, const S& z)
{
    return p / (z * units::kGasConstantPsi * units::rankine(t_f));
}

template <class S>
S liquid_component_density(const ComponentProps& c, const S& p, const S& t_f, double p_ref,
                           double t_ref)
{
    const S dp = p - p_ref;
    const S dt = t_f - t_ref;
    return c.rho_ref * exp(c.cp * dp - c.ct1 * dt - 0.5 * c.ct2 * dt * dt + c.cpt * dp * dt);
}

// 1/rho_o = sum x_i / rho_i
template <class S>
S oil_phase_density(const FluidModel& f, const S& p, const S& t_f, const S* x_oil)
{
    S inv(0.0);
    for (int i = 0; i < f.nco(); ++i)
        inv += x_oil[i] / liquid_component_density(f.comp(f.oil()[i]), p, t_f, f.p_ref(), f.t_ref());
    return 1.0 / inv;
}

// ---------------------------------------------------------------- viscosity

template <class S>
S liquid_component_viscosity(const ComponentProps& c, const S& t_f)
{
    return c.avisc * exp(c.bvisc / units::rankine(t_f));
}

// logarithmic mixing
template <class S>
S oil_viscosity(const FluidModel& f, const S& t_f, const S* x_oil)
{
    S lg(0.0);
    for (int i = 0; i < f.nco(); ++i)
        lg += x_oil[i] * log(liquid_component_viscosity(f.comp(f.oil()[i]), t_f));
    return exp(lg);
}

template <class S>
S gas_component_viscosity(const ComponentProps& c, const S& t_f)
{
    return c.avg * pow(units::rankine(t_f), c.bvg);
}

template <class S>
S gas_viscosity(const FluidModel& f, const S& t_f, const CompArray<S>& y)
{
    S num(0.0), den(0.0);
    for (int c : f.volatiles()) {
        const double w = std::sqrt(f.comp(c).M);
        num += gas_component_viscosity(f.comp(c), t_f) * y[c] * w;
        den += y[c] * w;
    }
    if (value(den) <= 0.0) return gas_component_viscosity(f.comp(f.gas()[0]), t_f);
    return num / den;
}

// ---------------------------------------------------------------- enthalpy

template <class S>
S gas_component_enthalpy(const ComponentProps& c, const S& t_f, double t_ref)
{
    const double r2 = t_ref * t_ref, r3 = r2 * t_ref, r4 = r3 * t_ref;
    const S t2 = t_f * t_f;
    const S t3 = t2 * t_f;
    const S t4 = t3 * t_f;
    return c.cpg1 * (t_f - t_ref) + (c.cpg2 / 2.0) * (t2 - r2) + (c.cpg3 / 3.0) * (t3 - r3) +
           (c.cpg4 / 4.0) * (t4 - r4);
}

// hvr (Tc - T)^ev below the critical temperature, 0 at and above it
template <class S>
S vaporization_enthalpy(const ComponentProps& c, const S& t_f)
{
    const S d = c.t_crit - t_f;
    if (c.hvr == 0.0 || !(value(d) > 0.0)) return S(0.0);
    return c.hvr * pow(d, c.ev);
}

template <class S>
S liquid_component_enthalpy(const ComponentProps& c, const S& t_f, double t_ref)
{
    return gas_component_enthalpy(c, t_f, t_ref) - vaporization_enthalpy(c, t_f);
}

template <class S>
S oil_enthalpy(const FluidModel& f, const S& t_f, const S* x_oil)
{
    S h(0.0);
    for (int i = 0; i < f.nco(); ++i)
        h += x_oil[i] * liquid_component_enthalpy(f.comp(f.oil()[i]), t_f, f.t_ref());
    return h;
}

template <class S>
S gas_enthalpy(const FluidModel& f, const S& t_f, const CompArray<S>& y)
{
    S h(0.0);
    for (int c : f.volatiles()) h += y[c] * gas_component_enthalpy(f.comp(c), t_f, f.t_ref());
    return h;
}

// U = H - p/rho, flow work converted from psi·ft³ to Btu
template <class S>
S internal_energy(const S& h, const S& p, const S& rho)
{
    return h - units::kPsiFt3ToBtu * p / rho;
}

// Btu per ft³ of rock
template <class S>
S rock_internal_energy(double cp1, double cp2, const S& t_f, double t_ref)
{
    return cp1 * (t_f - t_ref) + (cp2 / 2.0) * (t_f * t_f - t_ref * t_ref);
}

template <class S>
S coke_internal_energy(double cp_c, const S& t_f, double t_ref)
{
    return cp_c * (t_f - t_ref);
}

// ---------------------------------------------------------------- porosity

enum class PorosityModel { linear, nonlinear };

struct PorosityParams {
    double cpor = 0.0;
    double ctpor = 0.0;
    double cptpor = 0.0;
    PorosityModel model = PorosityModel::linear;
    double p_ref = 14.7;
    double t_ref = 77.0;
    bool operator==(const PorosityParams&) const = default;
};

template <class S>
struct Porosity {
    S fluid;  // pore space left for fluids
    S total;  // rock pore space including the coke-filled part
};

template <class S>
Porosity<S> porosity(const PorosityParams& r, double phi_ref, const S& p, const S& t_f, const S& cc,
                     double rho_coke)
{
    const S dp = p - r.p_ref;
    const S dt = t_f - r.t_ref;
    const S ctot = r.cpor * dp - r.ctpor * dt + r.cptpor * dp * dt;
    Porosity<S> out;
    out.total = r.model == PorosityModel::linear ? phi_ref * (1.0 + ctot) : phi_ref * exp(ctot);
    const S phi_coke = rho_coke > 0.0 ? cc / rho_coke : S(0.0);
    out.fluid = out.total - phi_coke;
    if (!(value(out.fluid) > 0.0)) throw_pore_space_exhausted(value(out.total), value(phi_coke));
    return out;
}

}  // namespace isc
