#pragma once

// Per-cell property evaluation and the two-point flux / perforation terms.
// Everything is templated on the scalar so the residual and the analytic
// Jacobian come from one source.

#include <array>

#include "isc/kinetics.hpp"
#include "isc/model.hpp"
#include "isc/pvt.hpp"
#include "isc/units.hpp"

namespace isc {

inline constexpr int kWater = 0, kOil = 1, kGas = 2;

template <class S>
struct CellEval {
    S p, t, sw, sg, so, cc;
    std::array<S, kMaxComponents> x{};  // oil slot order
    CompArray<S> y{};                   // component id order
    std::array<S, 3> pp{}, rho{}, mu{}, h{}, u{}, mw{}, gamma{}, mob{};
    S krsum;
    Porosity<S> phi;
    S kt;
    CompArray<S> moles{};  // lbmol per ft³ of bulk volume
    S energy;              // Btu per ft³ of bulk volume
    std::array<S, kMaxReactions> rates{};
    CompArray<S> q{};  // reaction sources, lbmol/(ft³·day)
    S heat;            // Btu/(ft³·day)
    S loss;            // Btu/(ft³·day)
    S sum_x, sum_y;
};

template <class S>
void evaluate_cell(const Model& m, int cell, const S* u, CellEval<S>& e)
{
    const Layout& l = m.layout;
    const FluidModel& f = m.fluid;
    const RockSpec& rock = m.deck.rock;
    const double tref = f.t_ref();

    e.p = u[l.p()];
    e.t = u[l.t()];
    e.sw = u[l.sw()];
    e.sg = u[l.sg()];
    e.so = 1.0 - e.sw - e.sg;
    e.cc = u[l.cc()];
    for (int i = 0; i < f.nco(); ++i) e.x[i] = u[l.x(i)];
    std::array<S, kMaxComponents> yg{};
    for (int j = 0; j < f.ncg(); ++j) yg[j] = u[l.y(j)];

    const RelPerm<S> kr = m.rockfluid.evaluate(e.sw, e.sg);
    e.pp[kWater] = e.p - kr.pcow;
    e.pp[kOil] = e.p;
    e.pp[kGas] = e.p + kr.pcog;

    const CompArray<S> kstar = pseudo_k_values(f, e.p, e.t, e.sw, e.so, m.per_eps);
    e.y = gas_fractions(f, kstar, e.x.data(), yg.data());

    const ComponentProps& water = f.comp(f.water());
    e.rho[kWater] = liquid_component_density(water, e.pp[kWater], e.t, f.p_ref(), tref);
    e.rho[kOil] = oil_phase_density(f, e.p, e.t, e.x.data());
    e.rho[kGas] = gas_density(e.pp[kGas], e.t, z_factor(f, e.pp[kGas], e.t, e.y));

    e.mu[kWater] = liquid_component_viscosity(water, e.t);
    e.mu[kOil] = oil_viscosity(f, e.t, e.x.data());
    e.mu[kGas] = gas_viscosity(f, e.t, e.y);

    e.h[kWater] = liquid_component_enthalpy(water, e.t, tref);
    e.h[kOil] = oil_enthalpy(f, e.t, e.x.data());
    e.h[kGas] = gas_enthalpy(f, e.t, e.y);

    e.mw[kWater] = S(water.M);
    e.mw[kOil] = S(0.0);
    for (int i = 0; i < f.nco(); ++i) e.mw[kOil] += e.x[i] * f.comp(f.oil()[i]).M;
    e.mw[kGas] = S(0.0);
    for (int c : f.volatiles()) e.mw[kGas] += e.y[c] * f.comp(c).M;

    const std::array<S, 3> krs = {kr.krw, kr.kro, kr.krg};
    for (int a = 0; a < 3; ++a) {
        e.u[a] = internal_energy(e.h[a], e.pp[a], e.rho[a]);
        e.gamma[a] = e.rho[a] * e.mw[a] * units::kGravityPsiPerFt;
        e.mob[a] = value(krs[a]) > 0.0 ? krs[a] * e.rho[a] / e.mu[a] : S(0.0);
    }
    e.krsum = kr.krw + kr.kro + kr.krg;

    e.phi = porosity(m.porosity, m.grid.phi_ref(cell), e.p, e.t, e.cc, m.rho_coke);
    const S& phif = e.phi.fluid;
    e.kt = phif * (e.sw * rock.k_water + e.so * rock.k_oil + e.sg * rock.k_gas) +
           (1.0 - e.phi.total) * rock.k_rock + e.cc * rock.k_coke;

    const S wg = e.rho[kGas] * e.sg;
    const S wo = e.rho[kOil] * e.so;
    e.moles.fill(S(0.0));
    e.moles[f.water()] = phif * (e.rho[kWater] * e.sw + wg * e.y[f.water()]);
    for (int i = 0; i < f.nco(); ++i) {
        const int c = f.oil()[i];
        e.moles[c] = phif * (wo * e.x[i] + wg * e.y[c]);
    }
    for (int j = 0; j < f.ncg(); ++j) {
        const int c = f.gas()[j];
        e.moles[c] = phif * wg * e.y[c];
    }
    if (f.has_solid()) e.moles[f.solid()] = e.cc;

    const S ur = rock_internal_energy(rock.cp1, rock.cp2, e.t, tref);
    const S uc = coke_internal_energy(m.cp_coke, e.t, tref);
    e.energy = phif * (e.rho[kWater] * e.sw * e.u[kWater] + wo * e.u[kOil] + wg * e.u[kGas]) +
               (1.0 - e.phi.total) * ur + e.cc * uc;

    RateInputs<S> in{e.t, e.pp[kGas], phif, e.so, e.rho[kOil], e.cc, e.x.data(), &e.y};
    reaction_rates(m.reactions, in, e.rates.data());
    e.q = mass_sources(m.reactions, e.rates.data());
    e.heat = heat_source(m.reactions, e.rates.data());
    e.loss = heat_loss(m.grid, cell, e.t, m.t_ini, rock.heat_loss);

    e.sum_x = S(0.0);
    for (int i = 0; i < f.nco(); ++i) e.sum_x += e.x[i];
    e.sum_y = S(0.0);
    for (int c : f.volatiles()) e.sum_y += e.y[c];
}

// Quantities a cell exposes to its faces and perforations, packed as
//   p[3] gamma[3] mob[3] h[3] rho[3] krsum T K_T x[nco] y[volatiles]
struct FaceLayout {
    static constexpr int p = 0, gamma = 3, mob = 6, h = 9, rho = 12, krsum = 15, t = 16, kt = 17,
                         x = 18;
    int nco = 1;
    int nvol = 3;
    int y() const { return x + nco; }
    int size() const { return x + nco + nvol; }
};

inline FaceLayout face_layout(const Model& m)
{
    return FaceLayout{m.fluid.nco(), static_cast<int>(m.fluid.volatiles().size())};
}

inline constexpr int kFaceMax = 18 + 7 + 8;

template <class S>
void pack_face(const Model& m, const FaceLayout& fl, const CellEval<S>& e, S* out)
{
    for (int a = 0; a < 3; ++a) {
        out[fl.p + a] = e.pp[a];
        out[fl.gamma + a] = e.gamma[a];
        out[fl.mob + a] = e.mob[a];
        out[fl.h + a] = e.h[a];
        out[fl.rho + a] = e.rho[a];
    }
    out[fl.krsum] = e.krsum;
    out[fl.t] = e.t;
    out[fl.kt] = e.kt;
    for (int i = 0; i < fl.nco; ++i) out[fl.x + i] = e.x[i];
    const auto& vol = m.fluid.volatiles();
    for (int v = 0; v < fl.nvol; ++v) out[fl.y() + v] = e.y[vol[v]];
}

// Flux of every conserved quantity from cell a to cell b (out of a), written
// into the mass and energy rows of `out`; the constraint and coke rows are
// left untouched.
template <class S>
void connection_flux(const Model& m, const FaceLayout& fl, const Connection& cn, const S* fa,
                     const S* fb, S* out)
{
    const Layout& l = m.layout;
    const FluidModel& f = m.fluid;
    const double dz = m.grid.depth(cn.a) - m.grid.depth(cn.b);
    const double tg = units::kDarcy * cn.trans;

    std::array<S, 3> flow;
    std::array<const S*, 3> up;
    for (int a = 0; a < 3; ++a) {
        const S gbar = 0.5 * (fa[fl.gamma + a] + fb[fl.gamma + a]);
        const S dphi = (fa[fl.p + a] - fb[fl.p + a]) - gbar * dz;
        up[a] = value(dphi) >= 0.0 ? fa : fb;
        flow[a] = tg * up[a][fl.mob + a] * dphi;
    }

    const S* yg = up[kGas] + fl.y();
    out[l.p()] = flow[kWater] + flow[kGas] * yg[m.vol_slot[f.water()]];
    for (int i = 0; i < f.nco(); ++i)
        out[l.x(i)] = flow[kOil] * up[kOil][fl.x + i] + flow[kGas] * yg[m.vol_slot[f.oil()[i]]];
    for (int j = 0; j < f.ncg(); ++j) out[l.y(j)] = flow[kGas] * yg[m.vol_slot[f.gas()[j]]];

    S e = cn.thermal * harmonic_mean(fa[fl.kt], fb[fl.kt]) * (fa[fl.t] - fb[fl.t]);
    for (int a = 0; a < 3; ++a) e += flow[a] * up[a][fl.h + a];
    out[l.t()] = e;
}

inline bool rate_counts_phase(const Well& w, int phase)
{
    if (w.control == ControlKind::total_rate) return true;
    return w.control == ControlKind::phase_rate && static_cast<int>(w.phase) == phase;
}

// Rate target in the deck unit per day.
inline double rate_target_per_day(const Well& w)
{
    return w.unit == RateUnit::ft3_per_hr ? w.target * units::kHoursPerDay : w.target;
}

// One perforation: flows into the reservoir (positive = injection).
template <class S>
struct PerfFlow {
    std::array<S, 3> phase{};   // lbmol/day
    CompArray<S> comp{};        // lbmol/day by component id
    S energy;                   // Btu/day
    S measure;                  // contribution to the well's rate constraint, deck unit/day
};

template <class S>
void perforation_flow(const Model& m, const FaceLayout& fl, const Well& w, int perf, const S* face,
                      const S& bhp, PerfFlow<S>& r)
{
    const FluidModel& f = m.fluid;
    const int cell = w.cells[perf];
    const double dz = w.z_bh - m.grid.depth(cell);
    const double g = units::kDarcy * w.wi[perf];
    for (auto& v : r.phase) v = S(0.0);
    r.comp.fill(S(0.0));
    r.energy = S(0.0);
    r.measure = S(0.0);

    const bool volumetric = w.unit != RateUnit::lbmol_per_day;
    const bool reservoir = w.conditions == RateConditions::reservoir;

    if (w.kind == WellKind::injector) {
        const S rho = injection_density(m, w, bhp);
        const S gamma = rho * w.mw_inj * units::kGravityPsiPerFt;
        const S q = g * (rho * face[fl.krsum] / w.mu_inj) * (bhp - face[fl.p + kGas] - gamma * dz);
        r.phase[kGas] = q;
        for (int c : f.volatiles()) r.comp[c] = q * w.y_inj[c];
        r.energy = q * w.h_inj;
        if (!rate_counts_phase(w, kGas)) return;
        if (!volumetric) r.measure = q;
        else if (reservoir) r.measure = q / rho;
        else r.measure = q * units::kStdMolarVolume;
        return;
    }

    const S* y = face + fl.y();
    for (int a = 0; a < 3; ++a) {
        const S dd = bhp - face[fl.p + a] - face[fl.gamma + a] * dz;
        r.phase[a] = g * face[fl.mob + a] * dd;
        r.energy += r.phase[a] * face[fl.h + a];
    }
    r.comp[f.water()] = r.phase[kWater] + r.phase[kGas] * y[m.vol_slot[f.water()]];
    for (int i = 0; i < f.nco(); ++i) {
        const int c = f.oil()[i];
        r.comp[c] = r.phase[kOil] * face[fl.x + i] + r.phase[kGas] * y[m.vol_slot[c]];
    }
    for (int j = 0; j < f.ncg(); ++j) {
        const int c = f.gas()[j];
        r.comp[c] = r.phase[kGas] * y[m.vol_slot[c]];
    }

    for (int a = 0; a < 3; ++a) {
        if (!rate_counts_phase(w, a)) continue;
        if (!volumetric) {
            r.measure += r.phase[a];
        } else if (reservoir) {
            r.measure += r.phase[a] / face[fl.rho + a];
        } else if (a == kGas) {
            r.measure += r.phase[a] * units::kStdMolarVolume;
        } else if (a == kWater) {
            r.measure += r.phase[a] / f.comp(f.water()).rho_ref;
        } else {
            S vol(0.0);  // molar volume of the oil at reference conditions
            for (int i = 0; i < f.nco(); ++i) vol += face[fl.x + i] / f.comp(f.oil()[i]).rho_ref;
            r.measure += r.phase[a] * vol;
        }
    }
}

}  // namespace isc
