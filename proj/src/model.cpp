#include "isc/model.hpp"

#include <cmath>
#include <numbers>

#include "isc/error.hpp"

namespace isc {

int component_row(const FluidModel& f, const Layout& l, int comp)
{
    if (comp == f.water()) return l.p();
    for (int i = 0; i < f.nco(); ++i)
        if (f.oil()[i] == comp) return l.x(i);
    for (int j = 0; j < f.ncg(); ++j)
        if (f.gas()[j] == comp) return l.y(j);
    return l.cc();
}

double equivalent_radius(double dx, double dy, double kx, double ky)
{
    const double ryx = std::sqrt(ky / kx), rxy = std::sqrt(kx / ky);
    return 0.28 * std::sqrt(ryx * dx * dx + rxy * dy * dy) /
           (std::pow(ky / kx, 0.25) + std::pow(kx / ky, 0.25));
}

double well_index(double dx, double dy, double h, double kx, double ky, double rw, double skin)
{
    if (!(kx > 0.0) || !(ky > 0.0) || !(rw > 0.0))
        throw Error(ErrorCode::non_physical_value, "well index needs kx, ky, rw > 0");
    const double re = equivalent_radius(dx, dy, kx, ky);
    const double denom = std::log(re / rw) + skin;
    if (!(denom > 0.0))
        throw Error(ErrorCode::non_physical_value,
                    "Peaceman well index is not positive (rw too large for the cell); give *WI");
    return 2.0 * std::numbers::pi * h * std::sqrt(kx * ky) / denom;
}

Model build_model(const Deck& deck)
{
    validate_deck(deck);
    Model m;
    m.deck = deck;
    m.grid = Grid(deck.grid, deck.rock.permx, deck.rock.permy, deck.rock.permz, deck.rock.porosity);
    m.fluid = FluidModel(deck.fluid.comps, deck.fluid.p_ref, deck.fluid.t_ref);
    m.reactions = ReactionModel(m.fluid, deck.reactions.reactions, deck.reactions.c_cmax);
    m.rockfluid = RockFluid(deck.swt, deck.slt);
    m.porosity.cpor = deck.rock.cpor;
    m.porosity.ctpor = deck.rock.ctpor;
    m.porosity.cptpor = deck.rock.cptpor;
    m.porosity.model = deck.rock.model;
    m.porosity.p_ref = deck.fluid.p_ref;
    m.porosity.t_ref = deck.fluid.t_ref;
    m.layout = Layout(m.fluid.nco(), m.fluid.ncg());
    m.comp_row.fill(-1);
    m.vol_slot.fill(-1);
    for (int c = 0; c < m.fluid.ncomp(); ++c) m.comp_row[c] = component_row(m.fluid, m.layout, c);
    for (std::size_t v = 0; v < m.fluid.volatiles().size(); ++v)
        m.vol_slot[m.fluid.volatiles()[v]] = static_cast<int>(v);
    if (m.fluid.has_solid()) {
        m.rho_coke = m.fluid.comp(m.fluid.solid()).rho_ref;
        m.cp_coke = m.fluid.comp(m.fluid.solid()).cp_solid;
    }
    m.per_eps = deck.solver.per_eps;
    m.t_ini = deck.init.t;

    for (const WellSpec& ws : deck.wells) {
        Well w;
        w.name = ws.name;
        w.kind = ws.kind;
        for (const PerfSpec& p : ws.perfs) {
            const int c = m.grid.index(p.i - 1, p.j - 1, p.k - 1);
            w.cells.push_back(c);
            w.wi.push_back(p.wi > 0.0 ? p.wi
                                      : well_index(m.grid.dx(c), m.grid.dy(c), m.grid.dz(c),
                                                   m.grid.permx(c), m.grid.permy(c), p.rw, p.skin));
        }
        w.z_bh = m.grid.depth(w.cells.front());
        w.control = ws.control;
        w.phase = ws.phase;
        w.target = ws.target;
        w.unit = ws.unit;
        w.conditions = ws.conditions;
        w.tinj = ws.tinj;
        w.pinj_max = ws.pinj_max;
        w.heater_rate = ws.heater_rate;
        w.heater_stop = ws.heater_stop;
        w.y_inj.fill(0.0);
        if (ws.kind == WellKind::injector) {
            for (const auto& [name, v] : ws.inject) w.y_inj[m.fluid.index_of(name)] = v;
            w.mu_inj = gas_viscosity(m.fluid, ws.tinj, w.y_inj);
            w.h_inj = gas_enthalpy(m.fluid, ws.tinj, w.y_inj);
            for (int c : m.fluid.volatiles()) w.mw_inj += w.y_inj[c] * m.fluid.comp(c).M;
        }
        m.wells.push_back(std::move(w));
    }
    return m;
}

State initial_state(const Model& m)
{
    const Layout& l = m.layout;
    const FluidModel& f = m.fluid;
    const InitSpec& in = m.deck.init;
    const int n = m.ncell();

    // The deck lists y for every volatile component, but only the
    // non-condensable ones are unknowns; the rest follow from K*. Rescale the
    // non-condensables so the gas constraint holds at t = 0.
    const CompArray<double> kstar = pseudo_k_values(f, in.p, in.t, in.sw, in.so, m.per_eps);
    double derived = 0.0;
    derived += kstar[f.water()];
    for (int i = 0; i < f.nco(); ++i) derived += kstar[f.oil()[i]] * in.x[i];
    std::vector<double> yg(f.ncg());
    double sum_g = 0.0;
    for (int j = 0; j < f.ncg(); ++j) {
        for (std::size_t v = 0; v < f.volatiles().size(); ++v)
            if (f.volatiles()[v] == f.gas()[j]) yg[j] = in.y[v];
        sum_g += yg[j];
    }
    const double scale = sum_g > 0.0 ? std::max(0.0, 1.0 - derived) / sum_g : 0.0;

    State s;
    s.u.assign(static_cast<std::size_t>(n) * l.nequ, 0.0);
    for (int c = 0; c < n; ++c) {
        double* u = &s.u[static_cast<std::size_t>(c) * l.nequ];
        u[l.p()] = in.p;
        for (int i = 0; i < f.nco(); ++i) u[l.x(i)] = in.x[i];
        for (int j = 0; j < f.ncg(); ++j) u[l.y(j)] = yg[j] * scale;
        u[l.t()] = in.t;
        u[l.sw()] = in.sw;
        u[l.sg()] = in.sg;
        u[l.cc()] = in.cc;
    }
    for (const Well& w : m.wells) {
        if (w.control == ControlKind::bhp) s.bhp.push_back(w.target);
        else s.bhp.push_back(in.p);
    }
    return s;
}

}  // namespace isc
