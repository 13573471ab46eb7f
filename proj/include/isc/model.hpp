#pragma once

// Everything the solver needs, resolved once from a validated deck.

#include <string>
#include <vector>

#include "isc/deck.hpp"
#include "isc/fluid.hpp"
#include "isc/grid.hpp"
#include "isc/kinetics.hpp"
#include "isc/pvt.hpp"
#include "isc/rockfluid.hpp"

namespace isc {

// Unknown/equation alignment inside one cell block:
//   p  x_0..x_{nco-1}  y_0..y_{ncg-1}  T  S_w  S_g  C_c
//   water, oil i, gas j, energy, oil constraint, gas constraint, coke
struct Layout {
    int nco = 1;
    int ncg = 1;
    int nequ = 7;

    Layout() = default;
    Layout(int nco_, int ncg_) : nco(nco_), ncg(ncg_), nequ(nco_ + ncg_ + 5) {}

    int p() const { return 0; }
    int x(int i) const { return 1 + i; }
    int y(int j) const { return 1 + nco + j; }
    int t() const { return 1 + nco + ncg; }
    int sw() const { return nco + ncg + 2; }
    int sg() const { return nco + ncg + 3; }
    int cc() const { return nco + ncg + 4; }
};

// mass-equation row of a component id
int component_row(const FluidModel& f, const Layout& l, int comp);

// Peaceman well index of a vertical perforation, md·ft.
double well_index(double dx, double dy, double h, double kx, double ky, double rw, double skin);
// equivalent radius used by well_index
double equivalent_radius(double dx, double dy, double kx, double ky);

struct Well {
    std::string name;
    WellKind kind = WellKind::producer;
    std::vector<int> cells;
    std::vector<double> wi;  // md·ft
    double z_bh = 0.0;       // datum depth, ft (first perforation)

    ControlKind control = ControlKind::bhp;
    Phase phase = Phase::gas;
    double target = 0.0;  // psi, or rate per day in the deck unit
    RateUnit unit = RateUnit::lbmol_per_day;
    RateConditions conditions = RateConditions::standard;

    CompArray<double> y_inj{};  // by component id
    double tinj = 77.0;
    double pinj_max = 0.0;  // 0 = unlimited
    double mu_inj = 1.0;
    double h_inj = 0.0;
    double mw_inj = 0.0;

    double heater_rate = 0.0;
    double heater_stop = 0.0;

    bool is_rate() const { return control != ControlKind::bhp; }
};

struct Model {
    Deck deck;
    Grid grid;
    FluidModel fluid;
    ReactionModel reactions;
    RockFluid rockfluid;
    PorosityParams porosity;
    Layout layout;
    std::vector<Well> wells;

    CompArray<int> comp_row{};  // component id -> mass equation row
    CompArray<int> vol_slot{};  // component id -> position in fluid.volatiles(), -1 for solid

    double rho_coke = 0.0;  // 0 when there is no solid component
    double cp_coke = 0.0;
    double per_eps = 1e-4;
    double t_ini = 0.0;

    int ncell() const { return grid.ncell(); }
    int nequ() const { return layout.nequ; }
};

Model build_model(const Deck& deck);

// Primary unknowns: ncell blocks of nequ values, then one bhp per well.
struct State {
    std::vector<double> u;
    std::vector<double> bhp;
    bool operator==(const State&) const = default;
};

State initial_state(const Model& m);

// Injected gas density at the capped bottom-hole pressure.
template <class S>
S injection_density(const Model& m, const Well& w, const S& bhp)
{
    S p = bhp;
    if (w.pinj_max > 0.0 && value(p) > w.pinj_max) p = S(w.pinj_max);
    CompArray<S> y{};
    y.fill(S(0.0));
    for (int c : m.fluid.volatiles()) y[c] = S(w.y_inj[c]);
    const S tinj(w.tinj);
    return gas_density(p, tinj, z_factor(m.fluid, p, tinj, y));
}

}  // namespace isc
