#pragma once

// Keyword input decks.
//
// A deck is a sequence of sections, each opened by a `*SECTION` line:
//   GRID ROCK COMPONENTS KVALUES DENSITY VISCOSITY ENTHALPY REACTIONS
//   RELPERM-SWT RELPERM-SLT INIT WELL SCHEDULE SOLVER
// Rows are whitespace separated, `#` comments run to end of line. Rows inside
// a section are `*KEYWORD value...`, except the RELPERM tables which are
// bare numeric rows. Array values accept the `n*value` repeat form.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isc/fluid.hpp"
#include "isc/grid.hpp"
#include "isc/kinetics.hpp"
#include "isc/pvt.hpp"
#include "isc/rockfluid.hpp"

namespace isc {

struct RockSpec {
    std::vector<double> permx, permy, permz;  // md, one per cell
    std::vector<double> porosity;             // reference porosity, one per cell
    double cpor = 0.0, ctpor = 0.0, cptpor = 0.0;
    PorosityModel model = PorosityModel::linear;
    double cp1 = 35.0, cp2 = 0.0;  // rock volumetric heat capacity, Btu/(ft³·°F)
    // thermal conductivities, Btu/(ft·day·°F)
    double k_water = 0.0, k_oil = 0.0, k_gas = 0.0, k_rock = 0.0, k_coke = 0.0;
    HeatLossConfig heat_loss;
    bool operator==(const RockSpec&) const = default;
};

struct FluidSpec {
    std::vector<ComponentProps> comps;
    double p_ref = 14.7;
    double t_ref = 77.0;
    bool operator==(const FluidSpec&) const = default;
};

struct ReactionSetSpec {
    std::vector<ReactionSpec> reactions;
    double c_cmax = 0.0;  // required when a cracking reaction exists
    double stoich_tol = 5e-3;
    bool operator==(const ReactionSetSpec&) const = default;
};

struct InitSpec {
    double p = 0.0;
    double t = 0.0;
    double sw = 0.0, so = 0.0, sg = 0.0;
    std::vector<double> x;  // oil components, deck order
    std::vector<double> y;  // every volatile component, deck order
    double cc = 0.0;
    bool operator==(const InitSpec&) const = default;
};

enum class WellKind { injector, producer };
enum class ControlKind { bhp, phase_rate, total_rate };
enum class Phase { water = 0, oil = 1, gas = 2 };
enum class RateUnit { lbmol_per_day, ft3_per_day, ft3_per_hr };
enum class RateConditions { standard, reservoir };

struct PerfSpec {
    int i = 1, j = 1, k = 1;  // 1-based
    double wi = 0.0;           // md·ft; > 0 bypasses the Peaceman formula
    double rw = 0.25;          // ft
    double skin = 0.0;
    bool operator==(const PerfSpec&) const = default;
};

struct WellSpec {
    std::string name;
    WellKind kind = WellKind::producer;
    std::vector<PerfSpec> perfs;
    ControlKind control = ControlKind::bhp;
    Phase phase = Phase::gas;
    double target = 0.0;  // psi for bhp, magnitude in `unit` for rates
    RateUnit unit = RateUnit::lbmol_per_day;
    RateConditions conditions = RateConditions::standard;
    std::vector<std::pair<std::string, double>> inject;  // injected stream
    double tinj = 77.0;
    double pinj_max = 0.0;  // 0 = unlimited
    double heater_rate = 0.0;  // Btu/day
    double heater_stop = 0.0;  // day
    bool operator==(const WellSpec&) const = default;
};

struct ScheduleSpec {
    std::vector<double> report_times;  // day
    double end = 0.0;
    double dt0 = 1e-4;
    double dt_min = 1e-9;
    double dt_max = 1.0;
    double growth = 2.0;
    double cut = 0.5;
    int growth_newton_limit = 4;
    bool operator==(const ScheduleSpec&) const = default;
};

enum class PreconditionerKind { none, block_jacobi, ras };
enum class JacobianMode { analytic, numeric };
// standard: root rule below zero, halving inside [0, eps)
enum class DampingRule { standard, root, halving };

struct SolverSpec {
    double newton_tol = 1e-2;
    double linear_tol = 1e-5;
    int max_newton = 12;
    int max_linear = 200;
    int threads = 1;
    // preconditioner blocks; fixed independently of the thread count so that
    // results do not change with it
    int subdomains = 8;
    PreconditionerKind precond = PreconditionerKind::ras;
    double per_eps = 1e-4;
    JacobianMode jacobian = JacobianMode::analytic;
    DampingRule damping = DampingRule::standard;
    double max_dtemp = 0.0;  // per-iteration temperature chop, °F; 0 = off
    double max_dsat = 0.0;   // per-iteration saturation chop; 0 = off
    bool operator==(const SolverSpec&) const = default;
};

struct Deck {
    GridSpec grid;
    RockSpec rock;
    FluidSpec fluid;
    ReactionSetSpec reactions;
    SatTable swt, slt;
    InitSpec init;
    std::vector<WellSpec> wells;
    ScheduleSpec schedule;
    SolverSpec solver;
    bool operator==(const Deck&) const = default;
};

Deck parse_deck(std::string_view text);
Deck read_deck_file(const std::string& path);
std::string write_deck(const Deck& deck);

// Full semantic validation, also run by parse_deck. Throws isc::Error.
void validate_deck(const Deck& deck);

const char* to_string(RateLaw law);
const char* to_string(WellKind kind);
const char* to_string(PreconditionerKind kind);
const char* to_string(JacobianMode mode);

}  // namespace isc
