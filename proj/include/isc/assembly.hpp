#pragma once

// Residual and Jacobian assembly.
//
// Residual signs: every conservation row is
//   V/dt (acc - acc^n) + sum(outflow) - well inflow - V source
// in lbmol/day (mass) or Btu/day (energy). Constraint rows are
// sum(x) - 1 and sum(y) - 1.

#include <memory>
#include <vector>

#include "isc/model.hpp"
#include "isc/system.hpp"

namespace isc {

// Old-time accumulations, per cell: moles of every component, energy, C_c.
// `q` keeps the reaction sources at the same state (ncomp per cell), used
// by the balance audit.
struct OldTime {
    int stride = 0;
    std::vector<double> acc;
    std::vector<double> q;
    const double* cell(int c) const { return acc.data() + static_cast<std::size_t>(c) * stride; }
};

// What the residual needs besides the unknowns.
struct StepContext {
    double dt = 1.0;
    double t = 0.0;              // start of the step
    std::vector<char> at_pmax;   // injector currently held at its pressure limit
    int threads = 1;
};

bool heater_on(const Well& w, double t_start);
// well equation in force: fixed bhp (deck control or pressure limit) or rate
bool bhp_controlled(const Well& w, const StepContext& ctx, int well);
double bhp_target(const Well& w, const StepContext& ctx, int well);

OldTime old_time(const Model& m, const State& s, int threads = 1);

// Per-well flows at a state, positive into the reservoir.
struct WellFlows {
    std::array<double, 3> phase{};  // lbmol/day
    std::vector<double> comp;       // lbmol/day by component id
    double energy = 0.0;            // Btu/day, heater included
    double measure = 0.0;           // rate-constraint quantity, deck unit/day
};

class Assembler {
public:
    explicit Assembler(const Model& m);
    ~Assembler();
    Assembler(const Assembler&) = delete;
    Assembler& operator=(const Assembler&) = delete;

    const BlockPattern& pattern() const { return pattern_; }
    const Model& model() const { return *model_; }

    // Analytic Jacobian. Parallel over cells; fluxes are evaluated by both
    // cells of a connection so every row is written by one thread only.
    void assemble(const State& u, const OldTime& old, const StepContext& ctx, LinearSystem& sys);
    // Serial reference: one pass over connections scattering to both cells.
    void assemble_serial(const State& u, const OldTime& old, const StepContext& ctx,
                         LinearSystem& sys);
    // Central differences, relative step 1e-6 with absolute floor 1e-8.
    // reference: evaluate in quad precision with step 1e-8 (floor 1e-10),
    // accurate enough to check the analytic Jacobian entry by entry.
    void assemble_numeric(const State& u, const OldTime& old, const StepContext& ctx,
                          LinearSystem& sys, bool reference = false);

    // Residual only (cells, then one entry per well).
    void residual(const State& u, const OldTime& old, const StepContext& ctx,
                  std::vector<double>& f_cells, std::vector<double>& f_wells);

    std::vector<WellFlows> well_flows(const State& u, const StepContext& ctx);

private:
    const Model* model_;
    BlockPattern pattern_;
    std::shared_ptr<void> work_;
};

}  // namespace isc
