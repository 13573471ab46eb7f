#pragma once

// Newton iteration, timestep control and the run loop.

#include <functional>
#include <memory>
#include <vector>

#include "isc/assembly.hpp"
#include "isc/linsolve.hpp"
#include "isc/model.hpp"

namespace isc {

// New saturation for one phase given the raw Newton target.
//   standard: sqrt(eps S) below zero, max(target, S/2) inside [0, eps)
//   root:     sqrt(eps S) below zero only
//   halving:  max(target, S/2) anywhere below eps
double damp_saturation(double s_old, double target, double eps, DampingRule rule);

// u_new = u + du with saturation damping, bound clipping and the optional
// per-iteration chops. Returns true when anything was modified.
bool apply_update(const Model& m, const State& u, const std::vector<double>& du,
                  const std::vector<double>& dbhp, State& out);

// Scaled max-norm of an assembled residual (see README for the scaling).
double residual_norm(const Model& m, const LinearSystem& sys, const OldTime& old,
                     const StepContext& ctx);

struct RunOptions {
    int threads = 1;
    JacobianMode jacobian = JacobianMode::analytic;
    bool serial = false;  // reference assembly/solve kernels
    bool audit = true;    // per-step component balance audit
    // called before every Newton assembly with (accepted steps, iteration);
    // may throw an isc::Error to exercise the cut path
    std::function<void(int, int)> before_iteration;
};

struct StepRecord {
    double t = 0.0;  // end of step
    double dt = 0.0;
    int newton = 0;
    int linear = 0;
    int cuts = 0;             // failed attempts before this step
    double imbalance = 0.0;   // max over components of the per-step balance error
};

struct RunStats {
    int steps = 0;
    int newton = 0;
    int linear = 0;
    int cuts = 0;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
    double total_seconds = 0.0;
    double max_step_imbalance = 0.0;
    double cumulative_imbalance = 0.0;  // max over components, relative to throughput
    std::vector<StepRecord> log;
};

struct Frame {
    double t = 0.0;
    const State* state = nullptr;
    std::vector<WellFlows> wells;
};

struct NewtonResult {
    int iterations = 0;  // assemblies
    int linear = 0;
    double residual = 0.0;
};

class Simulator {
public:
    Simulator(const Model& m, RunOptions opt);
    ~Simulator();

    using FrameSink = std::function<void(const Frame&)>;
    // Integrates to the schedule end, calling sink at report times and at
    // the end.
    RunStats run(const FrameSink& sink);

    // One Newton solve of the step [ctx.t, ctx.t + ctx.dt] starting from u.
    // Throws on failure; u is then undefined.
    NewtonResult newton(State& u, const OldTime& old, StepContext& ctx);

    const State& state() const { return state_; }
    void set_state(State s) { state_ = std::move(s); }
    Assembler& assembler() { return assembler_; }
    const LinearSystem& system() const { return sys_; }
    const RunStats& stats() const { return stats_; }

private:
    void update_pressure_limits(const State& u, StepContext& ctx);

    const Model& m_;
    RunOptions opt_;
    Assembler assembler_;
    LinearSystem sys_;
    LinearSolver solver_;
    State state_;
    RunStats stats_;
};

// Max relative entry discrepancy between the analytic and the central
// difference Jacobian (cell blocks, B, C and D), over entries whose larger
// magnitude exceeds floor_abs.
double jacobian_discrepancy(const Model& m, const State& u, const OldTime& old,
                            const StepContext& ctx, double floor_abs = 1e-12);

}  // namespace isc
