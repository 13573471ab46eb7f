#include "isc/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "isc/error.hpp"
#include "isc/cell.hpp"
#include "isc/grid.hpp"

namespace isc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::vector<int>> well_cells(const Model& m)
{
    std::vector<std::vector<int>> w;
    for (const Well& well : m.wells) w.push_back(well.cells);
    return w;
}

bool recoverable(const Error& e)
{
    if (e.code() == ErrorCode::simulation_stalled) return false;
    return e.category() == ErrorCategory::solver || e.category() == ErrorCategory::physics;
}

}  // namespace

double damp_saturation(double s_old, double target, double eps, DampingRule rule)
{
    if (target >= eps) return target;
    switch (rule) {
    case DampingRule::standard:
        return target < 0.0 ? std::sqrt(eps * s_old) : std::max(target, 0.5 * s_old);
    case DampingRule::root:
        return target < 0.0 ? std::sqrt(eps * s_old) : target;
    case DampingRule::halving:
        return std::max(target, 0.5 * s_old);
    }
    return target;
}

bool apply_update(const Model& m, const State& u, const std::vector<double>& du,
                  const std::vector<double>& dbhp, State& out)
{
    const Layout& l = m.layout;
    const SolverSpec& sp = m.deck.solver;
    const int N = l.nequ;
    const double eps = m.per_eps;
    bool modified = false;
    out.u.resize(u.u.size());
    out.bhp.resize(u.bhp.size());

    auto chop = [&](double d, double lim) {
        if (lim > 0.0 && std::abs(d) > lim) {
            modified = true;
            return std::copysign(lim, d);
        }
        return d;
    };
    auto set = [&](double& dst, double v, double raw) {
        if (v != raw) modified = true;
        dst = v;
    };

    for (int c = 0; c < m.ncell(); ++c) {
        const double* a = u.u.data() + static_cast<std::size_t>(c) * N;
        const double* d = du.data() + static_cast<std::size_t>(c) * N;
        double* b = out.u.data() + static_cast<std::size_t>(c) * N;
        for (int k = 0; k < N; ++k) b[k] = a[k] + d[k];

        // pressure and temperature stay physical: at most halve the distance
        // to zero (absolute zero for T) per iteration
        const double p_raw = b[l.p()];
        set(b[l.p()], std::max(p_raw, 0.5 * a[l.p()]), p_raw);
        double dt = chop(d[l.t()], sp.max_dtemp);
        const double t_floor = a[l.t()] - 0.5 * (a[l.t()] + 459.67);
        const double t_raw = a[l.t()] + dt;
        set(b[l.t()], std::max(t_raw, t_floor), a[l.t()] + d[l.t()]);

        for (int i = 0; i < l.nco; ++i) {
            const double raw = b[l.x(i)];
            set(b[l.x(i)], std::clamp(raw, 0.0, 1.0), raw);
        }
        for (int j = 0; j < l.ncg; ++j) {
            const double raw = b[l.y(j)];
            set(b[l.y(j)], std::clamp(raw, 0.0, 1.0), raw);
        }
        {
            const double raw = b[l.cc()];
            set(b[l.cc()], std::max(raw, 0.0), raw);
        }

        const double sw0 = a[l.sw()], sg0 = a[l.sg()], so0 = 1.0 - sw0 - sg0;
        const double sw_t = sw0 + chop(d[l.sw()], sp.max_dsat);
        const double sg_t = sg0 + chop(d[l.sg()], sp.max_dsat);
        double sw = damp_saturation(sw0, sw_t, eps, sp.damping);
        double sg = sg_t < 0.0 ? 0.5 * sg0 : sg_t;
        const double so_t = 1.0 - sw - sg;
        const double so = damp_saturation(so0, so_t, eps, sp.damping);
        if (so > so_t) {
            const double excess = so - so_t;
            const double tot = sw + sg;
            if (tot > 0.0) {
                sw -= excess * sw / tot;
                sg -= excess * sg / tot;
            }
        }
        sw = std::clamp(sw, 0.0, 1.0);
        sg = std::clamp(sg, 0.0, 1.0);
        if (sw + sg > 1.0) {
            const double s = sw + sg;
            sw /= s;
            sg /= s;
        }
        set(b[l.sw()], sw, a[l.sw()] + d[l.sw()]);
        set(b[l.sg()], sg, a[l.sg()] + d[l.sg()]);
    }
    for (std::size_t w = 0; w < u.bhp.size(); ++w) {
        const double raw = u.bhp[w] + dbhp[w];
        set(out.bhp[w], std::max(raw, 0.5 * u.bhp[w]), raw);
    }
    return modified;
}

double residual_norm(const Model& m, const LinearSystem& sys, const OldTime& old,
                     const StepContext& ctx)
{
    const Layout& l = m.layout;
    const FluidModel& f = m.fluid;
    const int N = l.nequ;
    const int nc = f.ncomp();
    double worst = 0.0;
    for (int c = 0; c < m.ncell(); ++c) {
        const double* r = sys.f.data() + static_cast<std::size_t>(c) * N;
        const double* acc = old.cell(c);
        const double vdt = m.grid.volume(c) / ctx.dt;
        double moles = 0.0;
        for (int k = 0; k < nc; ++k) moles += acc[k];
        const double ms = vdt * std::max(1.0, moles);
        for (int k = 0; k < nc; ++k) worst = std::max(worst, std::abs(r[m.comp_row[k]]) / ms);
        if (!f.has_solid()) worst = std::max(worst, std::abs(r[l.cc()]) / ms);
        worst = std::max(worst, std::abs(r[l.t()]) / (vdt * std::max(1.0, std::abs(acc[nc]))));
        worst = std::max(worst, std::abs(r[l.sw()]));
        worst = std::max(worst, std::abs(r[l.sg()]));
        if (!std::isfinite(r[0]) || !std::isfinite(worst)) return std::numeric_limits<double>::infinity();
    }
    for (std::size_t w = 0; w < m.wells.size(); ++w) {
        const Well& well = m.wells[w];
        const double fw = std::abs(sys.wells[w].F);
        const double scale = bhp_controlled(well, ctx, static_cast<int>(w))
                                 ? std::max(1.0, bhp_target(well, ctx, static_cast<int>(w)))
                                 : std::max(1.0, std::abs(rate_target_per_day(well)));
        worst = std::max(worst, fw / scale);
    }
    return worst;
}

Simulator::Simulator(const Model& m, RunOptions opt)
    : m_(m),
      opt_(opt),
      assembler_(m),
      sys_(assembler_.pattern(), m),
      solver_(assembler_.pattern(), well_cells(m), m.deck.solver,
              partition(m.grid, m.deck.solver.subdomains).cells),
      state_(initial_state(m))
{
}

Simulator::~Simulator() = default;

void Simulator::update_pressure_limits(const State& u, StepContext& ctx)
{
    bool any = false;
    for (const Well& w : m_.wells) any |= w.kind == WellKind::injector && w.is_rate() && w.pinj_max > 0.0;
    if (!any) return;
    std::vector<WellFlows> flows;
    for (std::size_t w = 0; w < m_.wells.size(); ++w) {
        const Well& well = m_.wells[w];
        if (well.kind != WellKind::injector || !well.is_rate() || well.pinj_max <= 0.0) continue;
        if (!ctx.at_pmax[w]) {
            if (u.bhp[w] > well.pinj_max) ctx.at_pmax[w] = 1;
        } else {
            if (flows.empty()) flows = assembler_.well_flows(u, ctx);
            if (flows[w].measure > rate_target_per_day(well)) ctx.at_pmax[w] = 0;
        }
    }
}

NewtonResult Simulator::newton(State& u, const OldTime& old, StepContext& ctx)
{
    const SolverSpec& sp = m_.deck.solver;
    NewtonResult res;
    double prev = std::numeric_limits<double>::infinity();
    int growth = 0;
    std::vector<double> du, dbhp;
    State next;
    for (int it = 1; it <= sp.max_newton; ++it) {
        if (opt_.before_iteration) opt_.before_iteration(stats_.steps, it);
        auto t0 = Clock::now();
        if (opt_.jacobian == JacobianMode::numeric) assembler_.assemble_numeric(u, old, ctx, sys_);
        else if (opt_.serial) assembler_.assemble_serial(u, old, ctx, sys_);
        else assembler_.assemble(u, old, ctx, sys_);
        stats_.assembly_seconds += seconds_since(t0);
        res.iterations = it;
        const double norm = residual_norm(m_, sys_, old, ctx);
        res.residual = norm;
        if (!std::isfinite(norm)) throw Error(ErrorCode::diverged_residual, "non-finite residual");
        if (norm <= sp.newton_tol) return res;
        if (norm > prev) {
            if (++growth >= 3)
                throw Error(ErrorCode::diverged_residual,
                            "residual grew in 3 consecutive iterations");
        } else {
            growth = 0;
        }
        prev = norm;
        t0 = Clock::now();
        const LinearStats ls = solver_.solve(sys_, du, dbhp, ctx.threads, opt_.serial);
        stats_.solve_seconds += seconds_since(t0);
        res.linear += ls.iterations;
        apply_update(m_, u, du, dbhp, next);
        std::swap(u, next);
        update_pressure_limits(u, ctx);
    }
    throw Error(ErrorCode::max_iterations,
                "Newton did not converge in " + std::to_string(sp.max_newton) + " iterations");
}

RunStats Simulator::run(const FrameSink& sink)
{
    const ScheduleSpec& sch = m_.deck.schedule;
    const auto start = Clock::now();
    stats_ = RunStats{};
    const int nc = m_.fluid.ncomp();
    const int N = m_.nequ();
    const double end = sch.end;
    const double tiny = 1e-12 * std::max(1.0, end);

    std::vector<double> reports;
    for (double r : sch.report_times)
        if (r <= end + tiny) reports.push_back(r);
    std::sort(reports.begin(), reports.end());
    reports.erase(std::unique(reports.begin(), reports.end()), reports.end());
    std::vector<double> breaks = reports;
    breaks.push_back(end);
    for (const Well& w : m_.wells)
        if (w.heater_rate > 0.0 && w.heater_stop > 0.0 && w.heater_stop < end) breaks.push_back(w.heater_stop);
    std::sort(breaks.begin(), breaks.end());

    StepContext ctx;
    ctx.threads = opt_.threads;
    ctx.at_pmax.assign(m_.wells.size(), 0);

    std::size_t next_report = 0;
    double last_emitted = -1.0;
    auto emit = [&](double t) {
        ctx.t = t;
        Frame fr;
        fr.t = t;
        fr.state = &state_;
        fr.wells = assembler_.well_flows(state_, ctx);
        sink(fr);
        last_emitted = t;
    };

    double t = 0.0;
    while (next_report < reports.size() && reports[next_report] <= tiny) emit(reports[next_report++]);

    std::vector<double> cum(nc, 0.0), thr(nc, 0.0);
    OldTime old = old_time(m_, state_, opt_.threads);
    double dt = sch.dt0;
    int cuts = 0;
    while (t < end - tiny) {
        const double bp = *std::upper_bound(breaks.begin(), breaks.end(), t + tiny);
        double h = std::min(dt, bp - t);
        // avoid leaving a sliver before the breakpoint
        if (bp - t - h < 1e-3 * h) h = bp - t;
        ctx.t = t;
        ctx.dt = h;
        const std::vector<char> saved = ctx.at_pmax;
        State trial = state_;
        NewtonResult nr;
        try {
            nr = newton(trial, old, ctx);
        } catch (const Error& e) {
            if (!recoverable(e)) throw;
            ctx.at_pmax = saved;
            ++cuts;
            ++stats_.cuts;
            dt = h * sch.cut;
            if (dt < sch.dt_min)
                throw Error(ErrorCode::simulation_stalled,
                            "timestep fell below the minimum at t = " + std::to_string(t) +
                                " day (" + e.what() + ")");
            continue;
        }

        StepRecord rec;
        rec.dt = h;
        rec.newton = nr.iterations;
        rec.linear = nr.linear;
        rec.cuts = cuts;
        cuts = 0;
        OldTime next_old = old_time(m_, trial, opt_.threads);
        if (opt_.audit) {
            const auto flows = assembler_.well_flows(trial, ctx);
            for (int c = 0; c < nc; ++c) {
                const int row = m_.comp_row[c];
                double sum_f = 0.0, accum = 0.0, src = 0.0;
                for (int cell = 0; cell < m_.ncell(); ++cell) {
                    const double v = m_.grid.volume(cell);
                    sum_f += sys_.f[static_cast<std::size_t>(cell) * N + row];
                    accum += v * std::abs(next_old.cell(cell)[c] - old.cell(cell)[c]);
                    src += v * std::abs(next_old.q[static_cast<std::size_t>(cell) * nc + c]);
                }
                double wq = 0.0;
                for (const auto& wf : flows) wq += std::abs(wf.comp[c]);
                rec.imbalance = std::max(rec.imbalance, h * std::abs(sum_f) / std::max(1.0, accum));
                cum[c] += h * sum_f;
                thr[c] += h * (wq + src);
            }
            stats_.max_step_imbalance = std::max(stats_.max_step_imbalance, rec.imbalance);
        }
        state_ = std::move(trial);
        old = std::move(next_old);
        t = (bp - (t + h) <= tiny) ? bp : t + h;
        rec.t = t;
        ++stats_.steps;
        stats_.newton += nr.iterations;
        stats_.linear += nr.linear;
        stats_.log.push_back(rec);
        if (nr.iterations <= sch.growth_newton_limit) dt = std::min(sch.growth * dt, sch.dt_max);
        while (next_report < reports.size() && reports[next_report] <= t + tiny) emit(reports[next_report++]);
    }
    if (last_emitted < end - tiny || last_emitted < 0.0) emit(end);

    double worst = 0.0;
    for (int c = 0; c < nc; ++c)
        if (thr[c] > 0.0) worst = std::max(worst, std::abs(cum[c]) / thr[c]);
    stats_.cumulative_imbalance = worst;
    stats_.total_seconds = seconds_since(start);
    return stats_;
}

double jacobian_discrepancy(const Model& m, const State& u, const OldTime& old,
                            const StepContext& ctx, double floor_abs)
{
    Assembler as(m);
    LinearSystem an(as.pattern(), m), nu(as.pattern(), m);
    as.assemble(u, old, ctx, an);
    as.assemble_numeric(u, old, ctx, nu, true);
    double worst = 0.0;
    auto cmp = [&](double a, double b) {
        const double s = std::max(std::abs(a), std::abs(b));
        if (s <= floor_abs) return;
        worst = std::max(worst, std::abs(a - b) / s);
    };
    for (std::size_t k = 0; k < an.a.size(); ++k) cmp(an.a[k], nu.a[k]);
    for (std::size_t w = 0; w < an.wells.size(); ++w) {
        for (std::size_t k = 0; k < an.wells[w].B.size(); ++k) cmp(an.wells[w].B[k], nu.wells[w].B[k]);
        for (std::size_t k = 0; k < an.wells[w].C.size(); ++k) cmp(an.wells[w].C[k], nu.wells[w].C[k]);
        cmp(an.wells[w].D, nu.wells[w].D);
    }
    return worst;
}

}  // namespace isc
