#include "isc/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "assembly_impl.hpp"

namespace isc {

namespace detail {
#define ISC_DECLARE(N)                                                                             \
    extern template void assemble_analytic<N>(const Model&, const BlockPattern&,                   \
                                              std::shared_ptr<void>&, const State&, const OldTime&, \
                                              const StepContext&, LinearSystem&, bool);
ISC_DECLARE(7)
ISC_DECLARE(8)
ISC_DECLARE(9)
ISC_DECLARE(10)
ISC_DECLARE(11)
ISC_DECLARE(12)
#undef ISC_DECLARE
}  // namespace detail

bool heater_on(const Well& w, double t_start)
{
    return w.heater_rate > 0.0 && t_start < w.heater_stop;
}

bool bhp_controlled(const Well& w, const StepContext& ctx, int well)
{
    if (w.control == ControlKind::bhp) return true;
    return w.kind == WellKind::injector && well < static_cast<int>(ctx.at_pmax.size()) &&
           ctx.at_pmax[well];
}

double bhp_target(const Well& w, const StepContext&, int)
{
    return w.control == ControlKind::bhp ? w.target : w.pinj_max;
}

OldTime old_time(const Model& m, const State& s, int threads)
{
    OldTime o;
    const int nc = m.fluid.ncomp();
    const int N = m.nequ();
    const int n = m.ncell();
    o.stride = detail::old_stride(m);
    o.acc.assign(static_cast<std::size_t>(n) * o.stride, 0.0);
    o.q.assign(static_cast<std::size_t>(n) * nc, 0.0);
    ErrorSlot err;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int c = 0; c < n; ++c) {
        try {
            CellEval<double> e;
            evaluate_cell(m, c, s.u.data() + static_cast<std::size_t>(c) * N, e);
            double* a = o.acc.data() + static_cast<std::size_t>(c) * o.stride;
            for (int k = 0; k < nc; ++k) a[k] = e.moles[k];
            a[nc] = e.energy;
            a[nc + 1] = e.cc;
            for (int k = 0; k < nc; ++k) o.q[static_cast<std::size_t>(c) * nc + k] = e.q[k];
        } catch (...) {
            err.capture(c);
        }
    }
    err.rethrow();
    return o;
}

Assembler::Assembler(const Model& m) : model_(&m), pattern_(make_pattern(m)) {}
Assembler::~Assembler() = default;

namespace {

using Fn = void (*)(const Model&, const BlockPattern&, std::shared_ptr<void>&, const State&,
                    const OldTime&, const StepContext&, LinearSystem&, bool);

Fn dispatch(int n)
{
    switch (n) {
    case 7: return &detail::assemble_analytic<7>;
    case 8: return &detail::assemble_analytic<8>;
    case 9: return &detail::assemble_analytic<9>;
    case 10: return &detail::assemble_analytic<10>;
    case 11: return &detail::assemble_analytic<11>;
    case 12: return &detail::assemble_analytic<12>;
    default: throw Error(ErrorCode::non_physical_value, "unsupported block size " + std::to_string(n));
    }
}

// Value-only evaluation at scalar S: double for the residual and reports,
// quad for the reference Jacobian.
template <class S>
struct Eval {
    const Model& m;
    FaceLayout fl;
    int fs, N;

    explicit Eval(const Model& model)
        : m(model), fl(face_layout(model)), fs(fl.size()), N(model.nequ())
    {
    }

    // local rows + packed face of one cell at unknowns u
    void cell(int c, const S* u, const OldTime& old, double dt, S* r, S* face) const
    {
        CellEval<S> e;
        evaluate_cell(m, c, u, e);
        detail::local_rows(m, c, e, old.cell(c), dt, r);
        pack_face(m, fl, e, face);
    }

    void face_only(int c, const S* u, S* face) const
    {
        CellEval<S> e;
        evaluate_cell(m, c, u, e);
        pack_face(m, fl, e, face);
    }

    void flux(int id, const S* fa, const S* fb, S* out) const
    {
        connection_flux(m, fl, m.grid.connections()[id], fa, fb, out);
    }

    void perf(const Well& w, int k, const S* face, S bhp, PerfFlow<S>& pf) const
    {
        perforation_flow(m, fl, w, k, face, bhp, pf);
    }

    // subtract perforation flows from a cell's rows
    void apply_perf(const PerfFlow<S>& pf, S* r) const
    {
        for (int c : m.fluid.volatiles()) r[m.comp_row[c]] -= pf.comp[c];
        r[m.layout.t()] -= pf.energy;
    }

    S well_equation(const Well& w, const StepContext& ctx, int wi, S bhp, S measure) const
    {
        if (bhp_controlled(w, ctx, wi)) return bhp - bhp_target(w, ctx, wi);
        const double s = w.kind == WellKind::injector ? 1.0 : -1.0;
        return s * measure - rate_target_per_day(w);
    }
};

using DoubleEval = Eval<double>;

// Central differences of the residual, one cell column at a time. Only the
// rows a cell's unknowns can reach are re-evaluated: its own rows, the mass
// and energy rows of its neighbours, and the equations of wells perforated
// in it.
template <class S>
void numeric_jacobian(const Model& m, const BlockPattern& pattern, const State& st,
                      const OldTime& old, const StepContext& ctx, LinearSystem& sys, double rel,
                      double floor_abs)
{
    const Eval<S> ev(m);
    const int n = m.ncell();
    const int N = ev.N;
    const int fs = ev.fs;
    const int nrow = m.layout.t() + 1;
    const auto& conns = m.grid.connections();
    const std::size_t nw = m.wells.size();

    std::fill(sys.a.begin(), sys.a.end(), 0.0);
    for (std::size_t w = 0; w < nw; ++w) {
        WellBorder& wb = sys.wells[w];
        std::fill(wb.B.begin(), wb.B.end(), 0.0);
        std::fill(wb.C.begin(), wb.C.end(), 0.0);
        wb.D = 0.0;
    }

    std::vector<S> u(st.u.begin(), st.u.end());
    std::vector<S> faces(static_cast<std::size_t>(n) * fs);
    for (int c = 0; c < n; ++c)
        ev.face_only(c, u.data() + static_cast<std::size_t>(c) * N,
                     faces.data() + static_cast<std::size_t>(c) * fs);
    auto face_of = [&](int c) { return faces.data() + static_cast<std::size_t>(c) * fs; };

    // perforations touching each cell
    std::vector<std::vector<std::pair<int, int>>> perfs(n);
    for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t k = 0; k < m.wells[w].cells.size(); ++k)
            perfs[m.wells[w].cells[k]].emplace_back(static_cast<int>(w), static_cast<int>(k));

    std::vector<std::vector<S>> base_measure(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        const Well& well = m.wells[w];
        for (std::size_t k = 0; k < well.cells.size(); ++k) {
            PerfFlow<S> pf;
            ev.perf(well, static_cast<int>(k), face_of(well.cells[k]), S(st.bhp[w]), pf);
            base_measure[w].push_back(pf.measure);
        }
    }
    auto well_sum = [&](int w, int k, S replaced) {
        S s(0.0);
        for (std::size_t q = 0; q < base_measure[w].size(); ++q)
            s += static_cast<int>(q) == k ? replaced : base_measure[w][q];
        return s;
    };

    std::vector<S> ucell(N), face(fs), out(kMaxComponents + 5);
    std::vector<S> plus_own(N), minus_own(N);
    for (int c = 0; c < n; ++c) {
        const auto& cc = m.grid.cell_connections(c);
        const S* u0 = u.data() + static_cast<std::size_t>(c) * N;
        std::vector<S> plus_nbr(cc.size() * nrow), minus_nbr(cc.size() * nrow);
        std::vector<S> plus_w(perfs[c].size()), minus_w(perfs[c].size());
        for (int k = 0; k < N; ++k) {
            const S h = S(std::max(rel * std::abs(value(u0[k])), floor_abs));
            for (int side = 0; side < 2; ++side) {
                std::copy(u0, u0 + N, ucell.begin());
                ucell[k] += side == 0 ? h : -h;
                std::vector<S>& own = side == 0 ? plus_own : minus_own;
                std::vector<S>& nb = side == 0 ? plus_nbr : minus_nbr;
                std::vector<S>& wv = side == 0 ? plus_w : minus_w;
                ev.cell(c, ucell.data(), old, ctx.dt, own.data(), face.data());
                for (std::size_t q = 0; q < cc.size(); ++q) {
                    const Connection& cn = conns[cc[q]];
                    const bool is_a = cn.a == c;
                    const S* fa = is_a ? face.data() : face_of(cn.a);
                    const S* fb = is_a ? face_of(cn.b) : face.data();
                    ev.flux(cc[q], fa, fb, out.data());
                    const double s = is_a ? 1.0 : -1.0;
                    for (int i = 0; i < nrow; ++i) {
                        own[i] += s * out[i];
                        nb[q * nrow + i] = -s * out[i];
                    }
                }
                for (std::size_t q = 0; q < perfs[c].size(); ++q) {
                    const auto [w, kp] = perfs[c][q];
                    const Well& well = m.wells[w];
                    PerfFlow<S> pf;
                    ev.perf(well, kp, face.data(), S(st.bhp[w]), pf);
                    ev.apply_perf(pf, own.data());
                    wv[q] = ev.well_equation(well, ctx, w, S(st.bhp[w]),
                                             well_sum(w, kp, pf.measure));
                }
            }
            const S inv = 1.0 / (2.0 * h);
            double* J = sys.block(pattern.diag[c]);
            for (int i = 0; i < N; ++i) J[i * N + k] = value((plus_own[i] - minus_own[i]) * inv);
            for (std::size_t q = 0; q < cc.size(); ++q) {
                const int id = cc[q];
                const Connection& cn = conns[id];
                // row of the neighbour, column of c
                double* Jn = sys.block(cn.a == c ? pattern.conn_ba[id] : pattern.conn_ab[id]);
                for (int i = 0; i < nrow; ++i)
                    Jn[i * N + k] = value((plus_nbr[q * nrow + i] - minus_nbr[q * nrow + i]) * inv);
            }
            for (std::size_t q = 0; q < perfs[c].size(); ++q) {
                const auto [w, kp] = perfs[c][q];
                sys.wells[w].C[static_cast<std::size_t>(kp) * N + k] =
                    value((plus_w[q] - minus_w[q]) * inv);
            }
        }
    }

    // bhp columns
    for (std::size_t w = 0; w < nw; ++w) {
        const Well& well = m.wells[w];
        WellBorder& wb = sys.wells[w];
        const S b0(st.bhp[w]);
        const S h = S(std::max(rel * std::abs(st.bhp[w]), floor_abs));
        S fw[2] = {S(0.0), S(0.0)};
        std::vector<S> rows[2];
        for (int side = 0; side < 2; ++side) {
            const S b = side == 0 ? b0 + h : b0 - h;
            rows[side].assign(well.cells.size() * N, S(0.0));
            S measure(0.0);
            for (std::size_t k = 0; k < well.cells.size(); ++k) {
                PerfFlow<S> pf;
                ev.perf(well, static_cast<int>(k), face_of(well.cells[k]), b, pf);
                ev.apply_perf(pf, rows[side].data() + k * N);
                measure += pf.measure;
            }
            fw[side] = ev.well_equation(well, ctx, static_cast<int>(w), b, measure);
        }
        const S inv = 1.0 / (2.0 * h);
        for (std::size_t q = 0; q < wb.B.size(); ++q) wb.B[q] = value((rows[0][q] - rows[1][q]) * inv);
        wb.D = value((fw[0] - fw[1]) * inv);
    }
}

}  // namespace

void Assembler::assemble(const State& u, const OldTime& old, const StepContext& ctx,
                         LinearSystem& sys)
{
    dispatch(model_->nequ())(*model_, pattern_, work_, u, old, ctx, sys, true);
}

void Assembler::assemble_serial(const State& u, const OldTime& old, const StepContext& ctx,
                                LinearSystem& sys)
{
    dispatch(model_->nequ())(*model_, pattern_, work_, u, old, ctx, sys, false);
}

void Assembler::residual(const State& st, const OldTime& old, const StepContext& ctx,
                         std::vector<double>& f_cells, std::vector<double>& f_wells)
{
    const Model& m = *model_;
    const DoubleEval ev(m);
    const int n = m.ncell();
    const int N = ev.N;
    const int fs = ev.fs;
    std::vector<double> faces(static_cast<std::size_t>(n) * fs);
    f_cells.assign(static_cast<std::size_t>(n) * N, 0.0);
    ErrorSlot err;
#pragma omp parallel for schedule(static) num_threads(ctx.threads)
    for (int c = 0; c < n; ++c) {
        try {
            ev.cell(c, st.u.data() + static_cast<std::size_t>(c) * N, old, ctx.dt,
                    f_cells.data() + static_cast<std::size_t>(c) * N,
                    faces.data() + static_cast<std::size_t>(c) * fs);
        } catch (...) {
            err.capture(c);
        }
    }
    err.rethrow();
    const auto& conns = m.grid.connections();
    const int nrow = m.layout.t() + 1;
#pragma omp parallel for schedule(static) num_threads(ctx.threads)
    for (int c = 0; c < n; ++c) {
        double out[kMaxComponents + 5];
        double* r = f_cells.data() + static_cast<std::size_t>(c) * N;
        for (int id : m.grid.cell_connections(c)) {
            const Connection& cn = conns[id];
            ev.flux(id, faces.data() + static_cast<std::size_t>(cn.a) * fs,
                    faces.data() + static_cast<std::size_t>(cn.b) * fs, out);
            const double s = cn.a == c ? 1.0 : -1.0;
            for (int i = 0; i < nrow; ++i) r[i] += s * out[i];
        }
    }
    f_wells.assign(m.wells.size(), 0.0);
    for (std::size_t w = 0; w < m.wells.size(); ++w) {
        const Well& well = m.wells[w];
        double measure = 0.0;
        for (std::size_t k = 0; k < well.cells.size(); ++k) {
            const int c = well.cells[k];
            PerfFlow<double> pf;
            ev.perf(well, static_cast<int>(k), faces.data() + static_cast<std::size_t>(c) * fs,
                    st.bhp[w], pf);
            ev.apply_perf(pf, f_cells.data() + static_cast<std::size_t>(c) * N);
            measure += pf.measure;
        }
        if (heater_on(well, ctx.t))
            f_cells[static_cast<std::size_t>(well.cells.front()) * N + m.layout.t()] -=
                well.heater_rate;
        f_wells[w] = ev.well_equation(well, ctx, static_cast<int>(w), st.bhp[w], measure);
    }
}

void Assembler::assemble_numeric(const State& st, const OldTime& old, const StepContext& ctx,
                                 LinearSystem& sys, bool reference)
{
    std::vector<double> f_wells;
    residual(st, old, ctx, sys.f, f_wells);
    for (std::size_t w = 0; w < sys.wells.size(); ++w) sys.wells[w].F = f_wells[w];
    if (reference)
        numeric_jacobian<quad>(*model_, pattern_, st, old, ctx, sys, 1e-8, 1e-10);
    else
        numeric_jacobian<double>(*model_, pattern_, st, old, ctx, sys, 1e-6, 1e-8);
}

std::vector<WellFlows> Assembler::well_flows(const State& st, const StepContext& ctx)
{
    const Model& m = *model_;
    const DoubleEval ev(m);
    const int N = ev.N;
    std::vector<WellFlows> res(m.wells.size());
    std::vector<double> face(ev.fs);
    for (std::size_t w = 0; w < m.wells.size(); ++w) {
        const Well& well = m.wells[w];
        WellFlows& r = res[w];
        r.comp.assign(m.fluid.ncomp(), 0.0);
        for (std::size_t k = 0; k < well.cells.size(); ++k) {
            const int c = well.cells[k];
            ev.face_only(c, st.u.data() + static_cast<std::size_t>(c) * N, face.data());
            PerfFlow<double> pf;
            ev.perf(well, static_cast<int>(k), face.data(), st.bhp[w], pf);
            for (int a = 0; a < 3; ++a) r.phase[a] += pf.phase[a];
            for (int c2 = 0; c2 < m.fluid.ncomp(); ++c2) r.comp[c2] += pf.comp[c2];
            r.energy += pf.energy;
            r.measure += pf.measure;
        }
        if (heater_on(well, ctx.t)) r.energy += well.heater_rate;
    }
    return res;
}

}  // namespace isc
