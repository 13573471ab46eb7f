#pragma once

#include <memory>

#include "isc/assembly.hpp"
#include "isc/cell.hpp"
#include "isc/dual.hpp"
#include "isc/parallel.hpp"

namespace isc::detail {

// OldTime layout per cell: moles[ncomp], energy, C_c
inline int old_stride(const Model& m) { return m.fluid.ncomp() + 2; }

template <class S>
void local_rows(const Model& m, int cell, const CellEval<S>& e, const double* accn, double dt, S* r)
{
    const Layout& l = m.layout;
    const FluidModel& f = m.fluid;
    const double v = m.grid.volume(cell);
    const double vdt = v / dt;
    const int nc = f.ncomp();
    for (int c = 0; c < nc; ++c) r[m.comp_row[c]] = vdt * (e.moles[c] - accn[c]) - v * e.q[c];
    if (!f.has_solid()) r[l.cc()] = vdt * (e.cc - accn[nc + 1]);
    r[l.t()] = vdt * (e.energy - accn[nc]) - v * e.heat + v * e.loss;
    r[l.sw()] = e.sum_x - 1.0;
    r[l.sg()] = e.sum_y - 1.0;
}

template <int N>
struct Work {
    std::vector<Dual<N>> faces;
};

template <int N>
Work<N>& work_for(std::shared_ptr<void>& slot, std::size_t size)
{
    if (!slot) slot = std::make_shared<Work<N>>();
    Work<N>& w = *static_cast<Work<N>*>(slot.get());
    if (w.faces.size() != size) w.faces.assign(size, Dual<N>(0.0));
    return w;
}

template <int N>
void cell_pass(const Model& m, const BlockPattern& pat, Work<N>& work, const State& st,
               const OldTime& old, const StepContext& ctx, LinearSystem& sys, int c)
{
    using D = Dual<N>;
    const FaceLayout fl = face_layout(m);
    const int fs = fl.size();
    D u[N];
    const double* uc = st.u.data() + static_cast<std::size_t>(c) * N;
    for (int k = 0; k < N; ++k) u[k] = D::variable(uc[k], k);
    CellEval<D> e;
    evaluate_cell(m, c, u, e);
    D r[N];
    local_rows(m, c, e, old.cell(c), ctx.dt, r);
    for (int k = pat.rowptr[c]; k < pat.rowptr[c + 1]; ++k) {
        double* b = sys.block(k);
        for (int q = 0; q < N * N; ++q) b[q] = 0.0;
    }
    double* F = sys.rhs(c);
    double* J = sys.block(pat.diag[c]);
    for (int i = 0; i < N; ++i) {
        F[i] = r[i].v;
        for (int j = 0; j < N; ++j) J[i * N + j] = r[i].d[j];
    }
    pack_face(m, fl, e, work.faces.data() + static_cast<std::size_t>(c) * fs);
}

// Adds s * flux(conn) to row c; `self` is the derivative offset of c's own
// unknowns inside the Dual<2N> result.
template <int N>
void add_flux(const Model& m, LinearSystem& sys, int c, int self_block, int other_block, double s,
              int self, const Dual<2 * N>* out)
{
    const int nrow = m.layout.t() + 1;
    const int other = self == 0 ? N : 0;
    double* F = sys.rhs(c);
    double* Js = sys.block(self_block);
    double* Jo = sys.block(other_block);
    for (int i = 0; i < nrow; ++i) {
        F[i] += s * out[i].v;
        for (int j = 0; j < N; ++j) {
            Js[i * N + j] += s * out[i].d[self + j];
            Jo[i * N + j] += s * out[i].d[other + j];
        }
    }
}

template <int N>
void compute_flux(const Model& m, const Work<N>& work, int id, Dual<2 * N>* out)
{
    using D2 = Dual<2 * N>;
    const FaceLayout fl = face_layout(m);
    const int fs = fl.size();
    const Connection& cn = m.grid.connections()[id];
    D2 fa[kFaceMax], fb[kFaceMax];
    const Dual<N>* ga = work.faces.data() + static_cast<std::size_t>(cn.a) * fs;
    const Dual<N>* gb = work.faces.data() + static_cast<std::size_t>(cn.b) * fs;
    for (int k = 0; k < fs; ++k) {
        fa[k] = lift<2 * N>(ga[k], 0);
        fb[k] = lift<2 * N>(gb[k], N);
    }
    connection_flux(m, fl, cn, fa, fb, out);
}

template <int N>
void well_pass(const Model& m, const BlockPattern& pat, const Work<N>& work, const State& st,
               const StepContext& ctx, LinearSystem& sys)
{
    using DW = Dual<N + 1>;
    const FaceLayout fl = face_layout(m);
    const int fs = fl.size();
    const Layout& l = m.layout;
    const FluidModel& f = m.fluid;
    for (std::size_t w = 0; w < m.wells.size(); ++w) {
        const Well& well = m.wells[w];
        WellBorder& wb = sys.wells[w];
        std::fill(wb.B.begin(), wb.B.end(), 0.0);
        std::fill(wb.C.begin(), wb.C.end(), 0.0);
        const DW bhp = DW::variable(st.bhp[w], N);
        DW measure(0.0);
        for (std::size_t k = 0; k < well.cells.size(); ++k) {
            const int c = well.cells[k];
            DW face[kFaceMax];
            const Dual<N>* g = work.faces.data() + static_cast<std::size_t>(c) * fs;
            for (int q = 0; q < fs; ++q) face[q] = lift<N + 1>(g[q], 0);
            PerfFlow<DW> pf;
            perforation_flow(m, fl, well, static_cast<int>(k), face, bhp, pf);
            double* F = sys.rhs(c);
            double* J = sys.block(pat.diag[c]);
            double* B = wb.B.data() + k * N;
            auto sub = [&](int row, const DW& v) {
                F[row] -= v.v;
                for (int j = 0; j < N; ++j) J[row * N + j] -= v.d[j];
                B[row] -= v.d[N];
            };
            for (int cc : f.volatiles()) sub(m.comp_row[cc], pf.comp[cc]);
            sub(l.t(), pf.energy);
            measure += pf.measure;
            double* C = wb.C.data() + k * N;
            for (int j = 0; j < N; ++j) C[j] = pf.measure.d[j];
        }
        if (heater_on(well, ctx.t)) sys.rhs(well.cells.front())[l.t()] -= well.heater_rate;
        if (bhp_controlled(well, ctx, static_cast<int>(w))) {
            wb.F = st.bhp[w] - bhp_target(well, ctx, static_cast<int>(w));
            std::fill(wb.C.begin(), wb.C.end(), 0.0);
            wb.D = 1.0;
        } else {
            const double s = well.kind == WellKind::injector ? 1.0 : -1.0;
            wb.F = s * measure.v - rate_target_per_day(well);
            for (double& v : wb.C) v *= s;
            wb.D = s * measure.d[N];
        }
    }
}

template <int N>
void assemble_analytic(const Model& m, const BlockPattern& pat, std::shared_ptr<void>& slot,
                       const State& st, const OldTime& old, const StepContext& ctx,
                       LinearSystem& sys, bool parallel)
{
    const int n = m.ncell();
    Work<N>& work = work_for<N>(slot, static_cast<std::size_t>(n) * face_layout(m).size());
    const auto& conns = m.grid.connections();

    if (parallel) {
        ErrorSlot err;
#pragma omp parallel for schedule(static) num_threads(ctx.threads)
        for (int c = 0; c < n; ++c) {
            try {
                cell_pass<N>(m, pat, work, st, old, ctx, sys, c);
            } catch (...) {
                err.capture(c);
            }
        }
        err.rethrow();
#pragma omp parallel for schedule(static) num_threads(ctx.threads)
        for (int c = 0; c < n; ++c) {
            Dual<2 * N> out[N];
            for (int id : m.grid.cell_connections(c)) {
                compute_flux<N>(m, work, id, out);
                if (conns[id].a == c)
                    add_flux<N>(m, sys, c, pat.diag[c], pat.conn_ab[id], 1.0, 0, out);
                else
                    add_flux<N>(m, sys, c, pat.diag[c], pat.conn_ba[id], -1.0, N, out);
            }
        }
    } else {
        for (int c = 0; c < n; ++c) cell_pass<N>(m, pat, work, st, old, ctx, sys, c);
        Dual<2 * N> out[N];
        for (int id = 0; id < static_cast<int>(conns.size()); ++id) {
            const Connection& cn = conns[id];
            compute_flux<N>(m, work, id, out);
            add_flux<N>(m, sys, cn.a, pat.diag[cn.a], pat.conn_ab[id], 1.0, 0, out);
            add_flux<N>(m, sys, cn.b, pat.diag[cn.b], pat.conn_ba[id], -1.0, N, out);
        }
    }
    well_pass<N>(m, pat, work, st, ctx, sys);
}

}  // namespace isc::detail

#define ISC_INSTANTIATE_ASSEMBLY(N)                                                            \
    template void isc::detail::assemble_analytic<N>(                                           \
        const Model&, const BlockPattern&, std::shared_ptr<void>&, const State&, const OldTime&, \
        const StepContext&, LinearSystem&, bool);
