#include "isc/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blockops.hpp"
#include "isc/error.hpp"
#include "isc/kernels.hpp"
#include "isc/parallel.hpp"

namespace isc {

std::vector<std::vector<int>> contiguous_subdomains(int nrow, int parts)
{
    const int np = std::max(1, std::min(parts, nrow));
    std::vector<std::vector<int>> s(np);
    const int base = nrow / np, extra = nrow % np;
    int r = 0;
    for (int p = 0; p < np; ++p) {
        const int len = base + (p < extra ? 1 : 0);
        for (int q = 0; q < len; ++q) s[p].push_back(r++);
    }
    return s;
}

void eliminate_wells(LinearSystem& sys, const std::vector<std::vector<int>>& well_cells,
                     std::vector<double>& b)
{
    const BlockPattern& p = *sys.pattern;
    const int nb = sys.nb;
    for (std::size_t w = 0; w < well_cells.size(); ++w) {
        const WellBorder& wb = sys.wells[w];
        if (!(std::abs(wb.D) > 0.0) || !std::isfinite(wb.D))
            throw Error(ErrorCode::singular_cell_block,
                        "well " + std::to_string(w) + " has a singular constraint row");
        const double g = -wb.F;
        const auto& cells = well_cells[w];
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const double* bi = wb.B.data() + i * nb;
            double* rhs = b.data() + static_cast<std::size_t>(cells[i]) * nb;
            for (int r = 0; r < nb; ++r) rhs[r] -= bi[r] * g / wb.D;
            for (std::size_t j = 0; j < cells.size(); ++j) {
                const double* cj = wb.C.data() + j * nb;
                double* blk = sys.block(p.find(cells[i], cells[j]));
                for (int r = 0; r < nb; ++r) {
                    if (bi[r] == 0.0) continue;
                    for (int s = 0; s < nb; ++s) blk[r * nb + s] -= bi[r] * cj[s] / wb.D;
                }
            }
        }
    }
}

std::vector<double> recover_bhp(const LinearSystem& sys,
                                const std::vector<std::vector<int>>& well_cells,
                                const std::vector<double>& du)
{
    const int nb = sys.nb;
    std::vector<double> d(well_cells.size());
    for (std::size_t w = 0; w < well_cells.size(); ++w) {
        const WellBorder& wb = sys.wells[w];
        double s = -wb.F;
        for (std::size_t k = 0; k < well_cells[w].size(); ++k) {
            const double* ck = wb.C.data() + k * nb;
            const double* uk = du.data() + static_cast<std::size_t>(well_cells[w][k]) * nb;
            for (int j = 0; j < nb; ++j) s -= ck[j] * uk[j];
        }
        d[w] = s / wb.D;
    }
    return d;
}

namespace {

[[noreturn]] void singular(int row, int col)
{
    throw Error(ErrorCode::singular_cell_block,
                "cell " + std::to_string(row) + ": no usable pivot in column " + std::to_string(col));
}

void decouple_row(const BlockPattern& p, double* a, double* b, int r)
{
    const int nb = p.nb;
    const std::size_t bs = static_cast<std::size_t>(nb) * nb;
    const int k0 = p.rowptr[r], k1 = p.rowptr[r + 1];
    double* d = a + static_cast<std::size_t>(p.diag[r]) * bs;
    double* br = b + static_cast<std::size_t>(r) * nb;
    double rowmax[blk::kMaxBlock];
    blk::row_max(d, nb, rowmax);

    for (int k = 0; k < nb; ++k) {
        const int piv = blk::pick_pivot(d, rowmax, nb, k, 1e-13);
        if (piv < 0) singular(r, k);
        const double pv = d[piv * nb + k];
        if (piv != k) {
            for (int q = k0; q < k1; ++q) {
                double* blk = a + static_cast<std::size_t>(q) * bs;
                std::swap_ranges(blk + piv * nb, blk + piv * nb + nb, blk + k * nb);
            }
            std::swap(br[piv], br[k]);
            std::swap(rowmax[piv], rowmax[k]);
        }
        for (int q = k0; q < k1; ++q) {
            double* row = a + static_cast<std::size_t>(q) * bs + k * nb;
            for (int j = 0; j < nb; ++j) row[j] /= pv;
        }
        br[k] /= pv;
        for (int i = 0; i < nb; ++i) {
            if (i == k) continue;
            const double f = d[i * nb + k];
            if (f == 0.0) continue;
            for (int q = k0; q < k1; ++q) {
                double* blk = a + static_cast<std::size_t>(q) * bs;
                for (int j = 0; j < nb; ++j) blk[i * nb + j] -= f * blk[k * nb + j];
            }
            br[i] -= f * br[k];
        }
    }
}

}  // namespace

void decouple(const BlockPattern& p, std::vector<double>& a, std::vector<double>& b, int threads)
{
    ErrorSlot err;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int r = 0; r < p.nrow; ++r) {
        try {
            decouple_row(p, a.data(), b.data(), r);
        } catch (...) {
            err.capture(r);
        }
    }
    err.rethrow();
}

void decouple_serial(const BlockPattern& p, std::vector<double>& a, std::vector<double>& b)
{
    const int nb = p.nb;
    const std::size_t bs = static_cast<std::size_t>(nb) * nb;
    double inv[blk::kMaxBlock * blk::kMaxBlock], tmp[blk::kMaxBlock * blk::kMaxBlock];
    double v[blk::kMaxBlock];
    for (int r = 0; r < p.nrow; ++r) {
        const int bad = blk::invert(a.data() + p.diag[r] * bs, inv, nb);
        if (bad >= 0) singular(r, bad);
        for (int q = p.rowptr[r]; q < p.rowptr[r + 1]; ++q) {
            double* blkp = a.data() + q * bs;
            blk::gemm(tmp, inv, blkp, nb);
            std::copy(tmp, tmp + bs, blkp);
        }
        double* br = b.data() + static_cast<std::size_t>(r) * nb;
        blk::gemv(v, inv, br, nb);
        std::copy(v, v + nb, br);
    }
}

struct Preconditioner::Sub {
    std::vector<int> cells;  // local -> global, owned first
    int nown = 0;
    std::vector<int> rowptr, col, diag, src;
    std::vector<double> lu, dinv;
    mutable std::vector<double> work;
};

Preconditioner::Preconditioner(const BlockPattern& p, PreconditionerKind kind,
                               const std::vector<std::vector<int>>& subdomains)
    : p_(&p), kind_(kind)
{
    if (kind == PreconditionerKind::none) return;
    std::vector<int> g2l(p.nrow, -1);
    for (const auto& owned : subdomains) {
        Sub s;
        s.cells = owned;
        s.nown = static_cast<int>(owned.size());
        for (std::size_t l = 0; l < owned.size(); ++l) g2l[owned[l]] = static_cast<int>(l);
        if (kind == PreconditionerKind::ras) {
            std::vector<int> halo;
            for (int g : owned)
                for (int k = p.rowptr[g]; k < p.rowptr[g + 1]; ++k)
                    if (g2l[p.col[k]] < 0) halo.push_back(p.col[k]);
            std::sort(halo.begin(), halo.end());
            halo.erase(std::unique(halo.begin(), halo.end()), halo.end());
            for (int g : halo) {
                g2l[g] = static_cast<int>(s.cells.size());
                s.cells.push_back(g);
            }
        }
        const int nl = static_cast<int>(s.cells.size());
        s.rowptr.assign(nl + 1, 0);
        s.diag.assign(nl, -1);
        std::vector<std::pair<int, int>> row;
        for (int l = 0; l < nl; ++l) {
            const int g = s.cells[l];
            row.clear();
            for (int k = p.rowptr[g]; k < p.rowptr[g + 1]; ++k)
                if (g2l[p.col[k]] >= 0) row.emplace_back(g2l[p.col[k]], k);
            std::sort(row.begin(), row.end());
            for (const auto& [c, k] : row) {
                if (c == l) s.diag[l] = static_cast<int>(s.col.size());
                s.col.push_back(c);
                s.src.push_back(k);
            }
            s.rowptr[l + 1] = static_cast<int>(s.col.size());
        }
        for (int g : s.cells) g2l[g] = -1;
        s.work.resize(static_cast<std::size_t>(nl) * p.nb);
        subs_.push_back(std::move(s));
    }
}

Preconditioner::~Preconditioner() = default;
Preconditioner::Preconditioner(Preconditioner&&) noexcept = default;
Preconditioner& Preconditioner::operator=(Preconditioner&&) noexcept = default;

void Preconditioner::setup(const std::vector<double>& a, int threads)
{
    if (kind_ == PreconditionerKind::none) return;
    const int nb = p_->nb;
    const std::size_t bs = static_cast<std::size_t>(nb) * nb;
    const int ns = static_cast<int>(subs_.size());
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int si = 0; si < ns; ++si) {
        try {
            Sub& s = subs_[si];
            const int nl = static_cast<int>(s.cells.size());
            s.lu.resize(s.src.size() * bs);
            s.dinv.resize(nl * bs);
            for (std::size_t k = 0; k < s.src.size(); ++k)
                std::copy_n(a.data() + s.src[k] * bs, bs, s.lu.data() + k * bs);
            std::vector<int> w(nl, -1);
            double tmp[blk::kMaxBlock * blk::kMaxBlock];
            for (int i = 0; i < nl; ++i) {
                for (int q = s.rowptr[i]; q < s.rowptr[i + 1]; ++q) w[s.col[q]] = q;
                for (int kk = s.rowptr[i]; kk < s.diag[i]; ++kk) {
                    const int k = s.col[kk];
                    double* lik = s.lu.data() + kk * bs;
                    blk::gemm(tmp, lik, s.dinv.data() + k * bs, nb);
                    std::copy(tmp, tmp + bs, lik);
                    for (int q = s.diag[k] + 1; q < s.rowptr[k + 1]; ++q) {
                        const int pos = w[s.col[q]];
                        if (pos >= 0) blk::gemm_sub(s.lu.data() + pos * bs, lik, s.lu.data() + q * bs, nb);
                    }
                }
                const int bad = blk::invert(s.lu.data() + s.diag[i] * bs, s.dinv.data() + i * bs, nb);
                if (bad >= 0) singular(s.cells[i], bad);
                for (int q = s.rowptr[i]; q < s.rowptr[i + 1]; ++q) w[s.col[q]] = -1;
            }
        } catch (...) {
            err.capture(si);
        }
    }
    err.rethrow();
}

void Preconditioner::apply(const double* in, double* out, int threads) const
{
    const int nb = p_->nb;
    if (kind_ == PreconditionerKind::none) {
        std::copy(in, in + static_cast<std::size_t>(p_->nrow) * nb, out);
        return;
    }
    const std::size_t bs = static_cast<std::size_t>(nb) * nb;
    const int ns = static_cast<int>(subs_.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int si = 0; si < ns; ++si) {
        const Sub& s = subs_[si];
        const int nl = static_cast<int>(s.cells.size());
        double* y = s.work.data();
        for (int i = 0; i < nl; ++i)
            std::copy_n(in + static_cast<std::size_t>(s.cells[i]) * nb, nb, y + i * nb);
        for (int i = 0; i < nl; ++i)
            for (int kk = s.rowptr[i]; kk < s.diag[i]; ++kk)
                blk::gemv_sub(y + i * nb, s.lu.data() + kk * bs, y + s.col[kk] * nb, nb);
        double t[blk::kMaxBlock];
        for (int i = nl - 1; i >= 0; --i) {
            for (int q = s.diag[i] + 1; q < s.rowptr[i + 1]; ++q)
                blk::gemv_sub(y + i * nb, s.lu.data() + q * bs, y + s.col[q] * nb, nb);
            blk::gemv(t, s.dinv.data() + i * bs, y + i * nb, nb);
            std::copy(t, t + nb, y + i * nb);
        }
        for (int i = 0; i < s.nown; ++i)
            std::copy_n(y + i * nb, nb, out + static_cast<std::size_t>(s.cells[i]) * nb);
    }
}

LinearStats bicgstab(const BlockPattern& p, const std::vector<double>& a,
                     const std::vector<double>& b, std::vector<double>& x, const Preconditioner& m,
                     double tol, int maxit, int threads, bool serial)
{
    const std::size_t n = b.size();
    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        return serial ? kernels::dot_serial(u.data(), v.data(), n)
                      : kernels::dot(u.data(), v.data(), n, threads);
    };
    auto axpy = [&](double al, const std::vector<double>& u, std::vector<double>& v) {
        if (serial) kernels::axpy_serial(al, u.data(), v.data(), n);
        else kernels::axpy(al, u.data(), v.data(), n, threads);
    };
    auto mv = [&](const std::vector<double>& u, std::vector<double>& v) {
        if (serial) kernels::bsr_mv_serial(p, a.data(), u.data(), v.data());
        else kernels::bsr_mv(p, a.data(), u.data(), v.data(), threads);
    };
    const int pt = serial ? 1 : threads;

    LinearStats st;
    x.assign(n, 0.0);
    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) return st;
    const double target = tol * bnorm;

    std::vector<double> r = b, rh, pv(n), v(n), s(n), t(n), ph(n), sh(n);
    bool breakdown_used = false;
    double rho = 1.0, alpha = 1.0, omega = 1.0;

    auto restart = [&]() {
        rh = r;
        std::fill(pv.begin(), pv.end(), 0.0);
        std::fill(v.begin(), v.end(), 0.0);
        rho = alpha = omega = 1.0;
    };
    auto true_residual = [&]() {
        mv(x, t);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - t[i];
        return std::sqrt(dot(r, r));
    };
    auto on_breakdown = [&](const char* what) {
        if (breakdown_used) throw Error(ErrorCode::breakdown, std::string("BiCGSTAB breakdown: ") + what);
        breakdown_used = true;
        ++st.restarts;
        true_residual();
        restart();
    };

    restart();
    while (true) {
        if (st.iterations >= maxit)
            throw Error(ErrorCode::max_iterations,
                        "linear solver did not converge in " + std::to_string(maxit) + " iterations");
        ++st.iterations;
        const double rho_new = dot(rh, r);
        if (!std::isfinite(rho_new)) throw Error(ErrorCode::breakdown, "BiCGSTAB produced non-finite values");
        if (std::abs(rho_new) <= 1e-30 * std::sqrt(dot(rh, rh) * dot(r, r))) {
            on_breakdown("rho");
            continue;
        }
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        // p = r + beta (p - omega v)
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (!serial) num_threads(pt)
        for (long long i = 0; i < nn; ++i) pv[i] = r[i] + beta * (pv[i] - omega * v[i]);
        m.apply(pv.data(), ph.data(), pt);
        mv(ph, v);
        const double rv = dot(rh, v);
        if (rv == 0.0 || !std::isfinite(rv)) {
            on_breakdown("alpha");
            continue;
        }
        alpha = rho / rv;
        s = r;
        axpy(-alpha, v, s);
        if (std::sqrt(dot(s, s)) <= target) {
            axpy(alpha, ph, x);
            st.residual = true_residual() / bnorm;
            if (st.residual <= tol) return st;
            restart();
            continue;
        }
        m.apply(s.data(), sh.data(), pt);
        mv(sh, t);
        const double tt = dot(t, t);
        if (tt == 0.0) {
            axpy(alpha, ph, x);
            on_breakdown("omega");
            continue;
        }
        omega = dot(t, s) / tt;
        axpy(alpha, ph, x);
        axpy(omega, sh, x);
        r = s;
        axpy(-omega, t, r);
        if (omega == 0.0) {
            on_breakdown("omega");
            continue;
        }
        if (std::sqrt(dot(r, r)) <= target) {
            st.residual = true_residual() / bnorm;
            if (st.residual <= tol) return st;
            restart();
        }
    }
}

LinearSolver::LinearSolver(const BlockPattern& p, std::vector<std::vector<int>> well_cells,
                           const SolverSpec& spec, const std::vector<std::vector<int>>& subdomains)
    : p_(&p),
      well_cells_(std::move(well_cells)),
      tol_(spec.linear_tol),
      maxit_(spec.max_linear),
      prec_(p, spec.precond, subdomains)
{
}

LinearStats LinearSolver::solve(LinearSystem& sys, std::vector<double>& du,
                                std::vector<double>& dbhp, int threads, bool serial)
{
    b_.resize(sys.f.size());
    for (std::size_t i = 0; i < b_.size(); ++i) b_[i] = -sys.f[i];
    eliminate_wells(sys, well_cells_, b_);
    if (serial) decouple_serial(*p_, sys.a, b_);
    else decouple(*p_, sys.a, b_, threads);
    prec_.setup(sys.a, serial ? 1 : threads);
    const LinearStats st = bicgstab(*p_, sys.a, b_, du, prec_, tol_, maxit_, threads, serial);
    dbhp = recover_bhp(sys, well_cells_, du);
    return st;
}

}  // namespace isc
