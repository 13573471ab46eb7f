#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense.hpp"
#include "helpers.hpp"
#include "isc/assembly.hpp"
#include "isc/error.hpp"
#include "isc/kernels.hpp"
#include "isc/linsolve.hpp"

using namespace isc;
using isc::test::random_system;
using isc::test::RandomSystem;

TEST(Linsolve, ScaledIdentity)
{
    const int N = 9;
    const BlockPattern p = isc::test::pattern_from_edges(1, {}, 9);
    std::vector<double> a(N * N, 0.0), b(N, 2.0);
    for (int i = 0; i < N; ++i) a[i * N + i] = 2.0;
    decouple(p, a, b, 1);
    for (int i = 0; i < N; ++i) {
        EXPECT_EQ(b[i], 1.0);
        for (int j = 0; j < N; ++j) EXPECT_EQ(a[i * N + j], i == j ? 1.0 : 0.0);
    }
}

TEST(Linsolve, ChainMatchesDenseSolve)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        RandomSystem s = random_system(rng, 3, 9, true);
        const std::vector<double> want = isc::test::dense_solve(s.p, s.a, s.b);
        std::vector<double> a = s.a, b = s.b, x;
        decouple(s.p, a, b, 1);
        Preconditioner pc(s.p, PreconditionerKind::none, {});
        pc.setup(a, 1);
        const LinearStats st = bicgstab(s.p, a, b, x, pc, 1e-14, 500, 1);
        (void)st;
        EXPECT_LE(isc::test::rel_diff(x, want), 1e-10);
    }
}

TEST(Linsolve, ZeroRowIsSingular)
{
    std::mt19937_64 rng(2);
    RandomSystem s = random_system(rng, 3, 9, true);
    const int N = 9;
    double* d = s.a.data() + static_cast<std::size_t>(s.p.diag[1]) * N * N;
    for (int j = 0; j < N; ++j) d[4 * N + j] = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<double> a = s.a, b = s.b;
        try {
            if (pass == 0) decouple(s.p, a, b, 1);
            else decouple_serial(s.p, a, b);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::singular_cell_block);
        }
    }
}

TEST(Linsolve, ParallelAndSerialDecoupleAgree)
{
    std::mt19937_64 rng(3);
    RandomSystem s = random_system(rng, 30, 9, false);
    std::vector<double> a1 = s.a, b1 = s.b, a2 = s.a, b2 = s.b;
    decouple(s.p, a1, b1, 4);
    decouple_serial(s.p, a2, b2);
    EXPECT_LE(isc::test::rel_diff(a1, a2), 1e-12);
    EXPECT_LE(isc::test::rel_diff(b1, b2), 1e-12);
}

// Row i after decoupling equals D_i^-1 times the original row i, so blocks
// of other rows play no part.
TEST(Linsolve, DecoupleIsRowLocal)
{
    std::mt19937_64 rng(4);
    RandomSystem s = random_system(rng, 12, 9, false);
    const int N = 9;
    std::vector<double> a = s.a, b = s.b;
    decouple(s.p, a, b, 1);
    for (int r = 0; r < s.p.nrow; ++r) {
        const double* D = s.a.data() + static_cast<std::size_t>(s.p.diag[r]) * N * N;
        for (int k = s.p.rowptr[r]; k < s.p.rowptr[r + 1]; ++k) {
            const double* orig = s.a.data() + static_cast<std::size_t>(k) * N * N;
            const double* got = a.data() + static_cast<std::size_t>(k) * N * N;
            for (int j = 0; j < N; ++j) {
                std::vector<double> col(N);
                for (int i = 0; i < N; ++i) col[i] = orig[i * N + j];
                const auto want = isc::test::dense_block_solve(D, N, col);
                for (int i = 0; i < N; ++i) EXPECT_NEAR(got[i * N + j], want[i], 1e-9 * (1 + std::abs(want[i])));
            }
        }
    }
}

TEST(Linsolve, IdentityOneIteration)
{
    const int N = 4, n = 5;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    const BlockPattern p = isc::test::pattern_from_edges(n, edges, N);
    std::vector<double> a(static_cast<std::size_t>(p.nnzb()) * N * N, 0.0);
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < N; ++i) a[static_cast<std::size_t>(p.diag[r]) * N * N + i * N + i] = 1.0;
    std::vector<double> b(n * N), x;
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = 0.5 + k;
    Preconditioner pc(p, PreconditionerKind::none, {});
    pc.setup(a, 1);
    const LinearStats st = bicgstab(p, a, b, x, pc, 1e-10, 50, 1);
    EXPECT_EQ(st.iterations, 1);
    for (std::size_t k = 0; k < b.size(); ++k) EXPECT_NEAR(x[k], b[k], 1e-12 * b[k]);
}

TEST(Linsolve, SpdTridiagonal)
{
    const int n = 60;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    const BlockPattern p = isc::test::pattern_from_edges(n, edges, 1);
    std::vector<double> a(p.nnzb(), 0.0), b(n);
    for (int r = 0; r < n; ++r)
        for (int k = p.rowptr[r]; k < p.rowptr[r + 1]; ++k) a[k] = p.col[k] == r ? 2.5 : -1.0;
    for (int i = 0; i < n; ++i) b[i] = std::sin(0.3 * i) + 1.0;
    // Thomas algorithm
    std::vector<double> c(n), d(n), want(n);
    c[0] = -1.0 / 2.5;
    d[0] = b[0] / 2.5;
    for (int i = 1; i < n; ++i) {
        const double m = 2.5 + c[i - 1];
        c[i] = -1.0 / m;
        d[i] = (b[i] + d[i - 1]) / m;
    }
    want[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) want[i] = d[i] - c[i] * want[i + 1];

    for (auto kind : {PreconditionerKind::none, PreconditionerKind::block_jacobi, PreconditionerKind::ras}) {
        Preconditioner pc(p, kind, contiguous_subdomains(n, 4));
        pc.setup(a, 1);
        std::vector<double> x;
        bicgstab(p, a, b, x, pc, 1e-10, 200, 1);
        EXPECT_LE(isc::test::rel_diff(x, want), 1e-8);
    }
}

TEST(Linsolve, PreconditionerIsLinear)
{
    std::mt19937_64 rng(5);
    RandomSystem s = random_system(rng, 20, 9, false);
    std::vector<double> a = s.a, b = s.b;
    decouple(s.p, a, b, 1);
    Preconditioner pc(s.p, PreconditionerKind::ras, contiguous_subdomains(s.p.nrow, 3));
    pc.setup(a, 1);
    const std::size_t n = b.size();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n), y(n), z(n), px(n), py(n), pz(n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = u(rng);
        y[k] = u(rng);
    }
    const double al = 0.7, be = -2.3;
    for (std::size_t k = 0; k < n; ++k) z[k] = al * x[k] + be * y[k];
    pc.apply(x.data(), px.data(), 1);
    pc.apply(y.data(), py.data(), 1);
    pc.apply(z.data(), pz.data(), 1);
    std::vector<double> lin(n);
    for (std::size_t k = 0; k < n; ++k) lin[k] = al * px[k] + be * py[k];
    EXPECT_LE(isc::test::rel_diff(pz, lin), 1e-12);
}

TEST(Linsolve, TubeFirstNewtonIterations)
{
    Deck d = isc::test::tube_deck();
    d.solver.linear_tol = 1e-5;
    const Model m = build_model(d);
    const State s = initial_state(m);
    Assembler as(m);
    LinearSystem sys(as.pattern(), m);
    StepContext ctx;
    ctx.dt = d.schedule.dt0;
    ctx.at_pmax.assign(m.wells.size(), 0);
    as.assemble(s, old_time(m, s), ctx, sys);
    std::vector<std::vector<int>> wc;
    for (const auto& w : m.wells) wc.push_back(w.cells);
    LinearSolver solver(as.pattern(), wc, d.solver, partition(m.grid, d.solver.subdomains).cells);
    std::vector<double> du, dbhp;
    const LinearStats st = solver.solve(sys, du, dbhp, 1);
    EXPECT_LE(st.iterations, 50);
    EXPECT_LE(st.residual, 1e-5);
}

TEST(Kernels, ParallelMatchesSerialBitwise)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(100003), b(100003);
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = u(rng);
        b[k] = u(rng);
    }
    const double ref = kernels::dot_serial(a.data(), b.data(), a.size());
    for (int t : {1, 2, 3, 4}) EXPECT_EQ(kernels::dot(a.data(), b.data(), a.size(), t), ref);

    RandomSystem s = random_system(rng, 40, 9, false);
    std::vector<double> x(s.b.size()), y1(s.b.size()), y2(s.b.size());
    for (auto& v : x) v = u(rng);
    kernels::bsr_mv_serial(s.p, s.a.data(), x.data(), y1.data());
    kernels::bsr_mv(s.p, s.a.data(), x.data(), y2.data(), 4);
    EXPECT_EQ(y1, y2);
}
