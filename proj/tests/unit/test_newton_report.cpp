#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "helpers.hpp"
#include "isc/error.hpp"
#include "isc/numfmt.hpp"
#include "isc/report.hpp"
#include "isc/simulator.hpp"

using namespace isc;
using isc::test::lab_deck;

namespace fs = std::filesystem;

namespace {

std::string temp_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("isc_test_" + name);
    fs::remove_all(p);
    return p.string();
}

Deck short_tube(double end)
{
    Deck d = isc::test::tube_deck();
    d.schedule.end = end;
    std::vector<double> keep;
    for (double t : d.schedule.report_times)
        if (t <= end) keep.push_back(t);
    d.schedule.report_times = keep;
    return d;
}

}  // namespace

TEST(Damping, StandardRule)
{
    EXPECT_DOUBLE_EQ(damp_saturation(1e-2, 1e-3, 1e-4, DampingRule::standard), 1e-3);
    EXPECT_NEAR(damp_saturation(1e-5, -0.2, 1e-5, DampingRule::standard), std::sqrt(1e-10), 1e-20);
    EXPECT_DOUBLE_EQ(damp_saturation(1e-3, 1e-6, 1e-4, DampingRule::standard), 5e-4);
    EXPECT_DOUBLE_EQ(damp_saturation(1e-3, 5e-5, 1e-4, DampingRule::standard), 5e-4);
    EXPECT_DOUBLE_EQ(damp_saturation(0.3, 0.25, 1e-4, DampingRule::standard), 0.25);
}

TEST(Damping, RootAndHalving)
{
    EXPECT_NEAR(damp_saturation(1e-5, -0.2, 1e-4, DampingRule::root), 3.1623e-5, 1e-9);
    EXPECT_DOUBLE_EQ(damp_saturation(1e-5, -0.2, 1e-4, DampingRule::halving), 5e-6);
    EXPECT_DOUBLE_EQ(damp_saturation(1e-3, 1e-6, 1e-4, DampingRule::root), 1e-6);
}

TEST(Damping, NeverNegative)
{
    for (double s : {0.0, 1e-12, 1e-6, 0.1, 0.9})
        for (double tgt : {-1.0, -1e-3, 0.0, 1e-5, 0.5})
            for (auto rule : {DampingRule::standard, DampingRule::root, DampingRule::halving})
                EXPECT_GE(damp_saturation(s, tgt, 1e-4, rule), 0.0);
}

TEST(Newton, ZeroUpdateIsNoOp)
{
    const Model m = build_model(lab_deck(3));
    const State s = initial_state(m);
    State out;
    const std::vector<double> du(s.u.size(), 0.0), dbhp(s.bhp.size(), 0.0);
    EXPECT_FALSE(apply_update(m, s, du, dbhp, out));
    EXPECT_EQ(out, s);
}

TEST(Newton, StationaryConvergesImmediately)
{
    const Model m = build_model(lab_deck(4, false));
    Simulator sim(m, RunOptions{});
    State u = initial_state(m);
    const OldTime old = old_time(m, u);
    StepContext ctx;
    ctx.dt = 0.1;
    const NewtonResult r = sim.newton(u, old, ctx);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_LE(r.residual, m.deck.solver.newton_tol);
}

TEST(Newton, TubeFirstStepConverges)
{
    const Model m = build_model(isc::test::tube_deck());
    Simulator sim(m, RunOptions{});
    State u = initial_state(m);
    const OldTime old = old_time(m, u);
    StepContext ctx;
    ctx.dt = m.deck.schedule.dt0;
    ctx.at_pmax.assign(m.wells.size(), 0);
    const NewtonResult r = sim.newton(u, old, ctx);
    EXPECT_GE(r.iterations, 1);
    EXPECT_LE(r.iterations, m.deck.solver.max_newton);
    EXPECT_LE(r.residual, m.deck.solver.newton_tol);
}

TEST(RunLoop, ForcedFailureCutsStep)
{
    const Model m = build_model(short_tube(0.002));
    RunOptions opt;
    bool fired = false;
    opt.before_iteration = [&](int steps, int it) {
        if (steps == 0 && it == 1 && !fired) {
            fired = true;
            throw Error(ErrorCode::singular_cell_block, "injected");
        }
    };
    Simulator sim(m, opt);
    const RunStats st = sim.run([](const Frame&) {});
    ASSERT_TRUE(fired);
    ASSERT_FALSE(st.log.empty());
    EXPECT_EQ(st.log[0].cuts, 1);
    EXPECT_DOUBLE_EQ(st.log[0].dt, m.deck.schedule.dt0 * m.deck.schedule.cut);
    EXPECT_EQ(st.cuts, 1);
}

TEST(RunLoop, StalledRunThrows)
{
    Deck d = short_tube(0.01);
    d.schedule.dt_min = d.schedule.dt0;
    const Model m = build_model(d);
    RunOptions opt;
    opt.before_iteration = [](int, int) { throw Error(ErrorCode::max_iterations, "always"); };
    Simulator sim(m, opt);
    try {
        sim.run([](const Frame&) {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::simulation_stalled);
        EXPECT_EQ(exit_code(e.category()), 4);
    }
}

TEST(RunLoop, PhysicsErrorsAreRetried)
{
    const Model m = build_model(short_tube(0.01));
    RunOptions opt;
    int calls = 0;
    opt.before_iteration = [&](int, int) {
        ++calls;
        throw Error(ErrorCode::pore_space_exhausted, "x");
    };
    Simulator sim(m, opt);
    // physics failures inside Newton are recoverable; persistent ones end
    // as a stall
    try {
        sim.run([](const Frame&) {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::simulation_stalled);
    }
    EXPECT_GT(calls, 1);
}

TEST(RunLoop, TimestepGrowthCapped)
{
    Deck d = lab_deck(3, false);
    d.schedule.dt0 = 0.01;
    d.schedule.dt_max = 0.07;
    d.schedule.end = 0.5;
    const Model m = build_model(d);
    Simulator sim(m, RunOptions{});
    const RunStats st = sim.run([](const Frame&) {});
    ASSERT_GE(st.log.size(), 4u);
    EXPECT_DOUBLE_EQ(st.log[0].dt, 0.01);
    EXPECT_DOUBLE_EQ(st.log[1].dt, 0.02);
    EXPECT_DOUBLE_EQ(st.log[2].dt, 0.04);
    EXPECT_DOUBLE_EQ(st.log[3].dt, 0.07);
    for (const auto& r : st.log) EXPECT_LE(r.dt, 0.07 + 1e-15);
    EXPECT_DOUBLE_EQ(st.log.back().t, 0.5);
}

TEST(RunLoop, BreakpointsAreHit)
{
    Deck d = short_tube(0.03);
    d.schedule.report_times = {0.0123, 0.03};
    const Model m = build_model(d);
    Simulator sim(m, RunOptions{});
    std::vector<double> times;
    const RunStats st = sim.run([&](const Frame& f) { times.push_back(f.t); });
    EXPECT_EQ(times, (std::vector<double>{0.0123, 0.03}));
    bool heater_stop = false;
    for (const auto& r : st.log) heater_stop |= r.t == m.wells[0].heater_stop;
    EXPECT_TRUE(heater_stop);
}

TEST(RunLoop, PhysicalBoundsAtEveryFrame)
{
    const Model m = build_model(short_tube(0.1));
    Simulator sim(m, RunOptions{});
    const Layout& l = m.layout;
    int frames = 0;
    sim.run([&](const Frame& f) {
        ++frames;
        for (int c = 0; c < m.ncell(); ++c) {
            const double* u = f.state->u.data() + static_cast<std::size_t>(c) * m.nequ();
            const double sw = u[l.sw()], sg = u[l.sg()];
            EXPECT_GE(sw, 0.0);
            EXPECT_GE(sg, 0.0);
            EXPECT_LE(sw + sg, 1.0 + 1e-12);
            EXPECT_GE(u[l.cc()], 0.0);
            EXPECT_GT(u[l.p()], 0.0);
            double sx = 0.0, sy = 0.0;
            for (int i = 0; i < l.nco; ++i) {
                EXPECT_GE(u[l.x(i)], -1e-12);
                sx += u[l.x(i)];
            }
            for (int j = 0; j < l.ncg; ++j) {
                EXPECT_GE(u[l.y(j)], -1e-12);
                sy += u[l.y(j)];
            }
            EXPECT_LE(std::abs(sx - 1.0), 1e-4);
            EXPECT_LE(sy, 1.0 + 1e-4);
        }
    });
    EXPECT_EQ(frames, 5);
}

TEST(Report, EmptyScheduleWritesFinalStateOnly)
{
    Deck d = lab_deck(3, false);
    d.schedule.end = 0.05;
    d.schedule.dt0 = 0.01;
    const Model m = build_model(d);
    const std::string dir = temp_dir("final");
    Simulator sim(m, RunOptions{});
    CsvReport rep(m, dir);
    sim.run([&](const Frame& f) { rep.write(f); });
    rep.close();
    const CsvTable t = read_csv(dir + "/cells.csv");
    ASSERT_EQ(t.rows.size(), 3u);
    for (const auto& r : t.rows) EXPECT_EQ(parse_double(r[0]), 0.05);
}

TEST(Report, RowsPerReportTimeAndRoundTrip)
{
    const Model m = build_model(short_tube(0.04));
    const std::string dir = temp_dir("rows");
    Simulator sim(m, RunOptions{});
    CsvReport rep(m, dir);
    std::vector<std::vector<std::vector<double>>> frames;
    sim.run([&](const Frame& f) {
        rep.write(f);
        frames.push_back(cell_rows(m, f));
    });
    rep.close();
    const CsvTable t = read_csv(dir + "/cells.csv");
    EXPECT_EQ(t.header, cell_columns(m));
    ASSERT_EQ(t.rows.size(), 12u * frames.size());
    EXPECT_EQ(frames.size(), 2u);
    for (std::size_t f = 0; f < frames.size(); ++f)
        for (std::size_t c = 0; c < 12; ++c)
            for (std::size_t k = 0; k < frames[f][c].size(); ++k)
                EXPECT_EQ(parse_double(t.rows[f * 12 + c][k]), frames[f][c][k]);
    const CsvTable w = read_csv(dir + "/wells.csv");
    EXPECT_EQ(w.header, well_columns(m));
    ASSERT_EQ(w.rows.size(), 2u * frames.size());
    EXPECT_EQ(w.rows[0][1], "INJ");
    EXPECT_EQ(w.rows[1][1], "PROD");
}

TEST(Report, ByteIdenticalReruns)
{
    const Model m = build_model(short_tube(0.02));
    std::string text[2];
    for (int k = 0; k < 2; ++k) {
        const std::string dir = temp_dir("rerun" + std::to_string(k));
        Simulator sim(m, RunOptions{});
        CsvReport rep(m, dir);
        sim.run([&](const Frame& f) { rep.write(f); });
        rep.close();
        text[k] = isc::test::slurp(dir + "/cells.csv") + isc::test::slurp(dir + "/wells.csv");
    }
    EXPECT_FALSE(text[0].empty());
    EXPECT_EQ(text[0], text[1]);
}

TEST(Report, UnwritableDirectory)
{
    const Model m = build_model(lab_deck(2));
    try {
        CsvReport rep(m, "/dev/null/sub");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::sink_failure);
    }
}

TEST(NumFmt, ShortestRoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, 2014.7, 1e-300, 6.02214076e23, -0.0, 5e-324}) {
        const std::string s = format_double(v);
        EXPECT_EQ(parse_double(s), v) << s;
    }
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(csv_line({0.5, 7.0, 1.0, 1.0, 3.0, 2.5}), "0.5,7,1,1,3,2.5\n");
    const std::string name = "INJ";
    EXPECT_EQ(csv_line({0.5, 0.0, 2.5}, &name), "0.5,INJ,2.5\n");
}
