// isc: run a deck, check its Jacobian, or time it over several thread counts.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "isc/deck.hpp"
#include "isc/error.hpp"
#include "isc/model.hpp"
#include "isc/numfmt.hpp"
#include "isc/parallel.hpp"
#include "isc/report.hpp"
#include "isc/simulator.hpp"

namespace {

using isc::Error;

int default_threads(const isc::Deck& deck)
{
    if (const char* env = std::getenv("ISC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return deck.solver.threads;
}

nlohmann::json summary_json(const std::string& deck, int threads, const isc::RunStats& st)
{
    nlohmann::json j;
    j["deck"] = deck;
    j["threads"] = threads;
    j["steps"] = st.steps;
    j["newton"] = st.newton;
    j["linear"] = st.linear;
    j["cuts"] = st.cuts;
    j["assembly_seconds"] = st.assembly_seconds;
    j["solve_seconds"] = st.solve_seconds;
    j["total_seconds"] = st.total_seconds;
    j["max_step_imbalance"] = st.max_step_imbalance;
    j["cumulative_imbalance"] = st.cumulative_imbalance;
    auto& log = j["log"] = nlohmann::json::array();
    for (const auto& r : st.log)
        log.push_back({{"t", r.t}, {"dt", r.dt}, {"newton", r.newton}, {"linear", r.linear},
                       {"cuts", r.cuts}, {"imbalance", r.imbalance}});
    return j;
}

void write_json(const std::string& path, const nlohmann::json& j)
{
    std::ofstream os(path);
    os << j.dump(2) << '\n';
    if (!os) throw Error(isc::ErrorCode::sink_failure, "cannot write " + path);
}

struct RunArgs {
    std::string deck;
    int threads = 0;
    std::string jacobian;
    bool check_jacobian = false;
    bool validate_only = false;
    bool serial = false;
    bool quiet = false;
    std::string out = "isc_out";
    std::string summary;
};

int cmd_run(const RunArgs& a)
{
    isc::Deck deck = isc::read_deck_file(a.deck);
    if (a.validate_only) {
        std::cout << "deck ok: " << a.deck << '\n';
        return 0;
    }
    if (a.jacobian == "numeric") deck.solver.jacobian = isc::JacobianMode::numeric;
    else if (a.jacobian == "analytic") deck.solver.jacobian = isc::JacobianMode::analytic;
    const int threads = a.threads > 0 ? a.threads : default_threads(deck);
    const isc::Model model = isc::build_model(deck);

    if (a.check_jacobian) {
        const isc::State s = isc::initial_state(model);
        isc::StepContext ctx;
        ctx.dt = deck.schedule.dt0;
        ctx.threads = threads;
        ctx.at_pmax.assign(model.wells.size(), 0);
        const isc::OldTime old = isc::old_time(model, s, threads);
        const double d = isc::jacobian_discrepancy(model, s, old, ctx);
        std::cout << "max relative Jacobian discrepancy: " << isc::format_double(d) << '\n';
        return d < 1e-5 ? 0 : isc::exit_code(isc::ErrorCategory::solver);
    }

    isc::RunOptions opt;
    opt.threads = threads;
    opt.jacobian = deck.solver.jacobian;
    opt.serial = a.serial;
    isc::Simulator sim(model, opt);
    isc::CsvReport report(model, a.out);
    std::size_t logged = 0;
    const isc::RunStats st = sim.run([&](const isc::Frame& fr) {
        report.write(fr);
        if (a.quiet) return;
        const auto& log = sim.stats().log;
        for (; logged < log.size(); ++logged) {
            const auto& r = log[logged];
            std::cerr << fmt::format("t={:.6g} dt={:.4g} newton={} linear={}{}\n", r.t, r.dt,
                                     r.newton, r.linear,
                                     r.cuts ? fmt::format(" cuts={}", r.cuts) : "");
        }
    });
    report.close();
    if (!a.quiet) {
        std::cerr << fmt::format(
            "steps={} newton={} linear={} cuts={} time={:.3f}s max step imbalance={:.3g} "
            "cumulative imbalance={:.3g}\n",
            st.steps, st.newton, st.linear, st.cuts, st.total_seconds, st.max_step_imbalance,
            st.cumulative_imbalance);
    }
    if (!a.summary.empty()) write_json(a.summary, summary_json(a.deck, threads, st));
    return 0;
}

struct BenchArgs {
    std::string deck;
    std::vector<int> threads{1, 2, 4};
    std::vector<int> dims;
    std::string summary;
};

// Resizes a deck with uniform property arrays; perforations are clamped
// into the new grid.
void resize_grid(isc::Deck& deck, int nx, int ny, int nz)
{
    isc::GridSpec& g = deck.grid;
    const std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
    auto uniform = [&](std::vector<double>& v, const char* what) {
        for (double x : v)
            if (x != v.front())
                throw Error(isc::ErrorCode::dimension_mismatch,
                            std::string("--dims needs a uniform ") + what + " array");
    };
    auto resize = [&](std::vector<double>& v, std::size_t len, const char* what) {
        uniform(v, what);
        v.assign(len, v.front());
    };
    resize(g.dx, nx, "DX");
    resize(g.dy, ny, "DY");
    resize(g.dz, nz, "DZ");
    resize(deck.rock.permx, n, "PERMX");
    resize(deck.rock.permy, n, "PERMY");
    resize(deck.rock.permz, n, "PERMZ");
    resize(deck.rock.porosity, n, "POR");
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    for (auto& w : deck.wells)
        for (auto& p : w.perfs) {
            p.i = std::min(p.i, nx);
            p.j = std::min(p.j, ny);
            p.k = std::min(p.k, nz);
        }
}

int cmd_bench(const BenchArgs& a)
{
    isc::Deck deck = isc::read_deck_file(a.deck);
    if (!a.dims.empty()) {
        if (a.dims.size() != 3)
            throw Error(isc::ErrorCode::syntax, "--dims expects nx,ny,nz");
        resize_grid(deck, a.dims[0], a.dims[1], a.dims[2]);
    }
    const isc::Model model = isc::build_model(deck);
    std::cout << fmt::format("deck {}  cells {}  block {}\n", a.deck, model.ncell(), model.nequ());
    std::cout << fmt::format("{:>7} {:>6} {:>7} {:>7} {:>11} {:>9} {:>12} {:>8}\n", "threads",
                             "#Steps", "#Newton", "#Solver", "Avg.solver", "Time(s)",
                             "Asm+Solve(s)", "speedup");
    nlohmann::json rows = nlohmann::json::array();
    double base = 0.0;
    for (int t : a.threads) {
        isc::RunOptions opt;
        opt.threads = t;
        opt.audit = false;
        isc::Simulator sim(model, opt);
        const isc::RunStats st = sim.run([](const isc::Frame&) {});
        const double phase = st.assembly_seconds + st.solve_seconds;
        if (base == 0.0) base = phase;
        const double speedup = base / phase;
        const double avg = st.newton ? double(st.linear) / st.newton : 0.0;
        std::cout << fmt::format("{:>7} {:>6} {:>7} {:>7} {:>11.2f} {:>9.3f} {:>12.3f} {:>8.3f}\n",
                                 t, st.steps, st.newton, st.linear, avg, st.total_seconds, phase,
                                 speedup);
        std::cout.flush();
        nlohmann::json r = summary_json(a.deck, t, st);
        r.erase("log");
        r["speedup"] = speedup;
        rows.push_back(r);
    }
    if (!a.summary.empty()) write_json(a.summary, nlohmann::json{{"cells", model.ncell()}, {"runs", rows}});
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"in-situ combustion simulator"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "run a deck");
    run->add_option("deck", ra.deck, "deck file")->required();
    run->add_option("--threads", ra.threads, "thread count (default: ISC_THREADS, then the deck)");
    run->add_option("--jacobian", ra.jacobian, "analytic|numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));
    run->add_flag("--check-jacobian", ra.check_jacobian,
                  "compare analytic and numeric Jacobians at the initial state");
    run->add_flag("--validate-only", ra.validate_only, "parse and validate, then exit");
    run->add_flag("--serial", ra.serial, "use the serial reference kernels");
    run->add_flag("--quiet", ra.quiet, "no progress log");
    run->add_option("--out", ra.out, "output directory for cells.csv and wells.csv");
    run->add_option("--summary-json", ra.summary, "write the timestep log as JSON");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "time a deck over thread counts");
    bench->add_option("deck", ba.deck, "deck file")->required();
    bench->add_option("--threads", ba.threads, "thread counts")->delimiter(',');
    bench->add_option("--dims", ba.dims, "override grid size nx,ny,nz")->delimiter(',');
    bench->add_option("--summary-json", ba.summary, "write the table as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(ra);
        return cmd_bench(ba);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return isc::exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
