// Serial reference vs OpenMP kernels on the 3D benchmark deck.
//   bench_kernels --benchmark_filter=Assemble

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "isc/assembly.hpp"
#include "isc/deck.hpp"
#include "isc/kernels.hpp"
#include "isc/linsolve.hpp"
#include "isc/model.hpp"

namespace {

struct Fixture {
    isc::Model model;
    isc::State state;
    isc::OldTime old;
    std::unique_ptr<isc::Assembler> as;
    isc::LinearSystem sys;
    isc::StepContext ctx;
    std::vector<double> x, y;

    Fixture() : model(isc::build_model(isc::read_deck_file(ISC_SOURCE_DIR "/data/decks/bench3d.deck")))
    {
        state = isc::initial_state(model);
        old = isc::old_time(model, state);
        as = std::make_unique<isc::Assembler>(model);
        sys = isc::LinearSystem(as->pattern(), model);
        ctx.dt = model.deck.schedule.dt0;
        ctx.at_pmax.assign(model.wells.size(), 0);
        as->assemble_serial(state, old, ctx, sys);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        x.resize(sys.f.size());
        y.resize(sys.f.size());
        for (double& v : x) v = u(rng);
    }
};

Fixture& fixture()
{
    static Fixture f;
    return f;
}

// threads == 0 selects the serial reference
void Dot(benchmark::State& st)
{
    Fixture& f = fixture();
    const int t = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(t ? isc::kernels::dot(f.x.data(), f.x.data(), f.x.size(), t)
                                   : isc::kernels::dot_serial(f.x.data(), f.x.data(), f.x.size()));
}

void BsrMv(benchmark::State& st)
{
    Fixture& f = fixture();
    const int t = static_cast<int>(st.range(0));
    for (auto _ : st) {
        if (t) isc::kernels::bsr_mv(f.as->pattern(), f.sys.a.data(), f.x.data(), f.y.data(), t);
        else isc::kernels::bsr_mv_serial(f.as->pattern(), f.sys.a.data(), f.x.data(), f.y.data());
        benchmark::ClobberMemory();
    }
}

void Decouple(benchmark::State& st)
{
    Fixture& f = fixture();
    const int t = static_cast<int>(st.range(0));
    for (auto _ : st) {
        st.PauseTiming();
        std::vector<double> a = f.sys.a, b = f.sys.f;
        st.ResumeTiming();
        if (t) isc::decouple(f.as->pattern(), a, b, t);
        else isc::decouple_serial(f.as->pattern(), a, b);
        benchmark::ClobberMemory();
    }
}

void Assemble(benchmark::State& st)
{
    Fixture& f = fixture();
    const int t = static_cast<int>(st.range(0));
    for (auto _ : st) {
        if (t) {
            f.ctx.threads = t;
            f.as->assemble(f.state, f.old, f.ctx, f.sys);
        } else {
            f.as->assemble_serial(f.state, f.old, f.ctx, f.sys);
        }
        benchmark::ClobberMemory();
    }
}

}  // namespace

BENCHMARK(Dot)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();
BENCHMARK(BsrMv)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();
BENCHMARK(Decouple)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(Assemble)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
