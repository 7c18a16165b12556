#include <benchmark/benchmark.h>

#include "psa/experiment.hpp"
#include "psa/opa.hpp"
#include "psa/partition.hpp"
#include "psa/sched_tests.hpp"
#include "psa/taskgen.hpp"

using namespace psa;

static GenConfig cfg(DeadlineModel model, int m) {
    GenConfig g;
    g.deadline_model = model;
    g.distribution = Distribution::uniform;
    g.m = m;
    g.seed = 12345;
    return g;
}

static void bm_generate(benchmark::State& state) {
    auto g = cfg(DeadlineModel::constrained, 4);
    for (auto _ : state) {
        auto sets = generate_sets(g, 100);
        benchmark::DoNotOptimize(sets.size());
    }
}
BENCHMARK(bm_generate);

static void bm_load(benchmark::State& state) {
    auto sets = generate_sets(cfg(DeadlineModel::constrained, 4), 200);
    std::size_t i = 0;
    for (auto _ : state) {
        auto r = load(sets[i++ % sets.size()]);
        benchmark::DoNotOptimize(r.load);
    }
}
BENCHMARK(bm_load);

static void bm_response_time(benchmark::State& state) {
    auto sets = generate_sets(cfg(DeadlineModel::constrained, 4), 200);
    std::size_t i = 0;
    for (auto _ : state) {
        auto v = dm_abrtw(sets[i++ % sets.size()]);
        benchmark::DoNotOptimize(v.schedulable);
    }
}
BENCHMARK(bm_response_time);

static void bm_assign_first_fit(benchmark::State& state) {
    auto sets = generate_sets(cfg(DeadlineModel::implicit, 4), 200);
    std::size_t i = 0;
    for (auto _ : state) {
        auto out = assign(sets[i++ % sets.size()], 4, Heuristic::first_fit,
                          TestId::edf_ll);
        benchmark::DoNotOptimize(out.success);
    }
}
BENCHMARK(bm_assign_first_fit);

static void bm_assign_best_fit_sorted(benchmark::State& state) {
    auto sets = generate_sets(cfg(DeadlineModel::constrained, 4), 200);
    SortCriterion dd{SortCriterion::Key::deadline, true};
    std::size_t i = 0;
    for (auto _ : state) {
        auto out = assign(sets[i++ % sets.size()], 4, Heuristic::best_fit,
                          TestId::edf_bhr, dd);
        benchmark::DoNotOptimize(out.success);
    }
}
BENCHMARK(bm_assign_best_fit_sorted);

static void bm_opa_metrics(benchmark::State& state) {
    auto g = cfg(DeadlineModel::constrained, 2);
    std::vector<TaskSet> sets;
    for (auto& ts : generate_sets(g, 400))
        if (ts.size() <= 9)
            sets.push_back(std::move(ts));
    auto oc = OpaConfig::for_test(TestId::dm_abrtw);
    std::size_t i = 0;
    for (auto _ : state) {
        auto m = opa_metrics(sets[i++ % sets.size()], 2, oc);
        benchmark::DoNotOptimize(m.status);
    }
}
BENCHMARK(bm_opa_metrics);

BENCHMARK_MAIN();
