#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "psa/opa.hpp"

#include <algorithm>

using namespace psa;
using psa::testing::random_int_set;
using psa::testing::set_of_utils;

namespace {

std::vector<int> ids(const TaskSet& ts) {
    std::vector<int> out;
    for (const Task& t : ts)
        out.push_back(t.id);
    return out;
}

/* Straight-line reference: enumerate raw partitions, test every block with
 * run_test, track the best metrics.  No pruning, no memoization. */
struct BruteResult {
    bool feasible = false;
    int min_procs = 0;
    double best_min_spare = 0.0;
};

BruteResult brute_force(const TaskSet& ts, int m, TestId test) {
    BruteResult r;
    enumerate_partitions(int(ts.size()), m, [&](std::span<const int> block) {
        int blocks = *std::max_element(block.begin(), block.end()) + 1;
        std::vector<TaskSet> subsets(std::size_t(blocks), TaskSet{{}, ts.model});
        for (std::size_t i = 0; i < block.size(); ++i)
            subsets[std::size_t(block[i])].tasks.push_back(ts[i]);
        double min_spare = 1.0;
        for (const auto& s : subsets) {
            if (!run_test(test, s).schedulable)
                return true;
            min_spare = std::min(min_spare, spare_capacity(test, s));
        }
        if (!r.feasible || blocks < r.min_procs)
            r.min_procs = blocks;
        if (!r.feasible || min_spare > r.best_min_spare)
            r.best_min_spare = min_spare;
        r.feasible = true;
        return true;
    });
    return r;
}

} // namespace

TEST_CASE("partition enumeration counts") {
    auto count = [](int n, int m) {
        std::uint64_t c = 0;
        enumerate_partitions(n, m, [&](std::span<const int>) {
            ++c;
            return true;
        });
        return c;
    };
    CHECK(count(2, 2) == 2);
    CHECK(count(3, 2) == 4);
    CHECK(count(3, 3) == 5);
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= n + 2; ++m)
            CHECK(count(n, m) == oracle::partition_count(n, m));
}

TEST_CASE("enumeration yields valid restricted growth strings") {
    enumerate_partitions(5, 3, [&](std::span<const int> block) {
        CHECK(block[0] == 0);
        int used = 0;
        for (int b : block) {
            CHECK(b <= used); // a new block extends the count by exactly one
            CHECK(b < 3);
            used = std::max(used, b + 1);
        }
        return true;
    });
}

TEST_CASE("optimal search finds the hand-traceable witness") {
    auto ts = set_of_utils({0.5, 0.4, 0.6, 0.5});
    auto cfg = OpaConfig::for_test(TestId::edf_bhr);
    auto out = opa_schedulable(ts, 2, cfg);
    REQUIRE(out.status == OpaStatus::feasible);
    CHECK(ids(out.partition.subsets[0]) == std::vector<int>{1, 4});
    CHECK(ids(out.partition.subsets[1]) == std::vector<int>{2, 3});
    for (const auto& subset : out.partition.subsets)
        if (!subset.empty())
            CHECK(run_test(cfg.test, subset).schedulable);

    /* The same set defeats unsorted first-fit, which strands the last task. */
    CHECK_FALSE(assign(ts, 2, Heuristic::first_fit, TestId::edf_bhr).success);
}

TEST_CASE("optimal search edge cases") {
    auto cfg = OpaConfig::for_test(TestId::edf_bhr);

    auto single = opa_schedulable(set_of_utils({0.9}), 1, cfg);
    CHECK(single.status == OpaStatus::feasible);

    auto overfull = opa_schedulable(set_of_utils({0.7, 0.7, 0.7}), 2, cfg);
    CHECK(overfull.status == OpaStatus::infeasible);

    auto none = opa_schedulable(TaskSet{}, 2, cfg);
    CHECK(none.status == OpaStatus::feasible);

    auto no_proc = opa_schedulable(set_of_utils({0.1}), 0, cfg);
    CHECK(no_proc.status == OpaStatus::infeasible);
}

TEST_CASE("task-count cap refuses instead of guessing") {
    CHECK(OpaConfig::for_test(TestId::edf_bhr).max_tasks == 14);
    CHECK(OpaConfig::for_test(TestId::dm_abrtw).max_tasks == 16);

    OpaConfig tight{TestId::edf_bhr, 3};
    auto out = opa_schedulable(set_of_utils({0.1, 0.1, 0.1, 0.1}), 2, tight);
    CHECK(out.status == OpaStatus::capped);
    auto metrics = opa_metrics(set_of_utils({0.1, 0.1, 0.1, 0.1}), 2, tight);
    CHECK(metrics.status == OpaStatus::capped);
}

TEST_CASE("only exact tests drive the optimal search") {
    auto ts = set_of_utils({0.5, 0.4});
    for (TestId id : {TestId::edf_ll, TestId::edf_bf, TestId::dm_fbb,
                      TestId::rm_ll, TestId::rm_bbb, TestId::rm_lmm})
        CHECK_THROWS_AS((void)opa_schedulable(ts, 2, OpaConfig{id, 14}),
                        std::invalid_argument);
}

TEST_CASE("optimal search dominates every heuristic") {
    Rng rng(61);
    int heur_successes = 0;
    for (int iter = 0; iter < 300; ++iter) {
        bool implicit = iter % 2 == 0;
        auto model = implicit ? DeadlineModel::implicit : DeadlineModel::constrained;
        auto ts = random_int_set(rng, 2 + iter % 6, 12, model);
        int m = 2 + iter % 2;
        TestId test = implicit ? TestId::edf_bhr : TestId::dm_abrtw;
        auto cfg = OpaConfig::for_test(test);

        bool any_heur = false;
        for (Heuristic h : {Heuristic::first_fit, Heuristic::best_fit,
                            Heuristic::worst_fit, Heuristic::next_fit}) {
            any_heur = any_heur || assign(ts, m, h, test).success;
            for (const auto& c : all_sort_criteria())
                any_heur = any_heur || assign(ts, m, h, test, c).success;
        }
        if (any_heur) {
            CHECK(opa_schedulable(ts, m, cfg).status == OpaStatus::feasible);
            ++heur_successes;
        }
    }
    CHECK(heur_successes > 50);
}

TEST_CASE("search metrics match a brute-force reference") {
    Rng rng(67);
    int feasible_seen = 0;
    for (int iter = 0; iter < 150; ++iter) {
        bool implicit = iter % 2 == 0;
        auto model = implicit ? DeadlineModel::implicit : DeadlineModel::constrained;
        auto ts = random_int_set(rng, 2 + iter % 5, 10, model);
        int m = 2 + iter % 2;
        TestId test = implicit ? TestId::edf_bhr : TestId::dm_abrtw;
        auto cfg = OpaConfig::for_test(test);

        auto brute = brute_force(ts, m, test);
        auto metrics = opa_metrics(ts, m, cfg);
        CHECK((metrics.status == OpaStatus::feasible) == brute.feasible);
        if (!brute.feasible)
            continue;
        ++feasible_seen;

        CHECK(processors_used(metrics.min_processors) == brute.min_procs);
        double min_spare = 1.0;
        for (const auto& s : metrics.max_min_spare.subsets)
            min_spare = std::min(min_spare, spare_capacity(test, s));
        CHECK(min_spare == doctest::Approx(brute.best_min_spare));

        /* Witnesses re-verify and agree with the single-objective searches. */
        for (const auto* p : {&metrics.min_processors, &metrics.max_min_spare})
            for (const auto& subset : p->subsets)
                if (!subset.empty())
                    CHECK(run_test(test, subset).schedulable);

        auto procs = opa_search(ts, m, cfg, OpaObjective::min_processors);
        REQUIRE(procs.status == OpaStatus::feasible);
        CHECK(processors_used(procs.partition) == brute.min_procs);

        auto spare = opa_search(ts, m, cfg, OpaObjective::max_min_spare);
        REQUIRE(spare.status == OpaStatus::feasible);
        double got = 1.0;
        for (const auto& s : spare.partition.subsets)
            got = std::min(got, spare_capacity(test, s));
        CHECK(got == doctest::Approx(brute.best_min_spare));
    }
    CHECK(feasible_seen > 30);
}
