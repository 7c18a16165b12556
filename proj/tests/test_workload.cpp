#include "doctest.h"
#include "helpers.hpp"

#include "psa/workload.hpp"

#include <cmath>

using namespace psa;
using psa::testing::random_int_set;
using psa::testing::set_of;

TEST_CASE("utilization and density sums") {
    auto a = set_of({{1, 4, 4}});
    CHECK(a.total_utilization() == doctest::Approx(0.25));
    CHECK(a.total_density() == doctest::Approx(0.25));

    auto b = set_of({{1, 4, 4}, {2, 6, 6}});
    CHECK(b.total_utilization() == doctest::Approx(7.0 / 12.0));

    auto c = set_of({{2, 4, 3}}, DeadlineModel::constrained);
    CHECK(c.total_utilization() == doctest::Approx(0.5));
    CHECK(c.total_density() == doctest::Approx(2.0 / 3.0));

    auto d = set_of({{2, 4, 3}, {1, 5, 5}}, DeadlineModel::constrained);
    CHECK(d.total_density() == doctest::Approx(2.0 / 3.0 + 0.2));

    CHECK(TaskSet{}.total_utilization() == 0.0);
    CHECK(TaskSet{}.total_density() == 0.0);
}

TEST_CASE("per-task accessors") {
    Task t{1, 2, 4, 3};
    CHECK(t.utilization() == doctest::Approx(0.5));
    CHECK(t.density() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("request bound function") {
    auto ts = set_of({{1, 4, 4}, {2, 6, 6}});
    CHECK(rbf(ts, 7) == doctest::Approx(6.0));
    CHECK(rbf(set_of({{1, 4, 4}}), 4) == doctest::Approx(1.0));
    CHECK(rbf(set_of({{1, 4, 4}}), 4.5) == doctest::Approx(2.0));
    CHECK(rbf(ts, 0) == doctest::Approx(0.0));
}

TEST_CASE("linear request bound") {
    auto ts = set_of({{1, 4, 4}, {2, 6, 6}});
    CHECK(rbf_star(ts, 7) == doctest::Approx(1 + 0.25 * 7 + 2 + 7.0 / 3.0));
    CHECK(rbf_star(set_of({{1, 4, 4}}), 4) == doctest::Approx(2.0));
    CHECK(rbf_star(set_of({{1, 4, 4}}), 0.0001) == doctest::Approx(1.000025));
    CHECK(rbf_star(set_of({{1, 4, 4}, {1, 2, 2}}), 4) == doctest::Approx(5.0));
}

TEST_CASE("demand bound function") {
    auto one = set_of({{2, 4, 3}}, DeadlineModel::constrained);
    CHECK(dbf(one, 7) == doctest::Approx(4.0));
    CHECK(dbf(one, 2) == doctest::Approx(0.0));
    CHECK(dbf(one, 3) == doctest::Approx(2.0));

    auto two = set_of({{1, 4, 4}, {2, 6, 6}});
    CHECK(dbf(two, 12) == doctest::Approx(7.0));
}

TEST_CASE("linear demand bound") {
    auto one = set_of({{2, 4, 3}}, DeadlineModel::constrained);
    CHECK(dbf_star(one, 7) == doctest::Approx(2 + 4 * 0.5));
    CHECK(dbf_star(one, 2) == doctest::Approx(0.0));
    CHECK(dbf_star(one, 3) == doctest::Approx(2.0));
    CHECK(dbf_star(set_of({{1, 5, 3}}, DeadlineModel::constrained), 4) ==
          doctest::Approx(1.2));
}

TEST_CASE("snapped rounding") {
    CHECK(floor_snapped(2.0000000001) == doctest::Approx(2.0));
    CHECK(floor_snapped(1.9999999999) == doctest::Approx(2.0));
    CHECK(floor_snapped(1.5) == doctest::Approx(1.0));
    CHECK(ceil_snapped(2.0000000001) == doctest::Approx(2.0));
    CHECK(ceil_snapped(1.9999999999) == doctest::Approx(2.0));
    CHECK(ceil_snapped(1.5) == doctest::Approx(2.0));
}

TEST_CASE("hyperperiod") {
    auto h = hyperperiod(set_of({{1, 4, 4}, {2, 6, 6}}));
    REQUIRE(h.ok());
    CHECK(h.value == 12);

    auto single = hyperperiod(set_of({{1, 4, 4}}));
    REQUIRE(single.ok());
    CHECK(single.value == 4);

    SUBCASE("product of all primes up to 100 overflows the cap") {
        TaskSet ts;
        ts.model = DeadlineModel::implicit;
        int id = 1;
        for (int p : {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                      43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97})
            ts.tasks.push_back({id++, 1.0, double(p), double(p)});
        CHECK(hyperperiod(ts).status == Hyperperiod::Status::overflow);
    }

    SUBCASE("non-integer period is reported, not rounded") {
        auto r = hyperperiod(set_of({{1, 4.5, 4.5}}));
        CHECK(r.status == Hyperperiod::Status::non_integer_period);
    }
}

TEST_CASE("deadline checkpoints") {
    auto one = set_of({{2, 4, 3}}, DeadlineModel::constrained);
    CHECK(deadline_checkpoints(one, 3) == std::vector<double>{3});
    CHECK(deadline_checkpoints(one, 11) == std::vector<double>{3, 7, 11});

    auto two = set_of({{1, 4, 4}, {2, 6, 6}});
    CHECK(deadline_checkpoints(two, 12) == std::vector<double>{4, 6, 8, 12});

    CHECK(deadline_checkpoints(one, 2).empty());
}

TEST_CASE("workload bounds order and monotonicity") {
    Rng rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        auto model = iter % 2 ? DeadlineModel::constrained : DeadlineModel::implicit;
        auto ts = random_int_set(rng, 1 + iter % 5, 12, model);
        double prev_d = 0, prev_r = 0;
        for (double t = 0.5; t < 40; t += 0.7) {
            double d = dbf(ts, t), r = rbf(ts, t);
            CHECK(d <= r + time_eps);
            CHECK(d <= dbf_star(ts, t) + time_eps);
            CHECK(r <= rbf_star(ts, t) + time_eps);
            CHECK(d >= prev_d - time_eps);
            CHECK(r >= prev_r - time_eps);
            prev_d = d;
            prev_r = r;
        }
    }
}

TEST_CASE("demand rate approaches utilization on implicit sets") {
    Rng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        auto ts = random_int_set(rng, 1 + iter % 4, 10, DeadlineModel::implicit);
        auto h = hyperperiod(ts);
        REQUIRE(h.ok());
        double t = 1000.0 * double(h.value);
        CHECK(dbf(ts, t) / t == doctest::Approx(ts.total_utilization()).epsilon(1e-6));
        /* At multiples of the hyperperiod the implicit-deadline demand is
         * exactly U * t. */
        CHECK(dbf(ts, double(h.value)) ==
              doctest::Approx(ts.total_utilization() * double(h.value)));
    }
}

TEST_CASE("demand is constant between consecutive checkpoints") {
    Rng rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        auto ts = random_int_set(rng, 2, 9, DeadlineModel::constrained);
        auto cps = deadline_checkpoints(ts, 30.0);
        for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
            double mid = 0.5 * (cps[i] + cps[i + 1]);
            CHECK(dbf(ts, mid) == doctest::Approx(dbf(ts, cps[i])));
        }
    }
}
