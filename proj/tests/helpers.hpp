#ifndef PSA_TESTS_HELPERS_HPP
#define PSA_TESTS_HELPERS_HPP

#include "psa/task.hpp"
#include "psa/taskgen.hpp"

#include <array>
#include <initializer_list>

namespace psa::testing {

/* Build a set from (C, T, D) triples; ids run 1..n in order. */
inline TaskSet set_of(std::initializer_list<std::array<double, 3>> ctd,
                      DeadlineModel model = DeadlineModel::implicit) {
    TaskSet ts;
    ts.model = model;
    int id = 1;
    for (const auto& [c, t, d] : ctd)
        ts.tasks.push_back({id++, c, t, d});
    return ts;
}

/* Implicit-deadline set from utilizations, all periods 1. */
inline TaskSet set_of_utils(std::initializer_list<double> utils) {
    TaskSet ts;
    ts.model = DeadlineModel::implicit;
    int id = 1;
    for (double u : utils)
        ts.tasks.push_back({id++, u, 1.0, 1.0});
    return ts;
}

/* Random set with integer C <= D <= T <= t_max (implicit model forces
 * D = T); plain rejection keeps every parameter at least 1. */
inline TaskSet random_int_set(Rng& rng, int n, int t_max, DeadlineModel model) {
    TaskSet ts;
    ts.model = model;
    for (int i = 1; i <= n; ++i) {
        double t = double(rng.uniform_int(1, t_max));
        double d = model == DeadlineModel::implicit ? t : double(rng.uniform_int(1, std::int64_t(t)));
        double c = double(rng.uniform_int(1, std::int64_t(d)));
        ts.tasks.push_back({i, c, t, d});
    }
    return ts;
}

} // namespace psa::testing

#endif
