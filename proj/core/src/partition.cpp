#include "psa/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace psa {

namespace {

constexpr std::array<SortCriterion, 8> criteria_table{{
    {SortCriterion::Key::deadline, false},
    {SortCriterion::Key::deadline, true},
    {SortCriterion::Key::density, false},
    {SortCriterion::Key::density, true},
    {SortCriterion::Key::period, false},
    {SortCriterion::Key::period, true},
    {SortCriterion::Key::utilization, false},
    {SortCriterion::Key::utilization, true},
}};

double sort_key(const Task& t, SortCriterion::Key key) {
    switch (key) {
    case SortCriterion::Key::deadline: return t.deadline;
    case SortCriterion::Key::density: return t.density();
    case SortCriterion::Key::period: return t.period;
    case SortCriterion::Key::utilization: return t.utilization();
    }
    return 0.0;
}

/* Tentatively place `t` on `subset`, undoing the placement on rejection.
 * Avoids the subset copy of admit() on the assignment hot path. */
bool admit_in_place(TaskSet& subset, const Task& t, TestId test) {
    subset.tasks.push_back(t);
    bool ok = run_test(test, subset).schedulable;
    if (!ok)
        subset.tasks.pop_back();
    return ok;
}

double spare_with(TaskSet& subset, TestId test) {
    /* Called right after a successful admit_in_place, task still placed. */
    return spare_capacity(test, subset);
}

} // namespace

const char* to_string(Heuristic h) {
    switch (h) {
    case Heuristic::first_fit: return "ff";
    case Heuristic::best_fit: return "bf";
    case Heuristic::worst_fit: return "wf";
    case Heuristic::next_fit: return "nf";
    }
    return "";
}

std::optional<Heuristic> parse_heuristic(std::string_view s) {
    if (s == "ff") return Heuristic::first_fit;
    if (s == "bf") return Heuristic::best_fit;
    if (s == "wf") return Heuristic::worst_fit;
    if (s == "nf") return Heuristic::next_fit;
    return std::nullopt;
}

std::span<const SortCriterion> all_sort_criteria() { return criteria_table; }

std::string to_string(const SortCriterion& c) {
    std::string s;
    s += c.decreasing ? 'd' : 'i';
    switch (c.key) {
    case SortCriterion::Key::deadline: s += 'd'; break;
    case SortCriterion::Key::density: s += 'l'; break;
    case SortCriterion::Key::period: s += 'p'; break;
    case SortCriterion::Key::utilization: s += 'u'; break;
    }
    return s;
}

std::optional<SortCriterion> parse_sort_criterion(std::string_view s) {
    if (s.size() != 2)
        return std::nullopt;
    SortCriterion c;
    if (s[0] == 'd')
        c.decreasing = true;
    else if (s[0] == 'i')
        c.decreasing = false;
    else
        return std::nullopt;
    switch (s[1]) {
    case 'd': c.key = SortCriterion::Key::deadline; break;
    case 'l': c.key = SortCriterion::Key::density; break;
    case 'p': c.key = SortCriterion::Key::period; break;
    case 'u': c.key = SortCriterion::Key::utilization; break;
    default: return std::nullopt;
    }
    return c;
}

TaskSet sort_tasks(const TaskSet& ts, const SortCriterion& c) {
    TaskSet out = ts;
    std::stable_sort(out.tasks.begin(), out.tasks.end(),
                     [&c](const Task& a, const Task& b) {
                         double ka = sort_key(a, c.key);
                         double kb = sort_key(b, c.key);
                         return c.decreasing ? ka > kb : ka < kb;
                     });
    return out;
}

bool admit(const TaskSet& subset, const Task& t, TestId test) {
    TaskSet candidate = subset;
    candidate.tasks.push_back(t);
    return run_test(test, candidate).schedulable;
}

AssignOutcome assign(const TaskSet& ts, int m, Heuristic h, TestId test,
                     const std::optional<SortCriterion>& order) {
    AssignOutcome out;
    out.partition.m = m;
    out.partition.test = test;
    out.partition.subsets.assign(static_cast<std::size_t>(m),
                                 TaskSet{{}, ts.model});

    TaskSet ordered = order ? sort_tasks(ts, *order) : ts;
    auto& subsets = out.partition.subsets;
    int cursor = 0; // next_fit scan start, never moves backward

    for (const Task& t : ordered.tasks) {
        int chosen = -1;
        switch (h) {
        case Heuristic::first_fit:
        case Heuristic::next_fit: {
            int start = h == Heuristic::next_fit ? cursor : 0;
            for (int j = start; j < m; ++j) {
                if (admit_in_place(subsets[std::size_t(j)], t, test)) {
                    chosen = j;
                    break;
                }
            }
            break;
        }
        case Heuristic::best_fit:
        case Heuristic::worst_fit: {
            double best = 0.0;
            int best_j = -1;
            for (int j = 0; j < m; ++j) {
                if (!admit_in_place(subsets[std::size_t(j)], t, test))
                    continue;
                double spare = spare_with(subsets[std::size_t(j)], test);
                subsets[std::size_t(j)].tasks.pop_back();
                bool better = best_j < 0 ||
                              (h == Heuristic::best_fit ? spare < best - time_eps
                                                        : spare > best + time_eps);
                if (better) {
                    best = spare;
                    best_j = j;
                }
            }
            if (best_j >= 0) {
                subsets[std::size_t(best_j)].tasks.push_back(t);
                chosen = best_j;
            }
            break;
        }
        }
        if (chosen < 0) {
            out.failed_task = t.id;
            return out;
        }
        if (h == Heuristic::next_fit)
            cursor = chosen;
    }
    out.success = true;
    return out;
}

int processors_used(const Partition& p) {
    int used = 0;
    for (const TaskSet& s : p.subsets)
        if (!s.empty())
            ++used;
    return used;
}

double mean_spare(const Partition& p) {
    if (p.subsets.empty())
        return 1.0;
    double sum = 0.0;
    for (const TaskSet& s : p.subsets)
        sum += spare_capacity(p.test, s);
    return sum / double(p.subsets.size());
}

} // namespace psa
