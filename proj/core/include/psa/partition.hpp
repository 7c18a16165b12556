#ifndef PSA_PARTITION_HPP
#define PSA_PARTITION_HPP

/* Partitioned assignment of a task set onto m identical processors.  Tasks
 * are placed one at a time, in an optional sorted order, each onto a
 * processor chosen by a bin-packing heuristic; a placement is admissible iff
 * the processor's subset still passes the configured schedulability test
 * with the task added.
 *
 *   first_fit  lowest-indexed admitting processor
 *   best_fit   admitting processor minimizing post-assignment spare capacity
 *   worst_fit  admitting processor maximizing post-assignment spare capacity
 *   next_fit   first admitting processor at or after a cursor that only
 *              advances (no wrap-around to lower indices)
 *
 * Best/worst-fit ties go to the lowest index.  Assignment stops at the first
 * task admitted nowhere; the partial partition is part of the outcome. */

#include "psa/sched_tests.hpp"
#include "psa/task.hpp"

#include <optional>
#include <string>

namespace psa {

enum class Heuristic { first_fit, best_fit, worst_fit, next_fit };

const char* to_string(Heuristic h);
std::optional<Heuristic> parse_heuristic(std::string_view s);

struct SortCriterion {
    enum class Key { deadline, density, period, utilization };
    Key key = Key::deadline;
    bool decreasing = false;
};

std::span<const SortCriterion> all_sort_criteria(); // the 8 canonical orders
/* Two-letter spelling: direction 'd'/'i' then key 'd'eadline, 'l' density,
 * 'p'eriod, 'u'tilization; e.g. "du" = decreasing utilization. */
std::string to_string(const SortCriterion& c);
std::optional<SortCriterion> parse_sort_criterion(std::string_view s);

/* Stable sort by the criterion's key; ties keep the incoming order, ids are
 * untouched. */
TaskSet sort_tasks(const TaskSet& ts, const SortCriterion& c);

struct Partition {
    int m = 0;
    std::vector<TaskSet> subsets; // exactly m entries, possibly empty
    TestId test = TestId::edf_ll;
};

struct AssignOutcome {
    bool success = false;
    Partition partition;              // partial on failure
    std::optional<int> failed_task;   // id of the first unplaceable task
};

/* Does `subset` extended by `t` still pass `test`?  Propagates the test's
 * deadline-model incompatibility error. */
bool admit(const TaskSet& subset, const Task& t, TestId test);

AssignOutcome assign(const TaskSet& ts, int m, Heuristic h, TestId test,
                     const std::optional<SortCriterion>& order = std::nullopt);

/* Number of nonempty subsets. */
int processors_used(const Partition& p);

/* Mean spare_capacity over all m processors; empty ones contribute 1. */
double mean_spare(const Partition& p);

} // namespace psa

#endif
