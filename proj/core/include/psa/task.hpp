#ifndef PSA_TASK_HPP
#define PSA_TASK_HPP

/* Sporadic task model: a task is (C, T, D) with worst-case execution time C,
 * minimum inter-arrival time T and relative deadline D.  A task set carries a
 * deadline model tag: implicit (D == T for every task) or constrained
 * (D <= T).  Times are reals; generators emit integer-valued T and D. */

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace psa {

/* Absolute tolerance for all boundary comparisons on time values and
 * utilization-like quantities. */
inline constexpr double time_eps = 1e-9;

enum class DeadlineModel { implicit, constrained };

const char* to_string(DeadlineModel m);
bool parse_deadline_model(std::string_view s, DeadlineModel& out);

struct Task {
    int id = 0;          // stable identity, 1-based within a generated set
    double wcet = 0.0;   // C > 0
    double period = 0.0; // T >= C
    double deadline = 0.0; // D; implicit: D == T, constrained: D <= T

    double utilization() const { return wcet / period; }
    double density() const { return wcet / std::min(deadline, period); }
};

struct TaskSet {
    std::vector<Task> tasks;
    DeadlineModel model = DeadlineModel::implicit;

    std::size_t size() const { return tasks.size(); }
    bool empty() const { return tasks.empty(); }
    const Task& operator[](std::size_t i) const { return tasks[i]; }
    Task& operator[](std::size_t i) { return tasks[i]; }
    auto begin() const { return tasks.begin(); }
    auto end() const { return tasks.end(); }

    /* Sum of C_i / T_i.  Empty sets sum to zero. */
    double total_utilization() const;
    /* Sum of C_i / min(D_i, T_i); equals total_utilization() when implicit. */
    double total_density() const;
};

/* Structural sanity: C > 0, T > 0, D > 0, and D consistent with the model
 * (within time_eps).  Returns an empty string when valid, else a message. */
std::string validate(const TaskSet& ts);

} // namespace psa

#endif
