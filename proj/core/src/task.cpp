#include "psa/task.hpp"

#include <cmath>
#include <string>

namespace psa {

const char* to_string(DeadlineModel m) {
    return m == DeadlineModel::implicit ? "implicit" : "constrained";
}

bool parse_deadline_model(std::string_view s, DeadlineModel& out) {
    if (s == "implicit") {
        out = DeadlineModel::implicit;
        return true;
    }
    if (s == "constrained") {
        out = DeadlineModel::constrained;
        return true;
    }
    return false;
}

double TaskSet::total_utilization() const {
    double u = 0.0;
    for (const Task& t : tasks)
        u += t.utilization();
    return u;
}

double TaskSet::total_density() const {
    double d = 0.0;
    for (const Task& t : tasks)
        d += t.density();
    return d;
}

std::string validate(const TaskSet& ts) {
    for (const Task& t : ts.tasks) {
        if (!(t.wcet > 0.0) || !(t.period > 0.0) || !(t.deadline > 0.0))
            return "task " + std::to_string(t.id) + ": C, T, D must be positive";
        if (ts.model == DeadlineModel::implicit &&
            std::abs(t.deadline - t.period) > time_eps)
            return "task " + std::to_string(t.id) + ": implicit model requires D == T";
        if (ts.model == DeadlineModel::constrained &&
            t.deadline > t.period + time_eps)
            return "task " + std::to_string(t.id) + ": constrained model requires D <= T";
    }
    return "";
}

} // namespace psa
