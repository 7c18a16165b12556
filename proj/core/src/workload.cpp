#include "psa/workload.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

namespace psa {

double floor_snapped(double x) {
    double r = std::round(x);
    if (std::abs(x - r) <= time_eps)
        return r;
    return std::floor(x);
}

double ceil_snapped(double x) {
    double r = std::round(x);
    if (std::abs(x - r) <= time_eps)
        return r;
    return std::ceil(x);
}

double rbf(const TaskSet& ts, double t) {
    double sum = 0.0;
    for (const Task& task : ts)
        sum += ceil_snapped(t / task.period) * task.wcet;
    return sum;
}

double rbf_star(const TaskSet& ts, double t) {
    double sum = 0.0;
    for (const Task& task : ts)
        sum += task.wcet + task.utilization() * t;
    return sum;
}

double dbf(const TaskSet& ts, double t) {
    double sum = 0.0;
    for (const Task& task : ts) {
        double jobs = 1.0 + floor_snapped((t - task.deadline) / task.period);
        if (jobs > 0.0)
            sum += jobs * task.wcet;
    }
    return sum;
}

double dbf_star(const TaskSet& ts, double t) {
    double sum = 0.0;
    for (const Task& task : ts)
        if (t >= task.deadline - time_eps)
            sum += task.wcet + (t - task.deadline) * task.utilization();
    return sum;
}

Hyperperiod hyperperiod(const TaskSet& ts, std::uint64_t cap) {
    std::uint64_t l = 1;
    for (const Task& task : ts) {
        double rounded = std::round(task.period);
        if (std::abs(task.period - rounded) > time_eps || rounded < 1.0)
            return {Hyperperiod::Status::non_integer_period, 0};
        std::uint64_t p = static_cast<std::uint64_t>(rounded);
        std::uint64_t g = std::gcd(l, p);
        /* l/g * p overflows well before any double-precision damage. */
        std::uint64_t q = l / g;
        if (q > cap / p)
            return {Hyperperiod::Status::overflow, 0};
        l = q * p;
        if (l > cap)
            return {Hyperperiod::Status::overflow, 0};
    }
    return {Hyperperiod::Status::ok, l};
}

std::vector<double> deadline_checkpoints(const TaskSet& ts, double horizon) {
    std::vector<double> points;
    for (const Task& task : ts) {
        for (std::uint64_t k = 0;; ++k) {
            double t = task.deadline + double(k) * task.period;
            if (t > horizon + time_eps)
                break;
            points.push_back(t);
        }
    }
    std::sort(points.begin(), points.end());
    /* Instants within tolerance of each other collapse to the first. */
    auto last = std::unique(points.begin(), points.end(), [](double a, double b) {
        return std::abs(a - b) <= time_eps;
    });
    points.erase(last, points.end());
    return points;
}

} // namespace psa
