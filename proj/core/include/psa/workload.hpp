#ifndef PSA_WORKLOAD_HPP
#define PSA_WORKLOAD_HPP

/* Workload abstractions over an interval of length t for synchronous
 * sporadic task sets:
 *
 *   rbf(ts, t)       sum_i ceil(t / T_i) * C_i          (request bound)
 *   rbf_star(ts, t)  sum_i (C_i + u_i * t)              (linear upper bound)
 *   dbf(ts, t)       sum_i max(0, 1 + floor((t - D_i) / T_i)) * C_i
 *   dbf_star(ts, t)  sum_i [t >= D_i] (C_i + (t - D_i) * u_i)
 *
 * Interval endpoint conventions follow the closed/half-open forms above
 * verbatim; consumers rely on dbf <= rbf and dbf <= dbf_star pointwise.
 *
 * Ratios are evaluated in doubles; floor/ceil first snap values within
 * time_eps of an integer onto it so that integer-valued inputs behave
 * exactly. */

#include "psa/task.hpp"

#include <cstdint>
#include <optional>

namespace psa {

/* Rounding with an epsilon snap toward the nearest integer. */
double floor_snapped(double x);
double ceil_snapped(double x);

double rbf(const TaskSet& ts, double t);
double rbf_star(const TaskSet& ts, double t);
double dbf(const TaskSet& ts, double t);
double dbf_star(const TaskSet& ts, double t);

/* Hyperperiod P = lcm of the periods.  Requires every period to be
 * integer-valued (within time_eps); the lcm is computed in 64-bit integers
 * and reported as overflow once it exceeds `cap` instead of saturating. */
inline constexpr std::uint64_t hyperperiod_cap_default = std::uint64_t(1) << 62;

struct Hyperperiod {
    enum class Status { ok, overflow, non_integer_period };
    Status status = Status::ok;
    std::uint64_t value = 0; // valid iff status == ok

    bool ok() const { return status == Status::ok; }
};

Hyperperiod hyperperiod(const TaskSet& ts,
                        std::uint64_t cap = hyperperiod_cap_default);

/* All absolute deadlines D_i + k * T_i <= horizon (k = 0, 1, ...) of the
 * synchronous arrival sequence, sorted and deduplicated. */
std::vector<double> deadline_checkpoints(const TaskSet& ts, double horizon);

} // namespace psa

#endif
