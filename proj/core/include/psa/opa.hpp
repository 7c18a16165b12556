#ifndef PSA_OPA_HPP
#define PSA_OPA_HPP

/* Optimal partitioned assignment by exhaustive search.  Processors are
 * identical, so assignments are enumerated as set partitions of the task
 * index set into at most m unlabeled blocks (restricted growth strings);
 * the number of partitions visited is sum_{k=1..m} S(n, k), Stirling numbers
 * of the second kind.  The search tests each block with an exact
 * uniprocessor test and prunes every branch whose last-extended block
 * already fails; block verdicts are memoized per task-index mask.
 *
 * The task-count cap bounds enumeration cost; exceeding it yields an
 * explicit `capped` status, never a guessed verdict. */

#include "psa/partition.hpp"

#include <functional>
#include <span>

namespace psa {

struct OpaConfig {
    TestId test = TestId::edf_bhr; // must be an exact test: edf_bhr or dm_abrtw
    int max_tasks = 14;

    static OpaConfig for_test(TestId t); // default cap: 14 edf_bhr, 16 dm_abrtw
};

enum class OpaStatus { feasible, infeasible, capped };

struct OpaOutcome {
    OpaStatus status = OpaStatus::infeasible;
    Partition partition; // witness when feasible, empty subsets otherwise
};

/* Visit every set partition of {0..n-1} into at most m blocks, in restricted
 * growth string order; `visit` receives block[i] for each element i and may
 * return false to stop early. */
template <typename Visitor>
void enumerate_partitions(int n, int m, Visitor&& visit);

/* First feasible partition in enumeration order, if any. */
OpaOutcome opa_schedulable(const TaskSet& ts, int m, const OpaConfig& cfg);

/* Search continuing past the first witness to optimize a secondary
 * objective over all feasible partitions. */
enum class OpaObjective { first_witness, min_processors, max_min_spare };
OpaOutcome opa_search(const TaskSet& ts, int m, const OpaConfig& cfg,
                      OpaObjective objective);

/* Single full enumeration gathering both metric witnesses: the feasible
 * partition on the fewest processors and the one maximizing the minimum
 * per-processor spare (ties in enumeration order). */
struct OpaMetrics {
    OpaStatus status = OpaStatus::infeasible;
    Partition min_processors;
    Partition max_min_spare;
};
OpaMetrics opa_metrics(const TaskSet& ts, int m, const OpaConfig& cfg);

/* --- implementation --- */

template <typename Visitor>
void enumerate_partitions(int n, int m, Visitor&& visit) {
    if (n <= 0 || m <= 0)
        return;
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    /* Depth-first over restricted growth strings: element i may join blocks
     * 0 .. min(max_used_so_far + 1, m - 1). */
    auto rec = [&](auto&& self, int i, int used) -> bool {
        if (i == n)
            return visit(std::span<const int>(block));
        int limit = std::min(used, m - 1);
        for (int b = 0; b <= limit; ++b) {
            block[static_cast<std::size_t>(i)] = b;
            if (!self(self, i + 1, b == used ? used + 1 : used))
                return false;
        }
        return true;
    };
    rec(rec, 0, 0);
}

} // namespace psa

#endif
