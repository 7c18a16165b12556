#ifndef PSA_EXPERIMENT_HPP
#define PSA_EXPERIMENT_HPP

/* Comparative experiment harness: feed a stream of generated task sets to a
 * list of assignment algorithms (heuristic x sort criterion x test, or
 * optimal search with an exact test) and summarize success ratio, processors
 * used and spare capacity per total-density bin.
 *
 * Results are reproducible: the generator seed fixes the sets, every record
 * is computed independently per (set, algorithm), and aggregation folds in
 * set-major order, so the output is byte-identical for any worker count. */

#include "psa/opa.hpp"
#include "psa/partition.hpp"
#include "psa/taskgen.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace psa {

struct AlgoSpec {
    enum class Kind { heuristic, opa };
    Kind kind = Kind::heuristic;
    TestId test = TestId::edf_ll;
    /* heuristic only */
    Heuristic heuristic = Heuristic::first_fit;
    std::optional<SortCriterion> sort;
    /* opa only */
    int opa_max_tasks = 0; // 0 = per-test default

    static AlgoSpec heur(Heuristic h, std::optional<SortCriterion> sort, TestId test);
    static AlgoSpec opa(TestId test, int max_tasks = 0);
};

/* Canonical label: HEUR:<FF|BF|WF|NF>:<criterion>:<test> or OPA:<test>. */
std::string algo_name(const AlgoSpec& a);

struct ExperimentRecord {
    std::int64_t set_index = 0;
    int n = 0;
    double total_density = 0.0;
    int algo = 0;               // index into RunConfig::algos
    bool schedulable = false;
    bool capped = false;        // opa refused by the task-count cap
    int processors_used = 0;    // partial partition on failure
    std::vector<double> spare;  // per-processor spare, successful runs only
    std::chrono::duration<double> wall_time{0};
};

struct RunConfig {
    GenConfig gen;
    std::vector<AlgoSpec> algos;
    std::size_t count = 0; // number of task sets
    int jobs = 1;
};

/* Records arrive in (set_index, algo) order regardless of jobs. */
void run_matrix_streamed(const RunConfig& cfg,
                         const std::function<void(const ExperimentRecord&)>& sink);
std::vector<ExperimentRecord> run_matrix(const RunConfig& cfg);

/* Relative success-ratio gap (p2 - p1) / p2 in percent; absent when p2 == 0,
 * invalid_argument when p1 > p2. */
std::optional<double> suboptimality_degree(double p1, double p2);

/* Half-open density bins [k*w, (k+1)*w). */
struct DensityBin {
    double lo = 0.0, hi = 0.0;
};
int bin_index(double density, double bin_width);

struct AlgoBinStats {
    std::int64_t samples = 0;   // records that fell in the bin
    std::int64_t successes = 0;
    std::int64_t capped = 0;    // opa cap refusals, excluded from the ratio
    double procs_sum = 0.0;     // over successful records
    double spare_sum = 0.0;     // mean per-record spare, over successful records

    double success_ratio() const {
        std::int64_t decided = samples - capped;
        return decided > 0 ? double(successes) / double(decided) : 0.0;
    }
};

struct BinnedSummary {
    DensityBin bin;
    std::vector<AlgoBinStats> per_algo; // aligned with RunConfig::algos
};

/* Streaming density binner; records of one set arrive contiguously, which
 * lets the any-criterion aggregate be formed per set. */
class BinAccumulator {
public:
    BinAccumulator(const RunConfig& cfg, double bin_width);
    void add(const ExperimentRecord& rec);
    std::vector<BinnedSummary> finish();

    /* Aggregates across the sort criteria of one (heuristic, test) group:
     * extra pseudo-algorithms named with criterion token "mean" (pooled
     * per-criterion stats) and "any" (success iff any criterion succeeded). */
    struct AggGroup {
        std::string name; // e.g. HEUR:FF:any:edf-ll
        std::vector<AlgoBinStats> bins;
    };
    std::vector<AggGroup> finish_aggregates();

private:
    void flush_set();

    /* Per-set fold for the any-criterion aggregate: first success wins. */
    struct GroupFold {
        bool success = false;
        double procs = 0.0;
        double spare = 0.0;
    };

    const RunConfig* cfg_;
    double bin_width_;
    std::vector<std::vector<AlgoBinStats>> bins_; // [bin][algo]
    std::vector<std::vector<int>> groups_; // algo indices per (heur, test) group
    std::vector<std::string> group_names_;
    std::vector<std::vector<AlgoBinStats>> any_bins_; // [bin][group]
    std::vector<int> group_of_algo_; // -1 when ungrouped
    std::int64_t current_set_ = -1;
    int current_bin_ = 0;
    std::vector<GroupFold> folds_;
};

std::vector<BinnedSummary> bin_by_density(std::span<const ExperimentRecord> records,
                                          const RunConfig& cfg, double bin_width);

double success_ratio(std::span<const ExperimentRecord> records, int algo,
                     double density_lo, double density_hi);

/* CSV schema:
 *   bin_lo,bin_hi,algo,deadline_model,distribution,samples,success_ratio,mean_procs,mean_spare
 * Rows sorted by bin then algo label; mean columns are empty when a bin has
 * no successful run.  agg = none | mean | any | both appends the aggregate
 * pseudo-rows produced by BinAccumulator. */
enum class AggMode { none, mean, any, both };
const char* to_string(AggMode m);
std::optional<AggMode> parse_agg_mode(std::string_view s);

void write_csv(std::ostream& out, const RunConfig& cfg, double bin_width,
               const std::vector<BinnedSummary>& summaries,
               const std::vector<BinAccumulator::AggGroup>& aggregates);

/* End-to-end: generate, evaluate, bin and write. */
void run_experiment_csv(const RunConfig& cfg, double bin_width, AggMode agg,
                        std::ostream& out);

} // namespace psa

#endif
