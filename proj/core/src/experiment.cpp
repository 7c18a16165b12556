#include "psa/experiment.hpp"

#include "psa/taskset_io.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <ostream>
#include <thread>

namespace psa {

namespace {

std::string upper(std::string s) {
    for (char& c : s)
        c = char(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

double clamp_unit(double x) {
    return std::clamp(x, 0.0, 1.0);
}

ExperimentRecord evaluate(const TaskSet& ts, std::int64_t set_index,
                          const AlgoSpec& algo, int algo_index, int m) {
    ExperimentRecord rec;
    rec.set_index = set_index;
    rec.n = int(ts.size());
    rec.total_density = ts.total_density();
    rec.algo = algo_index;

    auto started = std::chrono::steady_clock::now();
    if (algo.kind == AlgoSpec::Kind::heuristic) {
        AssignOutcome outcome = assign(ts, m, algo.heuristic, algo.test, algo.sort);
        rec.schedulable = outcome.success;
        rec.processors_used = processors_used(outcome.partition);
        if (outcome.success) {
            rec.spare.reserve(outcome.partition.subsets.size());
            for (const TaskSet& s : outcome.partition.subsets)
                rec.spare.push_back(clamp_unit(spare_capacity(algo.test, s)));
        }
    } else {
        OpaConfig cfg = OpaConfig::for_test(algo.test);
        if (algo.opa_max_tasks > 0)
            cfg.max_tasks = algo.opa_max_tasks;
        OpaMetrics metrics = opa_metrics(ts, m, cfg);
        rec.capped = metrics.status == OpaStatus::capped;
        rec.schedulable = metrics.status == OpaStatus::feasible;
        if (rec.schedulable) {
            rec.processors_used = processors_used(metrics.min_processors);
            rec.spare.reserve(metrics.max_min_spare.subsets.size());
            for (const TaskSet& s : metrics.max_min_spare.subsets)
                rec.spare.push_back(clamp_unit(spare_capacity(algo.test, s)));
        }
    }
    rec.wall_time = std::chrono::steady_clock::now() - started;
    return rec;
}

double record_mean_spare(const ExperimentRecord& rec) {
    if (rec.spare.empty())
        return 0.0;
    double sum = 0.0;
    for (double s : rec.spare)
        sum += s;
    return sum / double(rec.spare.size());
}

void format_ratio(std::ostream& out, double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    out << buf;
}

} // namespace

AlgoSpec AlgoSpec::heur(Heuristic h, std::optional<SortCriterion> sort, TestId test) {
    AlgoSpec a;
    a.kind = Kind::heuristic;
    a.heuristic = h;
    a.sort = sort;
    a.test = test;
    return a;
}

AlgoSpec AlgoSpec::opa(TestId test, int max_tasks) {
    AlgoSpec a;
    a.kind = Kind::opa;
    a.test = test;
    a.opa_max_tasks = max_tasks;
    return a;
}

std::string algo_name(const AlgoSpec& a) {
    if (a.kind == AlgoSpec::Kind::opa)
        return std::string("OPA:") + test_info(a.test).name;
    std::string crit = a.sort ? to_string(*a.sort) : "none";
    return "HEUR:" + upper(to_string(a.heuristic)) + ":" + crit + ":" +
           test_info(a.test).name;
}

void run_matrix_streamed(const RunConfig& cfg,
                         const std::function<void(const ExperimentRecord&)>& sink) {
    if (cfg.algos.empty())
        throw std::invalid_argument("experiment needs at least one algorithm");
    for (const AlgoSpec& a : cfg.algos)
        if (!accepts(a.test, cfg.gen.deadline_model))
            throw std::invalid_argument(algo_name(a) + " does not accept " +
                                        std::string(to_string(cfg.gen.deadline_model)) +
                                        "-deadline task sets");

    std::vector<TaskSet> sets = generate_sets(cfg.gen, cfg.count);
    int jobs = std::max(1, cfg.jobs);

    if (jobs == 1) {
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t a = 0; a < cfg.algos.size(); ++a)
                sink(evaluate(sets[i], std::int64_t(i), cfg.algos[a], int(a),
                              cfg.gen.m));
        return;
    }

    /* Workers fill disjoint per-set slots of a block; the block is then
     * drained in set order, keeping the stream independent of jobs. */
    const std::size_t block = 1024;
    std::vector<std::vector<ExperimentRecord>> slot(std::min(block, sets.size()));
    for (std::size_t lo = 0; lo < sets.size(); lo += block) {
        std::size_t hi = std::min(lo + block, sets.size());
        std::atomic<std::size_t> cursor{lo};
        auto work = [&]() {
            for (std::size_t i; (i = cursor.fetch_add(1)) < hi;) {
                std::vector<ExperimentRecord>& out = slot[i - lo];
                out.clear();
                out.reserve(cfg.algos.size());
                for (std::size_t a = 0; a < cfg.algos.size(); ++a)
                    out.push_back(evaluate(sets[i], std::int64_t(i), cfg.algos[a],
                                           int(a), cfg.gen.m));
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back(work);
        for (std::thread& t : pool)
            t.join();
        for (std::size_t i = lo; i < hi; ++i)
            for (const ExperimentRecord& rec : slot[i - lo])
                sink(rec);
    }
}

std::vector<ExperimentRecord> run_matrix(const RunConfig& cfg) {
    std::vector<ExperimentRecord> records;
    records.reserve(cfg.count * cfg.algos.size());
    run_matrix_streamed(cfg, [&](const ExperimentRecord& r) { records.push_back(r); });
    return records;
}

std::optional<double> suboptimality_degree(double p1, double p2) {
    if (p1 > p2)
        throw std::invalid_argument("suboptimality degree needs p1 <= p2");
    if (p2 <= 0.0)
        return std::nullopt;
    return (p2 - p1) / p2 * 100.0;
}

int bin_index(double density, double bin_width) {
    return int(std::floor(density / bin_width));
}

BinAccumulator::BinAccumulator(const RunConfig& cfg, double bin_width)
    : cfg_(&cfg), bin_width_(bin_width) {
    /* Group the sorted-heuristic algos by (heuristic, test) for the
     * cross-criterion aggregates. */
    group_of_algo_.assign(cfg.algos.size(), -1);
    for (std::size_t a = 0; a < cfg.algos.size(); ++a) {
        const AlgoSpec& spec = cfg.algos[a];
        if (spec.kind != AlgoSpec::Kind::heuristic || !spec.sort)
            continue;
        std::string stem = "HEUR:" + upper(to_string(spec.heuristic)) + ":";
        std::string tail = std::string(":") + test_info(spec.test).name;
        std::string name_any = stem + "any" + tail;
        auto it = std::find(group_names_.begin(), group_names_.end(), name_any);
        std::size_t g;
        if (it == group_names_.end()) {
            g = group_names_.size();
            group_names_.push_back(name_any);
            groups_.emplace_back();
        } else {
            g = std::size_t(it - group_names_.begin());
        }
        groups_[g].push_back(int(a));
        group_of_algo_[a] = int(g);
    }
    folds_.assign(groups_.size(), {});
}

void BinAccumulator::flush_set() {
    if (current_set_ < 0)
        return;
    if (std::size_t(current_bin_) >= any_bins_.size())
        any_bins_.resize(std::size_t(current_bin_) + 1,
                         std::vector<AlgoBinStats>(groups_.size()));
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        AlgoBinStats& stats = any_bins_[std::size_t(current_bin_)][g];
        ++stats.samples;
        if (folds_[g].success) {
            ++stats.successes;
            stats.procs_sum += folds_[g].procs;
            stats.spare_sum += folds_[g].spare;
        }
        folds_[g] = {};
    }
}

void BinAccumulator::add(const ExperimentRecord& rec) {
    if (rec.set_index != current_set_) {
        flush_set();
        current_set_ = rec.set_index;
        current_bin_ = bin_index(rec.total_density, bin_width_);
    }
    if (std::size_t(current_bin_) >= bins_.size())
        bins_.resize(std::size_t(current_bin_) + 1,
                     std::vector<AlgoBinStats>(cfg_->algos.size()));
    AlgoBinStats& stats = bins_[std::size_t(current_bin_)][std::size_t(rec.algo)];
    ++stats.samples;
    if (rec.capped) {
        ++stats.capped;
    } else if (rec.schedulable) {
        ++stats.successes;
        stats.procs_sum += double(rec.processors_used);
        stats.spare_sum += record_mean_spare(rec);
    }
    int g = group_of_algo_[std::size_t(rec.algo)];
    if (g >= 0 && rec.schedulable && !folds_[std::size_t(g)].success)
        folds_[std::size_t(g)] = {true, double(rec.processors_used),
                                  record_mean_spare(rec)};
}

std::vector<BinnedSummary> BinAccumulator::finish() {
    flush_set();
    current_set_ = -1;
    std::vector<BinnedSummary> out;
    for (std::size_t b = 0; b < bins_.size(); ++b) {
        bool empty = std::all_of(bins_[b].begin(), bins_[b].end(),
                                 [](const AlgoBinStats& s) { return s.samples == 0; });
        if (empty)
            continue;
        BinnedSummary summary;
        summary.bin = {double(b) * bin_width_, double(b + 1) * bin_width_};
        summary.per_algo = bins_[b];
        out.push_back(std::move(summary));
    }
    return out;
}

std::vector<BinAccumulator::AggGroup> BinAccumulator::finish_aggregates() {
    std::vector<AggGroup> out;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (groups_[g].size() < 2)
            continue;
        /* mean = pooled per-criterion stats (every criterion sees the same
         * sets, so pooling equals the mean of per-criterion ratios). */
        AggGroup mean;
        mean.name = group_names_[g];
        mean.name.replace(mean.name.find(":any:"), 5, ":mean:");
        mean.bins.resize(bins_.size());
        for (std::size_t b = 0; b < bins_.size(); ++b)
            for (int a : groups_[g]) {
                const AlgoBinStats& s = bins_[b][std::size_t(a)];
                AlgoBinStats& dst = mean.bins[b];
                dst.samples += s.samples;
                dst.successes += s.successes;
                dst.capped += s.capped;
                dst.procs_sum += s.procs_sum;
                dst.spare_sum += s.spare_sum;
            }
        out.push_back(std::move(mean));

        AggGroup any;
        any.name = group_names_[g];
        any.bins.resize(bins_.size());
        for (std::size_t b = 0; b < any_bins_.size() && b < bins_.size(); ++b)
            any.bins[b] = any_bins_[b][g];
        out.push_back(std::move(any));
    }
    return out;
}

std::vector<BinnedSummary> bin_by_density(std::span<const ExperimentRecord> records,
                                          const RunConfig& cfg, double bin_width) {
    BinAccumulator acc(cfg, bin_width);
    for (const ExperimentRecord& rec : records)
        acc.add(rec);
    return acc.finish();
}

double success_ratio(std::span<const ExperimentRecord> records, int algo,
                     double density_lo, double density_hi) {
    std::int64_t decided = 0, successes = 0;
    for (const ExperimentRecord& rec : records) {
        if (rec.algo != algo || rec.capped)
            continue;
        if (rec.total_density < density_lo || rec.total_density >= density_hi)
            continue;
        ++decided;
        if (rec.schedulable)
            ++successes;
    }
    return decided > 0 ? double(successes) / double(decided) : 0.0;
}

const char* to_string(AggMode m) {
    switch (m) {
    case AggMode::none: return "none";
    case AggMode::mean: return "mean";
    case AggMode::any: return "any";
    case AggMode::both: return "both";
    }
    return "";
}

std::optional<AggMode> parse_agg_mode(std::string_view s) {
    if (s == "none") return AggMode::none;
    if (s == "mean") return AggMode::mean;
    if (s == "any") return AggMode::any;
    if (s == "both") return AggMode::both;
    return std::nullopt;
}

void write_csv(std::ostream& out, const RunConfig& cfg, double bin_width,
               const std::vector<BinnedSummary>& summaries,
               const std::vector<BinAccumulator::AggGroup>& aggregates) {
    out << "bin_lo,bin_hi,algo,deadline_model,distribution,samples,"
           "success_ratio,mean_procs,mean_spare\n";
    const char* model = to_string(cfg.gen.deadline_model);
    const char* dist = to_string(cfg.gen.distribution);

    struct Row {
        std::string algo;
        const AlgoBinStats* stats;
    };
    for (const BinnedSummary& summary : summaries) {
        std::vector<Row> rows;
        rows.reserve(summary.per_algo.size() + aggregates.size());
        for (std::size_t a = 0; a < summary.per_algo.size(); ++a)
            rows.push_back({algo_name(cfg.algos[a]), &summary.per_algo[a]});
        int b = bin_index((summary.bin.lo + summary.bin.hi) / 2.0, bin_width);
        for (const auto& agg : aggregates)
            if (std::size_t(b) < agg.bins.size() && agg.bins[std::size_t(b)].samples > 0)
                rows.push_back({agg.name, &agg.bins[std::size_t(b)]});
        std::sort(rows.begin(), rows.end(),
                  [](const Row& x, const Row& y) { return x.algo < y.algo; });

        for (const Row& row : rows) {
            format_ratio(out, summary.bin.lo);
            out << ',';
            format_ratio(out, summary.bin.hi);
            out << ',' << row.algo << ',' << model << ',' << dist << ','
                << row.stats->samples << ',';
            format_ratio(out, row.stats->success_ratio());
            out << ',';
            if (row.stats->successes > 0) {
                format_ratio(out, row.stats->procs_sum / double(row.stats->successes));
                out << ',';
                format_ratio(out, row.stats->spare_sum / double(row.stats->successes));
            } else {
                out << ',';
            }
            out << '\n';
        }
    }
}

void run_experiment_csv(const RunConfig& cfg, double bin_width, AggMode agg,
                        std::ostream& out) {
    BinAccumulator acc(cfg, bin_width);
    run_matrix_streamed(cfg, [&](const ExperimentRecord& rec) { acc.add(rec); });
    std::vector<BinnedSummary> summaries = acc.finish();
    std::vector<BinAccumulator::AggGroup> aggregates;
    if (agg != AggMode::none) {
        for (auto& group : acc.finish_aggregates()) {
            bool is_any = group.name.find(":any:") != std::string::npos;
            if (agg == AggMode::both || (agg == AggMode::any) == is_any)
                aggregates.push_back(std::move(group));
        }
    }
    write_csv(out, cfg, bin_width, summaries, aggregates);
}

} // namespace psa
