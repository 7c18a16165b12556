#include "psa/opa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace psa {

namespace {

/* Per-search caches keyed by the block's task-index mask; every distinct
 * block is tested (and its spare computed) at most once. */
class BlockOracle {
public:
    BlockOracle(const TaskSet& ts, TestId test) : ts_(&ts), test_(test) {
        scratch_.model = ts.model;
        if (ts.size() <= 20) {
            flat_.assign(std::size_t(1) << ts.size(), Entry::unknown);
            flat_spare_.assign(std::size_t(1) << ts.size(),
                               std::numeric_limits<double>::quiet_NaN());
        }
    }

    bool ok(std::uint64_t mask) {
        if (!flat_.empty()) {
            Entry& e = flat_[mask];
            if (e == Entry::unknown)
                e = evaluate(mask) ? Entry::pass : Entry::fail;
            return e == Entry::pass;
        }
        auto [it, inserted] = sparse_.try_emplace(mask, false);
        if (inserted)
            it->second = evaluate(mask);
        return it->second;
    }

    double spare(std::uint64_t mask) {
        if (!flat_spare_.empty()) {
            double& s = flat_spare_[mask];
            if (std::isnan(s)) {
                fill_scratch(mask);
                s = spare_capacity(test_, scratch_);
            }
            return s;
        }
        auto [it, inserted] = sparse_spare_.try_emplace(mask, 0.0);
        if (inserted) {
            fill_scratch(mask);
            it->second = spare_capacity(test_, scratch_);
        }
        return it->second;
    }

private:
    enum class Entry : std::uint8_t { unknown, pass, fail };

    void fill_scratch(std::uint64_t mask) {
        scratch_.tasks.clear();
        for (std::size_t i = 0; i < ts_->size(); ++i)
            if (mask & (std::uint64_t(1) << i))
                scratch_.tasks.push_back((*ts_)[i]);
    }

    bool evaluate(std::uint64_t mask) {
        fill_scratch(mask);
        return run_test(test_, scratch_).schedulable;
    }

    const TaskSet* ts_;
    TestId test_;
    TaskSet scratch_;
    std::vector<Entry> flat_;
    std::vector<double> flat_spare_;
    std::unordered_map<std::uint64_t, bool> sparse_;
    std::unordered_map<std::uint64_t, double> sparse_spare_;
};

Partition to_partition(const TaskSet& ts, int m, TestId test,
                       std::span<const int> block) {
    Partition p;
    p.m = m;
    p.test = test;
    p.subsets.assign(std::size_t(m), TaskSet{{}, ts.model});
    for (std::size_t i = 0; i < ts.size(); ++i)
        p.subsets[std::size_t(block[i])].tasks.push_back(ts[i]);
    return p;
}

Partition empty_partition(const TaskSet& ts, int m, TestId test) {
    Partition p;
    p.m = std::max(m, 0);
    p.test = test;
    p.subsets.assign(std::size_t(p.m), TaskSet{{}, ts.model});
    return p;
}

void require_exact(const OpaConfig& cfg) {
    if (cfg.test != TestId::edf_bhr && cfg.test != TestId::dm_abrtw)
        throw std::invalid_argument("optimal assignment requires an exact test "
                                    "(edf-bhr or dm-abrtw)");
}

/* Depth-first over restricted growth strings (element i joins one of blocks
 * 0..min(used, m-1)), pruning every branch whose just-extended block fails;
 * a completed string therefore always encodes a fully feasible partition.
 * `leaf` may return false to stop the search. */
template <typename Leaf>
void feasible_partitions(const TaskSet& ts, int m, BlockOracle& oracle,
                         Leaf&& leaf) {
    int n = int(ts.size());
    std::vector<int> block(std::size_t(n), 0);
    std::vector<std::uint64_t> masks(std::size_t(m), 0);
    auto rec = [&](auto&& self, int i, int used) -> bool {
        if (i == n)
            return leaf(std::span<const int>(block),
                        std::span<const std::uint64_t>(masks.data(), std::size_t(used)));
        int limit = std::min(used, m - 1);
        std::uint64_t bit = std::uint64_t(1) << i;
        for (int b = 0; b <= limit; ++b) {
            block[std::size_t(i)] = b;
            masks[std::size_t(b)] |= bit;
            bool keep_going = !oracle.ok(masks[std::size_t(b)]) ||
                              self(self, i + 1, b == used ? used + 1 : used);
            masks[std::size_t(b)] &= ~bit;
            if (!keep_going)
                return false;
        }
        return true;
    };
    rec(rec, 0, 0);
}

} // namespace

OpaConfig OpaConfig::for_test(TestId t) {
    return {t, t == TestId::dm_abrtw ? 16 : 14};
}

OpaOutcome opa_schedulable(const TaskSet& ts, int m, const OpaConfig& cfg) {
    return opa_search(ts, m, cfg, OpaObjective::first_witness);
}

OpaOutcome opa_search(const TaskSet& ts, int m, const OpaConfig& cfg,
                      OpaObjective objective) {
    require_exact(cfg);
    OpaOutcome out;
    out.partition = empty_partition(ts, m, cfg.test);
    if (int(ts.size()) > cfg.max_tasks) {
        out.status = OpaStatus::capped;
        return out;
    }
    if (ts.empty()) {
        out.status = OpaStatus::feasible;
        return out;
    }
    if (m <= 0)
        return out; // infeasible: tasks but no processors

    BlockOracle oracle(ts, cfg.test);
    std::vector<int> best_block;
    double best_score = 0.0;

    feasible_partitions(ts, m, oracle, [&](std::span<const int> block,
                                           std::span<const std::uint64_t> used) {
        switch (objective) {
        case OpaObjective::first_witness:
            best_block.assign(block.begin(), block.end());
            return false;
        case OpaObjective::min_processors: {
            double score = -double(used.size());
            if (best_block.empty() || score > best_score) {
                best_block.assign(block.begin(), block.end());
                best_score = score;
            }
            return true;
        }
        case OpaObjective::max_min_spare: {
            double min_spare = 1.0;
            for (std::uint64_t mask : used)
                min_spare = std::min(min_spare, oracle.spare(mask));
            if (best_block.empty() || min_spare > best_score) {
                best_block.assign(block.begin(), block.end());
                best_score = min_spare;
            }
            return true;
        }
        }
        return true;
    });

    if (!best_block.empty()) {
        out.status = OpaStatus::feasible;
        out.partition = to_partition(ts, m, cfg.test, best_block);
    }
    return out;
}

OpaMetrics opa_metrics(const TaskSet& ts, int m, const OpaConfig& cfg) {
    require_exact(cfg);
    OpaMetrics out;
    out.min_processors = empty_partition(ts, m, cfg.test);
    out.max_min_spare = out.min_processors;
    if (int(ts.size()) > cfg.max_tasks) {
        out.status = OpaStatus::capped;
        return out;
    }
    if (ts.empty()) {
        out.status = OpaStatus::feasible;
        return out;
    }
    if (m <= 0)
        return out;

    BlockOracle oracle(ts, cfg.test);
    std::vector<int> best_procs_block, best_spare_block;
    int best_procs = m + 1;
    double best_spare = -1.0;

    feasible_partitions(ts, m, oracle, [&](std::span<const int> block,
                                           std::span<const std::uint64_t> used) {
        if (int(used.size()) < best_procs) {
            best_procs = int(used.size());
            best_procs_block.assign(block.begin(), block.end());
        }
        double min_spare = 1.0;
        for (std::uint64_t mask : used)
            min_spare = std::min(min_spare, oracle.spare(mask));
        if (min_spare > best_spare) {
            best_spare = min_spare;
            best_spare_block.assign(block.begin(), block.end());
        }
        return true;
    });

    if (!best_procs_block.empty()) {
        out.status = OpaStatus::feasible;
        out.min_processors = to_partition(ts, m, cfg.test, best_procs_block);
        out.max_min_spare = to_partition(ts, m, cfg.test, best_spare_block);
    }
    return out;
}

} // namespace psa
