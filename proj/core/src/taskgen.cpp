#include "psa/taskgen.hpp"

#include <algorithm>
#include <cmath>

namespace psa {

const char* to_string(Distribution d) {
    switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::bimodal: return "bimodal";
    case Distribution::exp025: return "exp025";
    case Distribution::exp050: return "exp050";
    }
    return "";
}

std::optional<Distribution> parse_distribution(std::string_view s) {
    if (s == "uniform") return Distribution::uniform;
    if (s == "bimodal") return Distribution::bimodal;
    if (s == "exp025") return Distribution::exp025;
    if (s == "exp050") return Distribution::exp050;
    return std::nullopt;
}

int draw_k(Rng& rng) { return int(rng.uniform_int(1, 100)); }

double draw_rho(Rng& rng, Distribution d, int k, RhoDraw* detail) {
    double raw = 0.0;
    bool heavy = false;
    switch (d) {
    case Distribution::uniform:
        raw = rng.uniform(1.0 / k, 1.0);
        break;
    case Distribution::bimodal: {
        heavy = rng.uniform01() < 1.0 / 3.0;
        if (heavy) {
            raw = rng.uniform(0.5, 1.0);
        } else {
            double lo = 1.0 / k;
            /* k = 1 degenerates the light range [1/k, 0.5]; the draw
             * collapses to the lower bound (and then truncates). */
            raw = lo >= 0.5 ? lo : rng.uniform(lo, 0.5);
        }
        break;
    }
    case Distribution::exp025:
        raw = rng.exponential(0.25);
        break;
    case Distribution::exp050:
        raw = rng.exponential(0.50);
        break;
    }
    if (detail)
        *detail = {raw, heavy};
    return std::clamp(raw, rho_min, rho_max);
}

Task gen_task(Rng& rng, const GenConfig& cfg, int id) {
    int k = draw_k(rng);
    double rho = draw_rho(rng, cfg.distribution, k);
    Task t;
    t.id = id;
    if (cfg.deadline_model == DeadlineModel::implicit) {
        t.period = double(k);
        t.deadline = double(k);
        t.wcet = rho * t.period;
    } else {
        t.deadline = double(k);
        t.wcet = rho * t.deadline;
        t.period = double(rng.uniform_int(k, 100));
    }
    return t;
}

std::vector<TaskSet> gen_chain(const GenConfig& cfg, std::uint64_t chain_index) {
    Rng rng = Rng::substream(cfg.seed, chain_index);
    std::vector<TaskSet> out;
    TaskSet current;
    current.model = cfg.deadline_model;

    for (int i = 0; i < cfg.m + 1; ++i)
        current.tasks.push_back(gen_task(rng, cfg, i + 1));

    double m = double(cfg.m);
    while (current.total_density() <= m + time_eps) {
        bool obviously_infeasible = current.total_utilization() > m + time_eps;
        bool trivially_schedulable =
            int(current.size()) == cfg.m &&
            std::all_of(current.begin(), current.end(), [](const Task& t) {
                return t.density() <= 1.0 + time_eps;
            });
        if (!obviously_infeasible && !trivially_schedulable)
            out.push_back(current);
        current.tasks.push_back(gen_task(rng, cfg, int(current.size()) + 1));
    }
    return out;
}

TaskSet TaskSetSource::next() {
    while (pos_ >= buffer_.size()) {
        buffer_ = gen_chain(cfg_, chain_++);
        pos_ = 0;
    }
    return buffer_[pos_++];
}

std::vector<TaskSet> generate_sets(const GenConfig& cfg, std::size_t count) {
    TaskSetSource source(cfg);
    std::vector<TaskSet> out;
    out.reserve(count);
    while (out.size() < count)
        out.push_back(source.next());
    return out;
}

} // namespace psa
