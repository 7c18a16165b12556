#ifndef PSA_TASKGEN_HPP
#define PSA_TASKGEN_HPP

/* Random task-set generation for an m-processor platform.
 *
 * Each task draws an integer k uniform on {1..100} and a ratio rho in one of
 * four distributions, truncated to [0.001, 0.999]:
 *
 *   uniform   uniform on [1/k, 1]
 *   bimodal   heavy with probability 1/3: uniform on [0.5, 1];
 *             light otherwise: uniform on [1/k, 0.5]
 *   exp025    exponential, mean 0.25
 *   exp050    exponential, mean 0.50
 *
 * Implicit model:     (T, u) = (k, rho), C = u*T, D = T.
 * Constrained model:  (D, lambda) = (k, rho), C = lambda*D,
 *                     T integer uniform on {D..100}.
 *
 * Sets are produced in growth chains: a chain starts with m+1 tasks and
 * appends one task per step, emitting each set whose total density is at
 * most m and ending at the first set that exceeds m (that set is dropped).
 * Obviously infeasible sets (U > m) and trivially schedulable ones (n == m
 * with every per-task density <= 1) are skipped; with the m+1-task start the
 * trivial filter cannot fire, it is kept for fidelity with the procedure.
 *
 * Randomness comes from SplitMix64, a seedable, splittable 64-bit generator;
 * chain c of a run seeded s draws from the independent sub-stream
 * mix(s, c), so chains can be produced in parallel and in any order while
 * reproducing the serial output exactly. */

#include "psa/task.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

namespace psa {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /* Independent sub-stream: one generator step keyed by the index. */
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0x2545f4914f6cdd1dull * (index + 1)));
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(SplitMix64::substream(seed, index));
    }

    std::uint64_t next_u64() { return gen_.next(); }
    /* Uniform on [0, 1) with 53 random bits. */
    double uniform01() { return double(gen_.next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }
    /* Inclusive integer range; span is tiny (< 2^7) so modulo bias is nil. */
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(gen_.next() % std::uint64_t(hi - lo + 1));
    }
    double exponential(double mean) { return -mean * std::log(1.0 - uniform01()); }

private:
    explicit Rng(SplitMix64 gen) : gen_(gen) {}
    SplitMix64 gen_;
};

enum class Distribution { uniform, bimodal, exp025, exp050 };

const char* to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view s);

struct GenConfig {
    DeadlineModel deadline_model = DeadlineModel::implicit;
    Distribution distribution = Distribution::uniform;
    int m = 4;
    std::uint64_t seed = 0;
};

inline constexpr double rho_min = 0.001;
inline constexpr double rho_max = 0.999;

int draw_k(Rng& rng); // uniform {1..100}

struct RhoDraw {
    double raw = 0.0; // pre-truncation value
    bool heavy = false; // bimodal branch taken
};
double draw_rho(Rng& rng, Distribution d, int k, RhoDraw* detail = nullptr);

Task gen_task(Rng& rng, const GenConfig& cfg, int id);

/* One growth chain; usually a handful of sets, possibly none when the
 * initial m+1 tasks already exceed density m. */
std::vector<TaskSet> gen_chain(const GenConfig& cfg, std::uint64_t chain_index);

/* Chain-major stream over chains 0, 1, 2, ... */
class TaskSetSource {
public:
    explicit TaskSetSource(const GenConfig& cfg) : cfg_(cfg) {}
    TaskSet next(); // never exhausts

private:
    GenConfig cfg_;
    std::uint64_t chain_ = 0;
    std::vector<TaskSet> buffer_;
    std::size_t pos_ = 0;
};

std::vector<TaskSet> generate_sets(const GenConfig& cfg, std::size_t count);

} // namespace psa

#endif
