/* psa: generate sporadic task sets, run uniprocessor schedulability tests,
 * partition task sets onto identical processors and drive the comparative
 * experiment harness.
 *
 * Exit codes: 0 positive verdict / success, 1 negative verdict or failed
 * placement, 2 usage or contract errors (bad flags, malformed files,
 * incompatible test, exceeded search cap). */

#include "CLI11.hpp"

#include "psa/experiment.hpp"
#include "psa/opa.hpp"
#include "psa/partition.hpp"
#include "psa/sched_tests.hpp"
#include "psa/taskgen.hpp"
#include "psa/taskset_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return exit_error;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class Int>
bool parse_number(const std::string& s, Int& out) {
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && p == end;
}

bool parse_number(const std::string& s, double& out) {
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && p == end;
}

psa::ParseResult load_set_or_fail(const std::string& path) {
    psa::ParseResult parsed = psa::read_task_set_file(path);
    if (!parsed.ok)
        std::cerr << "error: " << path << ": " << parsed.error << "\n";
    return parsed;
}

void print_verdict(const psa::Verdict& v) {
    if (v.schedulable) {
        std::cout << "schedulable\n";
        return;
    }
    std::cout << "not schedulable";
    if (v.violating_task)
        std::cout << " (task " << *v.violating_task << ")";
    if (v.violating_time)
        std::cout << " (t = " << psa::format_time(*v.violating_time) << ")";
    std::cout << "\n";
}

void print_partition(const psa::Partition& p) {
    for (std::size_t j = 0; j < p.subsets.size(); ++j) {
        std::cout << "processor " << j + 1 << ":";
        for (const psa::Task& t : p.subsets[j])
            std::cout << ' ' << t.id;
        std::cout << "  (spare " << psa::format_time(psa::spare_capacity(p.test, p.subsets[j]))
                  << ")\n";
    }
}

struct GenFlags {
    std::uint64_t seed = 0;
    std::string dist = "uniform";
    std::string deadline = "implicit";
    int m = 4;

    bool fill(psa::GenConfig& cfg) const {
        cfg.seed = seed;
        cfg.m = m;
        auto d = psa::parse_distribution(dist);
        if (!d)
            return false;
        cfg.distribution = *d;
        return psa::parse_deadline_model(deadline, cfg.deadline_model);
    }
};

void add_gen_flags(CLI::App* cmd, GenFlags& flags, bool seed_required) {
    auto* seed = cmd->add_option("--seed", flags.seed, "Generator seed");
    if (seed_required)
        seed->required();
    cmd->add_option("--dist", flags.dist,
                    "Distribution: uniform|bimodal|exp025|exp050")
        ->capture_default_str();
    cmd->add_option("--deadline", flags.deadline,
                    "Deadline model: implicit|constrained")
        ->capture_default_str();
    cmd->add_option("--m", flags.m, "Number of processors")->capture_default_str();
}

int run_generate(const GenFlags& flags, std::size_t count, const std::string& out_dir) {
    psa::GenConfig cfg;
    if (!flags.fill(cfg))
        return fail_usage("unknown distribution or deadline model");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        return fail_usage("cannot create " + out_dir + ": " + ec.message());

    psa::TaskSetSource source(cfg);
    for (std::size_t i = 0; i < count; ++i) {
        psa::TaskSet ts = source.next();
        char name[32];
        std::snprintf(name, sizeof name, "set_%05zu.txt", i);
        std::string path = out_dir + "/" + name;
        if (!psa::write_task_set_file(path, ts, cfg.m))
            return fail_usage("cannot write " + path);
    }
    std::ofstream manifest(out_dir + "/manifest.txt");
    manifest << psa::manifest_line(cfg, count) << "\n";
    if (!manifest)
        return fail_usage("cannot write manifest");
    std::cout << "wrote " << count << " task sets to " << out_dir << "\n";
    return exit_ok;
}

int run_check(const std::string& test_name, const std::string& path) {
    auto test = psa::parse_test(test_name);
    if (!test)
        return fail_usage("unknown test `" + test_name + "`");
    psa::ParseResult parsed = load_set_or_fail(path);
    if (!parsed.ok)
        return exit_error;
    psa::Verdict v = psa::run_test(*test, parsed.set);
    print_verdict(v);
    return v.schedulable ? exit_ok : exit_negative;
}

int run_partition(const std::string& heur_name, const std::string& sort_name,
                  const std::string& test_name, int m, const std::string& path) {
    auto heur = psa::parse_heuristic(heur_name);
    if (!heur)
        return fail_usage("unknown heuristic `" + heur_name + "`");
    auto test = psa::parse_test(test_name);
    if (!test)
        return fail_usage("unknown test `" + test_name + "`");
    std::optional<psa::SortCriterion> sort;
    if (sort_name != "none") {
        sort = psa::parse_sort_criterion(sort_name);
        if (!sort)
            return fail_usage("unknown sort criterion `" + sort_name + "`");
    }
    psa::ParseResult parsed = load_set_or_fail(path);
    if (!parsed.ok)
        return exit_error;
    if (m <= 0)
        m = parsed.m;
    if (m <= 0)
        return fail_usage("no processor count: pass --m or set it in the file header");

    psa::AssignOutcome outcome = psa::assign(parsed.set, m, *heur, *test, sort);
    print_partition(outcome.partition);
    if (!outcome.success) {
        std::cout << "unplaceable task " << *outcome.failed_task << "\n";
        return exit_negative;
    }
    return exit_ok;
}

int run_opa(const std::string& test_name, int m, int max_tasks,
            const std::string& path) {
    auto test = psa::parse_test(test_name);
    if (!test)
        return fail_usage("unknown test `" + test_name + "`");
    psa::ParseResult parsed = load_set_or_fail(path);
    if (!parsed.ok)
        return exit_error;
    if (m <= 0)
        m = parsed.m;
    if (m <= 0)
        return fail_usage("no processor count: pass --m or set it in the file header");

    psa::OpaConfig cfg = psa::OpaConfig::for_test(*test);
    if (max_tasks > 0)
        cfg.max_tasks = max_tasks;
    psa::OpaOutcome outcome = psa::opa_schedulable(parsed.set, m, cfg);
    switch (outcome.status) {
    case psa::OpaStatus::feasible:
        std::cout << "feasible\n";
        print_partition(outcome.partition);
        return exit_ok;
    case psa::OpaStatus::infeasible:
        std::cout << "infeasible\n";
        return exit_negative;
    case psa::OpaStatus::capped:
        return fail_usage("set has " + std::to_string(parsed.set.size()) +
                          " tasks, above the enumeration cap of " +
                          std::to_string(cfg.max_tasks) + "; not searched");
    }
    return exit_error;
}

struct ExperimentFlags {
    GenFlags gen;
    std::size_t count = 1000;
    double bin_width = 0.0; // 0 = 0.1 * m
    std::string heuristics = "ff,bf,wf,nf";
    std::string sorts = "id,dd,il,dl,ip,dp,iu,du";
    std::string tests; // empty = all compatible
    std::string opa = "none";
    int opa_max_tasks = 0;
    std::string agg = "mean";
    std::string out = "-";
    int jobs = 1;
};

/* Applies `key = value` lines onto flags; keys mirror the long flags and a
 * flag given on the command line wins over the file. Returns an error
 * message, or empty on success. Sets has_seed if the file provides one. */
std::string merge_config(const std::string& path, const CLI::App& cmd,
                         ExperimentFlags& flags, bool& has_seed) {
    std::ifstream in(path);
    if (!in)
        return "cannot open " + path;
    auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (std::size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line = trim(line); line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            return path + " line " + std::to_string(lineno) + ": expected key = value";
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        bool ok = true;
        if (key == "seed") {
            has_seed = true;
            if (!given("--seed"))
                ok = parse_number(val, flags.gen.seed);
        } else if (key == "dist") {
            if (!given("--dist"))
                flags.gen.dist = val;
        } else if (key == "deadline") {
            if (!given("--deadline"))
                flags.gen.deadline = val;
        } else if (key == "m") {
            if (!given("--m"))
                ok = parse_number(val, flags.gen.m);
        } else if (key == "count") {
            if (!given("--count"))
                ok = parse_number(val, flags.count);
        } else if (key == "bin-width") {
            if (!given("--bin-width"))
                ok = parse_number(val, flags.bin_width);
        } else if (key == "heuristics") {
            if (!given("--heuristics"))
                flags.heuristics = val;
        } else if (key == "sorts") {
            if (!given("--sorts"))
                flags.sorts = val;
        } else if (key == "tests") {
            if (!given("--tests"))
                flags.tests = val;
        } else if (key == "opa") {
            if (!given("--opa"))
                flags.opa = val;
        } else if (key == "opa-max-tasks") {
            if (!given("--opa-max-tasks"))
                ok = parse_number(val, flags.opa_max_tasks);
        } else if (key == "agg") {
            if (!given("--agg"))
                flags.agg = val;
        } else if (key == "out") {
            if (!given("--out"))
                flags.out = val;
        } else if (key == "jobs") {
            if (!given("--jobs"))
                ok = parse_number(val, flags.jobs);
        } else {
            return path + " line " + std::to_string(lineno) + ": unknown key `" + key + "`";
        }
        if (!ok)
            return path + " line " + std::to_string(lineno) + ": bad value for `" + key + "`";
    }
    return "";
}

int run_experiment(const ExperimentFlags& flags) {
    psa::RunConfig cfg;
    if (!flags.gen.fill(cfg.gen))
        return fail_usage("unknown distribution or deadline model");
    cfg.count = flags.count;
    cfg.jobs = flags.jobs;

    std::vector<psa::TestId> tests;
    if (flags.tests.empty()) {
        for (const psa::TestInfo& info : psa::all_tests())
            if (psa::accepts(info.id, cfg.gen.deadline_model))
                tests.push_back(info.id);
    } else {
        for (const std::string& name : split_list(flags.tests)) {
            auto t = psa::parse_test(name);
            if (!t)
                return fail_usage("unknown test `" + name + "`");
            tests.push_back(*t);
        }
    }

    std::vector<psa::Heuristic> heuristics;
    for (const std::string& name : split_list(flags.heuristics)) {
        auto h = psa::parse_heuristic(name);
        if (!h)
            return fail_usage("unknown heuristic `" + name + "`");
        heuristics.push_back(*h);
    }

    std::vector<std::optional<psa::SortCriterion>> sorts;
    for (const std::string& name : split_list(flags.sorts)) {
        if (name == "none") {
            sorts.push_back(std::nullopt);
            continue;
        }
        auto s = psa::parse_sort_criterion(name);
        if (!s)
            return fail_usage("unknown sort criterion `" + name + "`");
        sorts.push_back(*s);
    }

    for (psa::TestId t : tests)
        for (psa::Heuristic h : heuristics)
            for (const auto& s : sorts)
                cfg.algos.push_back(psa::AlgoSpec::heur(h, s, t));
    if (flags.opa != "none") {
        for (const std::string& name : split_list(flags.opa)) {
            auto t = psa::parse_test(name);
            if (!t)
                return fail_usage("unknown test `" + name + "`");
            cfg.algos.push_back(psa::AlgoSpec::opa(*t, flags.opa_max_tasks));
        }
    }

    auto agg = psa::parse_agg_mode(flags.agg);
    if (!agg)
        return fail_usage("unknown aggregation mode `" + flags.agg + "`");
    double bin_width = flags.bin_width > 0 ? flags.bin_width : 0.1 * cfg.gen.m;

    try {
        if (flags.out == "-") {
            psa::run_experiment_csv(cfg, bin_width, *agg, std::cout);
        } else {
            std::ofstream out(flags.out, std::ios::binary);
            if (!out)
                return fail_usage("cannot write " + flags.out);
            psa::run_experiment_csv(cfg, bin_width, *agg, out);
        }
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioned multiprocessor schedulability analysis"};
    app.require_subcommand(1);

    /* generate */
    auto* gen_cmd = app.add_subcommand("generate", "Generate random task-set files");
    GenFlags gen_flags;
    std::size_t gen_count = 100;
    std::string gen_out = "sets";
    add_gen_flags(gen_cmd, gen_flags, true);
    gen_cmd->add_option("--count", gen_count, "Number of task sets")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Output directory")->capture_default_str();

    /* check */
    auto* check_cmd = app.add_subcommand("check", "Run one schedulability test on a file");
    std::string check_test, check_file;
    check_cmd->add_option("--test", check_test, "Test name, e.g. edf-bhr")->required();
    check_cmd->add_option("file", check_file, "Task-set file")->required();

    /* partition */
    auto* part_cmd = app.add_subcommand("partition", "Assign a task set with a heuristic");
    std::string part_heur = "ff", part_sort = "none", part_test = "edf-bhr", part_file;
    int part_m = 0;
    part_cmd->add_option("--heur", part_heur, "ff|bf|wf|nf")->capture_default_str();
    part_cmd->add_option("--sort", part_sort,
                         "Sorting criterion (two letters, e.g. du) or none")
        ->capture_default_str();
    part_cmd->add_option("--test", part_test, "Admission test")->capture_default_str();
    part_cmd->add_option("--m", part_m, "Number of processors (default: file header)");
    part_cmd->add_option("file", part_file, "Task-set file")->required();

    /* opa */
    auto* opa_cmd = app.add_subcommand("opa", "Search all assignments with an exact test");
    std::string opa_test = "edf-bhr", opa_file;
    int opa_m = 0, opa_cap = 0;
    opa_cmd->add_option("--test", opa_test, "edf-bhr|dm-abrtw")->capture_default_str();
    opa_cmd->add_option("--m", opa_m, "Number of processors (default: file header)");
    opa_cmd->add_option("--max-tasks", opa_cap, "Enumeration cap (default per test)");
    opa_cmd->add_option("file", opa_file, "Task-set file")->required();

    /* experiment */
    auto* exp_cmd = app.add_subcommand("experiment", "Run the comparative experiment matrix");
    ExperimentFlags exp;
    std::string exp_config;
    exp_cmd->add_option("--config", exp_config,
                        "Flat `key = value` file mirroring the flags; flags win");
    add_gen_flags(exp_cmd, exp.gen, false);
    exp_cmd->add_option("--count", exp.count, "Number of task sets")->capture_default_str();
    exp_cmd->add_option("--bin-width", exp.bin_width,
                        "Density bin width (default 0.1 * m)");
    exp_cmd->add_option("--heuristics", exp.heuristics, "Comma list of heuristics")
        ->capture_default_str();
    exp_cmd->add_option("--sorts", exp.sorts, "Comma list of criteria, or none")
        ->capture_default_str();
    exp_cmd->add_option("--tests", exp.tests,
                        "Comma list of tests (default: all compatible)");
    exp_cmd->add_option("--opa", exp.opa,
                        "Comma list of exact tests to search optimally, or none")
        ->capture_default_str();
    exp_cmd->add_option("--opa-max-tasks", exp.opa_max_tasks,
                        "Enumeration cap (default per test)");
    exp_cmd->add_option("--agg", exp.agg, "Criterion aggregation: none|mean|any|both")
        ->capture_default_str();
    exp_cmd->add_option("--out", exp.out, "CSV path, - for stdout")->capture_default_str();
    exp_cmd->add_option("--jobs", exp.jobs, "Worker threads")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (gen_cmd->parsed())
            return run_generate(gen_flags, gen_count, gen_out);
        if (check_cmd->parsed())
            return run_check(check_test, check_file);
        if (part_cmd->parsed())
            return run_partition(part_heur, part_sort, part_test, part_m, part_file);
        if (opa_cmd->parsed())
            return run_opa(opa_test, opa_m, opa_cap, opa_file);
        if (exp_cmd->parsed()) {
            bool has_seed = exp_cmd->count("--seed") > 0;
            if (!exp_config.empty())
                if (std::string err = merge_config(exp_config, *exp_cmd, exp, has_seed);
                    !err.empty())
                    return fail_usage(err);
            if (!has_seed)
                return fail_usage("--seed is required");
            return run_experiment(exp);
        }
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    }
    return exit_error;
}
