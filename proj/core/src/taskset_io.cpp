#include "psa/taskset_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace psa {

std::string format_time(double x) {
    char buf[64];
    double rounded = std::round(x);
    if (std::abs(x - rounded) <= time_eps && std::abs(x) < 1e15)
        std::snprintf(buf, sizeof buf, "%.0f", rounded);
    else
        std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

ParseResult read_task_set(std::istream& in) {
    ParseResult res;
    std::string line;
    int lineno = 0;
    int n = -1;
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.error = "line " + std::to_string(lineno) + ": " + msg;
        return res;
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#')
            continue;
        std::istringstream fields(line);
        if (n < 0) {
            std::string model;
            if (!(fields >> n >> res.m >> model))
                return fail("expected header `n m deadline_model`");
            if (n < 0 || res.m < 0)
                return fail("n and m must be nonnegative");
            if (!parse_deadline_model(model, res.set.model))
                return fail("unknown deadline model `" + model + "`");
            std::string extra;
            if (fields >> extra)
                return fail("trailing tokens after header");
            continue;
        }
        if (int(res.set.size()) == n)
            return fail("more task lines than the declared n");
        Task t;
        if (!(fields >> t.wcet >> t.period >> t.deadline))
            return fail("expected `C T D`");
        std::string extra;
        if (fields >> extra)
            return fail("trailing tokens after task");
        t.id = int(res.set.size()) + 1;
        res.set.tasks.push_back(t);
    }
    ++lineno;
    if (n < 0)
        return fail("missing header");
    if (int(res.set.size()) != n)
        return fail("expected " + std::to_string(n) + " task lines, got " +
                    std::to_string(res.set.size()));
    std::string invalid = validate(res.set);
    if (!invalid.empty())
        return fail(invalid);
    res.ok = true;
    return res;
}

ParseResult read_task_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        res.error = "cannot open " + path;
        return res;
    }
    return read_task_set(in);
}

void write_task_set(std::ostream& out, const TaskSet& ts, int m) {
    out << ts.size() << ' ' << m << ' ' << to_string(ts.model) << '\n';
    for (const Task& t : ts)
        out << format_time(t.wcet) << ' ' << format_time(t.period) << ' '
            << format_time(t.deadline) << '\n';
}

bool write_task_set_file(const std::string& path, const TaskSet& ts, int m) {
    std::ofstream out(path);
    if (!out)
        return false;
    write_task_set(out, ts, m);
    return bool(out);
}

std::string manifest_line(const GenConfig& cfg, std::size_t count) {
    std::ostringstream out;
    out << cfg.seed << ' ' << to_string(cfg.distribution) << ' '
        << to_string(cfg.deadline_model) << ' ' << cfg.m << ' ' << count;
    return out.str();
}

} // namespace psa
