#ifndef PSA_TASKSET_IO_HPP
#define PSA_TASKSET_IO_HPP

/* Task-set text format:
 *
 *   # optional comment lines
 *   n m deadline_model
 *   C T D            (one line per task, fixed decimal notation)
 *
 * Task ids are assigned 1..n in file order.  Parse problems are reported
 * with the 1-based line number and never terminate the process. */

#include "psa/task.hpp"
#include "psa/taskgen.hpp"

#include <iosfwd>
#include <string>

namespace psa {

struct ParseResult {
    bool ok = false;
    TaskSet set;
    int m = 0;          // platform size recorded in the header
    std::string error;  // "line N: ..." when !ok
};

ParseResult read_task_set(std::istream& in);
ParseResult read_task_set_file(const std::string& path);

void write_task_set(std::ostream& out, const TaskSet& ts, int m);
bool write_task_set_file(const std::string& path, const TaskSet& ts, int m);

/* Manifest line for a generated batch: seed distribution deadline_model m count */
std::string manifest_line(const GenConfig& cfg, std::size_t count);

/* Fixed decimal rendering used across file formats: integers without a
 * fraction, everything else with 9 decimal places. */
std::string format_time(double x);

} // namespace psa

#endif
