#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gangsched/rational.hpp"

namespace gangsched {

// Integer time units and processor-time area.
using Time = std::int64_t;
using Work = std::int64_t;

// A rigid parallel (gang) sporadic task: every job needs exactly `v`
// processors simultaneously for `c` time units, within `d` of its release;
// consecutive releases are at least `t` apart.
struct GangTask {
    std::size_t index = 0;
    int v = 1;
    Time c = 1;
    Time d = 1;
    Time t = 1;

    friend bool operator==(const GangTask &, const GangTask &) = default;
};

// Ordered task list on `m` identical processors. List position is task
// identity and also the EDF tie-break order.
class TaskSystem {
public:
    TaskSystem() = default;

    // Task indices are reassigned to list position. Does not validate.
    TaskSystem(int m, std::vector<GangTask> tasks);

    int m() const { return m_; }
    const std::vector<GangTask> &tasks() const { return tasks_; }
    std::size_t size() const { return tasks_.size(); }
    const GangTask &operator[](std::size_t i) const { return tasks_[i]; }

    friend bool operator==(const TaskSystem &, const TaskSystem &) = default;

private:
    int m_ = 1;
    std::vector<GangTask> tasks_;
};

// U_i = C_i / T_i, exact.
Rational utilization(const GangTask &t);

enum class Constraint {
    PlatformSize,      // m >= 1
    NonEmpty,          // at least one task
    WidthPositive,     // v >= 1
    WcetPositive,      // C >= 1
    DeadlinePositive,  // D >= 1
    PeriodPositive,    // T >= 1
    WcetWithinDeadline,  // C <= D
    DeadlineWithinPeriod,  // D <= T
    WidthWithinPlatform,   // v <= m
    IndexOrder,            // index == list position
};

const char *to_string(Constraint c);

struct ValidationError {
    std::optional<std::size_t> task_index;  // empty for system-level violations
    Constraint constraint;

    std::string message() const;
};

// First violation found, or nothing if the system is valid.
std::optional<ValidationError> validate(const TaskSystem &ts);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &reason);

    std::size_t line() const { return line_; }
    const std::string &reason() const { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

// Line format:
//   # comment / blank lines ignored
//   m <processors>
//   task <v> <C> <D> <T>
TaskSystem parse_task_system(std::istream &in);
TaskSystem parse_task_system(const std::string &text);
TaskSystem load_task_system(const std::string &path);

void print_task_system(std::ostream &os, const TaskSystem &ts);
std::string print_task_system(const TaskSystem &ts);

// The two-task, three-processor system that breaks the published test:
// tau_1 = (2, 2, 2, 2), tau_2 = (2, 1, 2, 2), m = 3.
TaskSystem counterexample_system();

}  // namespace gangsched
