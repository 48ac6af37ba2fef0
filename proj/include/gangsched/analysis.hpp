#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gangsched/rational.hpp"
#include "gangsched/task_model.hpp"

namespace gangsched {

// Which inequality decides the interference condition:
//   Original:  sum I1 + I_carry-in <= w * h
//   StrictFix: sum I1 + I_carry-in <  w * h
enum class Variant { Original, StrictFix };

// How the per-task carry-in contributions (I2 - I1) are aggregated.
//   TopHMinusOne: the h - 1 largest contributions. At the window start at
//     least v_k processors are idle, so at most h - 1 processors can be busy
//     with carry-in jobs.
//   AllTasks: every task contributes.
enum class CarryInStrategy { TopHMinusOne, AllTasks };

const char *to_string(Variant v);
const char *to_string(CarryInStrategy s);

struct AnalysisConfig {
    Variant variant = Variant::StrictFix;
    CarryInStrategy carry_in = CarryInStrategy::TopHMinusOne;
    // Scan horizon used only when the interval bound is inapplicable.
    // Defaults to 10 * max_i (D_i + T_i).
    std::optional<Time> delta_cap;
};

Time default_delta_cap(const TaskSystem &ts);

// One evaluation point (k, delta) together with the interference rectangle
// it induces.
struct AnalysisPoint {
    std::size_t k = 0;
    Time delta = 0;  // window length, >= D_k
    Time a = 0;      // delta - D_k
    Time w = 0;      // rectangle width, delta - C_k
    int h = 1;       // rectangle height, m - v_k + 1
};

// Throws std::invalid_argument if delta < D_k or k is out of range.
AnalysisPoint interference_rectangle(const TaskSystem &ts, std::size_t k, Time delta);

// Interference of task i without carry-in (hbf based) and with carry-in
// (hbf' based). For i == k the problem job itself is excluded and the
// contribution is capped by A_k. Both are clamped at zero.
Work i1(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p);
Work i2(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p);
Work i_diff(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p);

Work carry_in_bound(std::span<const Work> diffs, int h, CarryInStrategy strategy);
Work carry_in_bound(const TaskSystem &ts, const AnalysisPoint &p, CarryInStrategy strategy);

struct InterferenceSummary {
    AnalysisPoint point;
    std::vector<Work> i1;
    std::vector<Work> i2;
    std::vector<Work> i_diff;
    Work carry_in = 0;
    Work lhs = 0;  // sum I1 + carry_in
    Work rhs = 0;  // w * h
};

InterferenceSummary interference_summary(const TaskSystem &ts, std::size_t k, Time delta,
                                         CarryInStrategy strategy);

struct ConditionCheck {
    bool holds = false;
    InterferenceSummary summary;
};

// Evaluates the sufficient condition at one window length.
ConditionCheck condition_check(const TaskSystem &ts, std::size_t k, Time delta,
                              const AnalysisConfig &config);

// Numerator and denominator of the window-length bound
//   delta <= (h C_k - sum (D_i - T_i) U_i min(v_i, h) + C_carry-in)
//            / (h - sum U_i min(v_i, h))
struct IntervalTerms {
    Rational numerator;
    Rational denominator;
    Work c_carry_in = 0;
    int h = 1;
};

IntervalTerms interval_terms(const TaskSystem &ts, std::size_t k, CarryInStrategy strategy);

struct DeltaBound {
    Rational value;
};

// The bound only holds when the denominator is positive; otherwise the
// inequality flips and the scan interval is undefined.
struct BoundInapplicable {
    Rational denominator;
};

using DeltaUpperBound = std::variant<DeltaBound, BoundInapplicable>;

DeltaUpperBound delta_upper_bound(const TaskSystem &ts, std::size_t k, CarryInStrategy strategy);

// Per-task outcomes.
struct Certified {
    Time scanned_up_to = 0;
};

struct NotProven {
    Time witness_delta = 0;
    InterferenceSummary summary;
};

struct Inapplicable {
    Rational denominator;
    Time scanned_up_to = 0;
    // First violating delta found by the exploratory scan beyond D_k, if any.
    std::optional<Time> exploratory_witness;
};

using TaskOutcome = std::variant<Certified, NotProven, Inapplicable>;

TaskOutcome analyze_task(const TaskSystem &ts, std::size_t k, const AnalysisConfig &config);

struct AnalysisVerdict {
    std::vector<TaskOutcome> tasks;

    bool schedulable() const;
    bool any_not_proven() const;
    bool any_inapplicable() const;
};

AnalysisVerdict analyze(const TaskSystem &ts, const AnalysisConfig &config);

// True when some task's interval-bound denominator is <= 0, i.e. the test
// cannot be applied to the system as published.
bool has_inapplicable_bound(const TaskSystem &ts);

}  // namespace gangsched
