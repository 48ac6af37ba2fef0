#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gangsched/task_model.hpp"

namespace gangsched {

// Refuse to simulate beyond 2^48 slots.
inline constexpr Time kDefaultHorizonLimit = Time{1} << 48;

class HorizonOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// lcm of all periods; throws HorizonOverflow above `limit`.
Time hyperperiod(const TaskSystem &ts, Time limit = kDefaultHorizonLimit);

struct Job {
    std::size_t task = 0;
    Time release = 0;
    Time deadline = 0;
    Time remaining = 0;
    int width = 1;
};

struct Allocation {
    std::size_t task = 0;
    std::vector<int> processors;  // ascending, size == task width
};

struct DeadlineMiss {
    std::size_t task = 0;
    Time deadline = 0;

    friend bool operator==(const DeadlineMiss &, const DeadlineMiss &) = default;
};

struct ScheduleTrace {
    Time horizon = 0;
    // slots[t] holds the allocations made for [t, t + 1).
    std::vector<std::vector<Allocation>> slots;
    std::optional<DeadlineMiss> first_miss;
    std::vector<DeadlineMiss> misses;  // all misses seen, in detection order
};

struct SimulationOptions {
    std::optional<Time> horizon;  // empty: one hyperperiod
    bool stop_at_first_miss = true;
    bool record_slots = true;
    Time horizon_limit = kDefaultHorizonLimit;
};

// Gang EDF under synchronous periodic release: jobs are ordered by
// (absolute deadline, task index) and allocated first-fit, skipping any
// job whose width exceeds the processors still free and continuing down
// the list. Preemption happens at slot boundaries only.
ScheduleTrace simulate_synchronous(const TaskSystem &ts, const SimulationOptions &opts = {});

// True iff the synchronous schedule over one hyperperiod meets every
// deadline. A false result proves the system unschedulable under Gang EDF;
// a true result does not prove schedulability for all sporadic arrivals.
bool check_no_miss(const TaskSystem &ts, Time horizon_limit = kDefaultHorizonLimit);

}  // namespace gangsched
