#include "gangsched/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gangsched {

Time hyperperiod(const TaskSystem &ts, Time limit)
{
    Time h = 1;
    for (const auto &t : ts.tasks()) {
        const Time g = std::gcd(h, t.t);
        const Time step = t.t / g;
        if (h > limit / step)
            throw HorizonOverflow("hyperperiod exceeds limit of " + std::to_string(limit) + " slots");
        h *= step;
    }
    return h;
}

ScheduleTrace simulate_synchronous(const TaskSystem &ts, const SimulationOptions &opts)
{
    ScheduleTrace trace;
    trace.horizon = opts.horizon ? *opts.horizon : hyperperiod(ts, opts.horizon_limit);
    if (trace.horizon < 0)
        throw std::invalid_argument("negative horizon");
    if (trace.horizon > opts.horizon_limit)
        throw HorizonOverflow("horizon exceeds limit of " + std::to_string(opts.horizon_limit) + " slots");
    if (opts.record_slots)
        trace.slots.reserve(static_cast<std::size_t>(trace.horizon));

    const int m = ts.m();
    std::vector<Job> pending;
    std::vector<bool> busy(static_cast<std::size_t>(m));

    auto by_priority = [](const Job &a, const Job &b) {
        return a.deadline != b.deadline ? a.deadline < b.deadline : a.task < b.task;
    };

    // Misses become visible at the boundary equal to the deadline.
    auto detect_misses = [&](Time now) {
        std::vector<DeadlineMiss> found;
        for (auto &job : pending)
            if (job.remaining > 0 && job.deadline == now)
                found.push_back({job.task, job.deadline});
        std::sort(found.begin(), found.end(), [](const DeadlineMiss &a, const DeadlineMiss &b) {
            return a.deadline != b.deadline ? a.deadline < b.deadline : a.task < b.task;
        });
        for (const auto &miss : found) {
            if (!trace.first_miss)
                trace.first_miss = miss;
            trace.misses.push_back(miss);
        }
    };

    for (Time now = 0; now < trace.horizon; ++now) {
        detect_misses(now);
        if (trace.first_miss && opts.stop_at_first_miss)
            return trace;

        for (const auto &t : ts.tasks())
            if (now % t.t == 0)
                pending.push_back(Job{t.index, now, now + t.d, t.c, t.v});
        std::sort(pending.begin(), pending.end(), by_priority);

        std::fill(busy.begin(), busy.end(), false);
        int free = m;
        std::vector<Allocation> slot;
        for (auto &job : pending) {
            if (job.width > free)
                continue;
            free -= job.width;
            --job.remaining;
            if (!opts.record_slots)
                continue;
            // Lowest-numbered free processors; cosmetic only.
            Allocation alloc{job.task, {}};
            for (int p = 0; p < m && static_cast<int>(alloc.processors.size()) < job.width; ++p) {
                if (!busy[static_cast<std::size_t>(p)]) {
                    busy[static_cast<std::size_t>(p)] = true;
                    alloc.processors.push_back(p);
                }
            }
            slot.push_back(std::move(alloc));
        }
        if (opts.record_slots)
            trace.slots.push_back(std::move(slot));

        std::erase_if(pending, [](const Job &j) { return j.remaining == 0; });
    }

    detect_misses(trace.horizon);
    return trace;
}

bool check_no_miss(const TaskSystem &ts, Time horizon_limit)
{
    SimulationOptions opts;
    opts.record_slots = false;
    opts.horizon_limit = horizon_limit;
    return !simulate_synchronous(ts, opts).first_miss.has_value();
}

}  // namespace gangsched
