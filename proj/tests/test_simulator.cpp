#include "doctest.h"

#include <map>

#include "gangsched/simulator.hpp"
#include "support.hpp"

using namespace gangsched;

TEST_CASE("hyperperiod")
{
    CHECK(hyperperiod(counterexample_system()) == 2);
    CHECK(hyperperiod(TaskSystem(1, {GangTask{0, 1, 1, 2, 2}, GangTask{0, 1, 1, 3, 3}, GangTask{0, 1, 1, 5, 5}})) ==
          30);
    CHECK(hyperperiod(TaskSystem(1, {GangTask{0, 1, 1, 7, 7}})) == 7);
    CHECK(hyperperiod(TaskSystem(1, {GangTask{0, 1, 1, 4, 4}, GangTask{0, 1, 1, 6, 6}})) == 12);
    CHECK_THROWS_AS(hyperperiod(TaskSystem(1, {GangTask{0, 1, 1, 7, 7}, GangTask{0, 1, 1, 11, 11}}), 50),
                    HorizonOverflow);
}

TEST_CASE("counterexample schedule")
{
    const ScheduleTrace trace = simulate_synchronous(counterexample_system());
    CHECK(trace.horizon == 2);
    REQUIRE(trace.slots.size() == 2);
    for (const auto &slot : trace.slots) {
        REQUIRE(slot.size() == 1);
        CHECK(slot[0].task == 0);
        CHECK(slot[0].processors == std::vector<int>{0, 1});
    }
    REQUIRE(trace.first_miss);
    CHECK(*trace.first_miss == DeadlineMiss{1, 2});
}

TEST_CASE("counterexample keeps running the late job when asked to continue")
{
    SimulationOptions opts;
    opts.horizon = 4;
    opts.stop_at_first_miss = false;
    const ScheduleTrace trace = simulate_synchronous(counterexample_system(), opts);
    REQUIRE(trace.slots.size() == 4);
    REQUIRE(trace.slots[2].size() == 1);
    CHECK(trace.slots[2][0].task == 1);
    CHECK(*trace.first_miss == DeadlineMiss{1, 2});
    CHECK(trace.misses.size() >= 2);
}

TEST_CASE("full-width task runs at the start of every period")
{
    const int m = 3;
    const ScheduleTrace trace = simulate_synchronous(TaskSystem(m, {GangTask{0, m, 1, 2, 2}}),
                                                     SimulationOptions{Time{6}, true, true});
    CHECK_FALSE(trace.first_miss);
    for (Time t = 0; t < 6; ++t) {
        const auto &slot = trace.slots[static_cast<std::size_t>(t)];
        if (t % 2 == 0) {
            REQUIRE(slot.size() == 1);
            CHECK(slot[0].processors.size() == static_cast<std::size_t>(m));
        } else {
            CHECK(slot.empty());
        }
    }
}

TEST_CASE("two unit tasks on two processors share slot 0")
{
    const ScheduleTrace trace =
        simulate_synchronous(TaskSystem(2, {GangTask{0, 1, 1, 2, 2}, GangTask{0, 1, 1, 2, 2}}));
    REQUIRE(trace.slots.size() == 2);
    REQUIRE(trace.slots[0].size() == 2);
    CHECK(trace.slots[0][0].task == 0);
    CHECK(trace.slots[0][0].processors == std::vector<int>{0});
    CHECK(trace.slots[0][1].task == 1);
    CHECK(trace.slots[0][1].processors == std::vector<int>{1});
    CHECK(trace.slots[1].empty());
    CHECK_FALSE(trace.first_miss);
}

TEST_CASE("first fit skips a blocked job and continues down the list")
{
    // Task 0 (width 2) goes first; task 1 (width 2) does not fit in the one
    // free processor; task 2 (width 1, later deadline) still gets it.
    const TaskSystem ts(3, {GangTask{0, 2, 2, 3, 4}, GangTask{1, 2, 1, 4, 4}, GangTask{2, 1, 1, 4, 4}});
    const ScheduleTrace trace = simulate_synchronous(ts);
    REQUIRE(!trace.slots.empty());
    REQUIRE(trace.slots[0].size() == 2);
    CHECK(trace.slots[0][0].task == 0);
    CHECK(trace.slots[0][1].task == 2);
    CHECK(trace.slots[0][1].processors == std::vector<int>{2});
}

TEST_CASE("check_no_miss")
{
    CHECK_FALSE(check_no_miss(counterexample_system()));
    CHECK(check_no_miss(TaskSystem(1, {GangTask{0, 1, 1, 10, 10}})));

    for (int m = 1; m <= 5; ++m) {
        std::vector<GangTask> tasks;
        for (int i = 0; i < m; ++i) {
            const Time t = 2 + i;
            tasks.push_back(GangTask{0, 1, t, t, t});
        }
        const TaskSystem ts(m, tasks);
        const ScheduleTrace trace = simulate_synchronous(ts);
        CHECK_FALSE(trace.first_miss);
        // each task pinned: runs in every slot
        for (const auto &slot : trace.slots)
            CHECK(slot.size() == static_cast<std::size_t>(m));
    }
}

TEST_CASE("zero horizon yields an empty trace")
{
    SimulationOptions opts;
    opts.horizon = 0;
    const ScheduleTrace trace = simulate_synchronous(counterexample_system(), opts);
    CHECK(trace.slots.empty());
    CHECK_FALSE(trace.first_miss);
}

TEST_CASE("horizon guard")
{
    SimulationOptions opts;
    opts.horizon = 1000;
    opts.horizon_limit = 10;
    CHECK_THROWS_AS(simulate_synchronous(counterexample_system(), opts), HorizonOverflow);
}

namespace {

struct ReplayJob {
    std::size_t task;
    Time release;
    Time deadline;
    Time remaining;
    int width;
};

}  // namespace

// Rebuild the pending set from the trace alone and re-run the allocation
// walk; the trace must match it slot for slot.
TEST_CASE("trace invariants over random systems")
{
    testing::SmallSystemGen gen(555);
    for (int iter = 0; iter < 400; ++iter) {
        const TaskSystem ts = gen.system(5, 6);
        const ScheduleTrace trace = simulate_synchronous(ts);
        CHECK(trace.horizon == hyperperiod(ts));

        std::vector<ReplayJob> pending;
        for (std::size_t slot = 0; slot < trace.slots.size(); ++slot) {
            const Time now = static_cast<Time>(slot);
            for (const auto &t : ts.tasks())
                if (now % t.t == 0)
                    pending.push_back({t.index, now, now + t.d, t.c, t.v});
            std::stable_sort(pending.begin(), pending.end(), [](const ReplayJob &a, const ReplayJob &b) {
                return a.deadline != b.deadline ? a.deadline < b.deadline : a.task < b.task;
            });

            const auto &allocs = trace.slots[slot];
            std::vector<int> owner(static_cast<std::size_t>(ts.m()), -1);
            int used = 0;
            std::map<std::size_t, const Allocation *> by_task;
            for (const auto &a : allocs) {
                CHECK(a.processors.size() == static_cast<std::size_t>(ts[a.task].v));
                for (int p : a.processors) {
                    REQUIRE(p >= 0);
                    REQUIRE(p < ts.m());
                    CHECK(owner[static_cast<std::size_t>(p)] == -1);
                    owner[static_cast<std::size_t>(p)] = static_cast<int>(a.task);
                }
                used += static_cast<int>(a.processors.size());
                CHECK(by_task.count(a.task) == 0);
                by_task[a.task] = &a;
            }
            CHECK(used <= ts.m());

            int free = ts.m();
            for (auto &job : pending) {
                const bool ran = by_task.count(job.task) > 0;
                const bool fits = job.width <= free;
                CHECK(ran == fits);
                CHECK(now >= job.release);
                CHECK(now < job.deadline);
                if (ran) {
                    free -= job.width;
                    --job.remaining;
                    CHECK(job.remaining >= 0);
                }
            }
            std::erase_if(pending, [](const ReplayJob &j) { return j.remaining == 0; });
        }
        if (!trace.first_miss)
            CHECK(pending.empty());
    }
}

TEST_CASE("simulation is deterministic")
{
    testing::SmallSystemGen gen(9);
    for (int iter = 0; iter < 50; ++iter) {
        const TaskSystem ts = gen.system();
        const ScheduleTrace a = simulate_synchronous(ts);
        const ScheduleTrace b = simulate_synchronous(ts);
        CHECK(a.first_miss == b.first_miss);
        REQUIRE(a.slots.size() == b.slots.size());
        for (std::size_t s = 0; s < a.slots.size(); ++s) {
            REQUIRE(a.slots[s].size() == b.slots[s].size());
            for (std::size_t j = 0; j < a.slots[s].size(); ++j) {
                CHECK(a.slots[s][j].task == b.slots[s][j].task);
                CHECK(a.slots[s][j].processors == b.slots[s][j].processors);
            }
        }
    }
}
