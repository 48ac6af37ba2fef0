#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gangsched/rational.hpp"
#include "gangsched/task_model.hpp"

namespace gangsched {

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Platform-independent random source. std::mt19937_64 is fully specified by
// the standard; the distributions below are implemented here because the
// standard library ones are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for (seed, trial).
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next() { return engine_(); }
    double uniform01();                             // [0, 1)
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // [lo, hi]

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stafford's RandFixedSum: n values in [lo, hi] summing to `sum`, uniformly
// distributed over that slice of the hypercube.
// Throws GenerationError unless n >= 1 and n*lo <= sum <= n*hi.
std::vector<double> rand_fixed_sum(int n, double sum, double lo, double hi, Rng &rng);

enum class DeadlineMode { Implicit, Constrained };
enum class WidthMode { UniformWidth };

// What the fixed-sum draw distributes. TaskUtilization: U_i in [0, 1] with
// sum U_i = target_load * m. ProcessorLoad: widths are drawn first, then
// U_i * v_i in [0, 1] with sum U_i * v_i = target_load * m.
enum class LoadMode { TaskUtilization, ProcessorLoad };

struct GenParams {
    int n = 10;
    int m = 6;
    // See LoadMode for what target_load * m is the sum of.
    Rational target_load{1, 2};
    LoadMode load_mode = LoadMode::TaskUtilization;
    Time t_min = 10;
    Time t_max = 1000;
    DeadlineMode deadline_mode = DeadlineMode::Implicit;
    WidthMode width_mode = WidthMode::UniformWidth;
    std::uint64_t seed = 1;
};

// Throws GenerationError for invalid parameter combinations.
void check_params(const GenParams &p);

TaskSystem gen_task_system(const GenParams &p, std::uint64_t trial);

}  // namespace gangsched
