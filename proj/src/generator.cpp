#include "gangsched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace gangsched {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial)
{
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0)
        return static_cast<std::int64_t>(engine_());
    // Rejection sampling on the largest multiple of span.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

// Port of Roger Stafford's randfixedsum (2006) for a single sample.
// The simplex {x in [0,1]^n : sum x = s} is cut into pieces by the planes
// x_1 + ... + x_i = integer; w holds the (scaled) volumes of those pieces
// and t the conditional probabilities used to walk down to a random piece.
std::vector<double> rand_fixed_sum(int n, double sum, double lo, double hi, Rng &rng)
{
    if (n < 1)
        throw GenerationError("rand_fixed_sum: n must be >= 1");
    if (!(hi > lo))
        throw GenerationError("rand_fixed_sum: empty interval");
    if (sum < n * lo || sum > n * hi)
        throw GenerationError("rand_fixed_sum: sum " + std::to_string(sum) + " outside [" +
                              std::to_string(n * lo) + ", " + std::to_string(n * hi) + "]");

    double s = (sum - n * lo) / (hi - lo);
    const int k = std::max(std::min(static_cast<int>(std::floor(s)), n - 1), 0);
    s = std::max(std::min(s, static_cast<double>(k + 1)), static_cast<double>(k));

    // 1-based helpers to stay close to the reference formulation.
    std::vector<double> s1(static_cast<std::size_t>(n) + 1), s2(static_cast<std::size_t>(n) + 1);
    for (int j = 1; j <= n; ++j) {
        s1[j] = s - (k - j + 1);
        s2[j] = (k + n - j + 1) - s;
    }

    constexpr double realmax = 1e300;
    constexpr double tiny = 0x1.0p-1074;
    const auto cols = static_cast<std::size_t>(n) + 2;
    std::vector<double> w((static_cast<std::size_t>(n) + 1) * cols, 0.0);
    std::vector<double> t((static_cast<std::size_t>(n) + 1) * cols, 0.0);
    auto W = [&](int i, int j) -> double & { return w[static_cast<std::size_t>(i) * cols + j]; };
    auto Tm = [&](int i, int j) -> double & { return t[static_cast<std::size_t>(i) * cols + j]; };

    W(1, 2) = realmax;
    for (int i = 2; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) {
            const double tmp1 = W(i - 1, j + 1) * s1[j] / i;
            const double tmp2 = W(i - 1, j) * s2[n - i + j] / i;
            W(i, j + 1) = tmp1 + tmp2;
            const double tmp3 = W(i, j + 1) + tiny;
            Tm(i - 1, j) = (s2[n - i + j] > s1[j]) ? tmp2 / tmp3 : 1.0 - tmp1 / tmp3;
        }
    }

    std::vector<double> x(static_cast<std::size_t>(n));
    int j = k + 1;
    double sm = 0.0;
    double pr = 1.0;
    for (int i = n - 1; i >= 1; --i) {
        const double rt = rng.uniform01();
        const double rs = rng.uniform01();
        const int e = rt <= Tm(i, j) ? 1 : 0;
        const double sx = std::pow(rs, 1.0 / i);
        sm += (1.0 - sx) * pr * s / (i + 1);
        pr *= sx;
        x[static_cast<std::size_t>(n - i - 1)] = sm + pr * e;
        s -= e;
        j -= e;
    }
    x[static_cast<std::size_t>(n - 1)] = sm + pr * s;

    for (int i = n - 1; i > 0; --i)
        std::swap(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(rng.uniform_int(0, i))]);

    for (auto &xi : x)
        xi = std::clamp((hi - lo) * xi + lo, lo, hi);
    return x;
}

void check_params(const GenParams &p)
{
    if (p.n < 1)
        throw GenerationError("n must be >= 1");
    if (p.m < 1)
        throw GenerationError("m must be >= 1");
    if (p.target_load.sign() <= 0)
        throw GenerationError("target load must be positive");
    if (p.t_min < 1 || p.t_min > p.t_max)
        throw GenerationError("period range must satisfy 1 <= t_min <= t_max");
}

namespace {

Time log_uniform_period(Time t_min, Time t_max, Rng &rng)
{
    if (t_min == t_max)
        return t_min;
    const double lo = std::log(static_cast<double>(t_min));
    const double hi = std::log(static_cast<double>(t_max) + 1.0);
    const auto t = static_cast<Time>(std::floor(std::exp(lo + rng.uniform01() * (hi - lo))));
    return std::clamp(t, t_min, t_max);
}

}  // namespace

TaskSystem gen_task_system(const GenParams &p, std::uint64_t trial)
{
    check_params(p);
    Rng rng = Rng::for_trial(p.seed, trial);

    const double total = (p.target_load * Rational(p.m)).to_double();
    const bool by_load = p.load_mode == LoadMode::ProcessorLoad;
    std::vector<int> widths;
    if (by_load)
        for (int i = 0; i < p.n; ++i)
            widths.push_back(static_cast<int>(rng.uniform_int(1, p.m)));
    const std::vector<double> share = rand_fixed_sum(p.n, total, 0.0, 1.0, rng);

    constexpr int kMaxRedraws = 1000;
    std::vector<GangTask> tasks;
    tasks.reserve(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxRedraws && !accepted; ++attempt) {
            GangTask task;
            task.v = by_load ? widths[idx] : static_cast<int>(rng.uniform_int(1, p.m));
            const double util = by_load ? share[idx] / task.v : share[idx];
            task.t = log_uniform_period(p.t_min, p.t_max, rng);
            task.c = std::max<Time>(1, std::llround(util * static_cast<double>(task.t)));
            if (task.c > task.t)
                continue;
            task.d = p.deadline_mode == DeadlineMode::Implicit ? task.t : rng.uniform_int(task.c, task.t);
            if (task.c > task.d || task.d > task.t || task.v > p.m)
                continue;
            tasks.push_back(task);
            accepted = true;
        }
        if (!accepted)
            throw GenerationError("task " + std::to_string(i) + " rejected " + std::to_string(kMaxRedraws) +
                                  " times");
    }
    return TaskSystem(p.m, std::move(tasks));
}

}  // namespace gangsched
