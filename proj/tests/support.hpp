#pragma once

// Test-only oracles and generators. Nothing here calls into the analysis
// code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gangsched/task_model.hpp"

namespace gangsched::testing {

// hbf oracle: releases T apart starting at offset r in [0, T); count job
// windows [r + jT, r + jT + D] that fit inside [0, L].
inline Time brute_hbf(const GangTask &t, Time len)
{
    Time best = 0;
    for (Time r = 0; r < t.t; ++r) {
        Time jobs = 0;
        for (Time rel = r; rel + t.d <= len; rel += t.t)
            ++jobs;
        best = std::max(best, jobs);
    }
    return best * t.c;
}

// hbf' oracle: jobs execute as early as possible in a synchronous periodic
// pattern ([jT, jT + C) busy); slide a window of length L over one period
// and count busy unit slots inside it.
inline Time brute_hbf_prime(const GangTask &t, Time len)
{
    Time best = 0;
    for (Time s = 0; s < t.t; ++s) {
        Time busy = 0;
        for (Time u = s; u < s + len; ++u)
            if (u % t.t < t.c)
                ++busy;
        best = std::max(best, busy);
    }
    return best;
}

// Classical single-processor demand bound, counted job by job.
inline Time scalar_dbf(Time c, Time d, Time period, Time len)
{
    Time jobs = 0;
    for (Time deadline = d; deadline <= len; deadline += period)
        ++jobs;
    return jobs * c;
}

inline Time scalar_dbf_carry(Time c, Time period, Time len)
{
    Time full = 0;
    Time rest = len;
    while (rest >= period) {
        rest -= period;
        full += c;
    }
    return full + std::min(c, rest);
}

// Single-processor interference bounds for task i against task k at window
// length delta (all widths 1, rectangle height m).
inline Time bar_i1(const GangTask &ti, const GangTask &tk, bool same, Time delta)
{
    const Time dem = scalar_dbf(ti.c, ti.d, ti.t, delta);
    if (same)
        return std::max<Time>(0, std::min(dem - tk.c, delta - tk.d));
    return std::min(dem, delta - tk.c);
}

inline Time bar_i2(const GangTask &ti, const GangTask &tk, bool same, Time delta)
{
    const Time dem = scalar_dbf_carry(ti.c, ti.t, delta);
    if (same)
        return std::max<Time>(0, std::min(dem - tk.c, delta - tk.d));
    return std::min(dem, delta - tk.c);
}

// Small random systems whose periods divide 120, so hyperperiods stay tiny.
class SmallSystemGen {
public:
    explicit SmallSystemGen(std::uint64_t seed) : rng_(seed) {}

    GangTask task(int m)
    {
        static constexpr Time pool[] = {2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30};
        GangTask t;
        t.v = pick(1, m);
        t.t = pool[pick(0, static_cast<int>(std::size(pool)) - 1)];
        // Bias WCETs low so some systems are certifiable.
        const Time c_hi = std::max<Time>(1, t.t / pick(1, 4));
        t.c = pick(1, static_cast<int>(c_hi));
        t.d = pick(static_cast<int>(t.c), static_cast<int>(t.t));
        return t;
    }

    TaskSystem system(int max_n = 4, int max_m = 6)
    {
        const int m = pick(1, max_m);
        const int n = pick(1, max_n);
        std::vector<GangTask> tasks;
        for (int i = 0; i < n; ++i)
            tasks.push_back(task(m));
        return TaskSystem(m, std::move(tasks));
    }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double> &x, const std::vector<double> &y)
{
    auto ranks = [](const std::vector<double> &v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
                ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t q = i; q <= j; ++q)
                r[idx[q]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0)
        return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace gangsched::testing
