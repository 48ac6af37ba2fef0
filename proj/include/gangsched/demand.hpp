#pragma once

#include "gangsched/task_model.hpp"

namespace gangsched {

// Floor division for a positive divisor.
constexpr Time floor_div(Time a, Time b)
{
    const Time q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

// Horizontal demand bound: time length demanded by jobs of `t` with release
// and deadline inside a window of length L.
//   hbf(t, L) = max(0, floor((L - D) / T) + 1) * C
constexpr Time hbf(const GangTask &t, Time len)
{
    const Time jobs = floor_div(len - t.d, t.t) + 1;
    return jobs > 0 ? jobs * t.c : 0;
}

// Carry-in variant: additionally counts a partially executed job at the
// window start.
//   hbf'(t, L) = floor(L / T) * C + min(C, L mod T)
constexpr Time hbf_prime(const GangTask &t, Time len)
{
    const Time rem = len % t.t;
    return (len / t.t) * t.c + (rem < t.c ? rem : t.c);
}

// Gang demand bound in processor-time: dbf = hbf * v.
constexpr Work dbf(const GangTask &t, Time len) { return hbf(t, len) * t.v; }

}  // namespace gangsched
