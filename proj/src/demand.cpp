#include "gangsched/demand.hpp"

// Sanity checks against the counterexample task tau_1 = (2, 2, 2, 2).
namespace gangsched {
namespace {
constexpr GangTask tau1{0, 2, 2, 2, 2};
static_assert(hbf(tau1, 2) == 2);
static_assert(hbf_prime(tau1, 2) == 2);
static_assert(dbf(tau1, 2) == 4);
static_assert(hbf(tau1, 1) == 0);
}  // namespace
}  // namespace gangsched
