#include "doctest.h"

#include "gangsched/demand.hpp"
#include "support.hpp"

using namespace gangsched;
using testing::brute_hbf;
using testing::brute_hbf_prime;

TEST_CASE("hbf: examples")
{
    const GangTask tau1{0, 2, 2, 2, 2};
    CHECK(hbf(tau1, 2) == 2);
    CHECK(hbf(GangTask{0, 1, 1, 2, 7}, 1) == 0);
    CHECK(hbf(GangTask{0, 3, 2, 2, 2}, 1) == 0);

    const GangTask t{0, 1, 1, 3, 5};
    REQUIRE(brute_hbf(t, 13) == 3);
    CHECK(hbf(t, 13) == 3);
}

TEST_CASE("hbf': examples")
{
    const GangTask tau1{0, 2, 2, 2, 2};
    CHECK(hbf_prime(tau1, 2) == 2);
    CHECK(hbf_prime(tau1, 0) == 0);
    CHECK(hbf_prime(GangTask{0, 4, 7, 9, 11}, 0) == 0);

    const GangTask t{0, 1, 2, 3, 5};
    REQUIRE(brute_hbf_prime(t, 7) == 4);
    CHECK(hbf_prime(t, 7) == 4);
}

TEST_CASE("dbf: examples")
{
    CHECK(dbf(GangTask{0, 2, 2, 2, 2}, 2) == 4);
    CHECK(dbf(GangTask{0, 3, 2, 5, 6}, 4) == 0);
    CHECK(dbf(GangTask{0, 1, 1, 3, 5}, 13) == 3);
}

TEST_CASE("floor_div rounds toward negative infinity")
{
    CHECK(floor_div(-1, 2) == -1);
    CHECK(floor_div(-2, 2) == -1);
    CHECK(floor_div(-3, 2) == -2);
    CHECK(floor_div(3, 2) == 1);
    CHECK(floor_div(0, 5) == 0);
}

TEST_CASE("demand functions: shape properties over task grid")
{
    for (Time period = 1; period <= 8; ++period)
        for (Time d = 1; d <= period; ++d)
            for (Time c = 1; c <= d; ++c)
                for (int v = 1; v <= 3; ++v) {
                    const GangTask t{0, v, c, d, period};
                    const Time horizon = 4 * period + d;
                    for (Time len = 0; len <= horizon; ++len) {
                        CAPTURE(len);
                        if (len > 0) {
                            CHECK(hbf(t, len) >= hbf(t, len - 1));
                            CHECK(hbf_prime(t, len) >= hbf_prime(t, len - 1));
                        }
                        if (len < d)
                            CHECK(hbf(t, len) == 0);
                        // jumps of exactly C at D + jT, flat elsewhere
                        if (len > 0) {
                            const bool step = len >= d && (len - d) % period == 0;
                            CHECK(hbf(t, len) - hbf(t, len - 1) == (step ? c : 0));
                        }
                        CHECK(hbf_prime(t, len) >= hbf(t, len));
                        CHECK(dbf(t, len) == v * hbf(t, len));
                        if (v == 1)
                            CHECK(dbf(t, len) == testing::scalar_dbf(c, d, period, len));
                    }
                }
}
