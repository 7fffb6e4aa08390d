// Deadlock freedom only holds for programs built from fork and the session
// operations. Leaking an endpoint or wiring a cycle by hand breaks it; these
// tests pin down that such programs really do hang (detected by timeout).

#include "sess/sess.hpp"

#include "support/counterexamples.hpp"
#include "support/timed.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace sess;
using namespace std::chrono_literals;

TEST(EscapeHatch, WellBehavedVariantsTerminate)
{
    auto leaked = testkit::run_with_timeout([] { return testkit::leaked_peer(false); }, 5s);
    ASSERT_TRUE(leaked.has_value());
    EXPECT_FALSE(leaked->has_value());

    EXPECT_TRUE(testkit::run_with_timeout([] { return testkit::cycle(false); }, 5s).has_value());
}

TEST(EscapeHatch, LeakedEndpointHangsThePeer)
{
    for (int i = 0; i < 5; ++i)
    {
        EXPECT_FALSE(testkit::run_with_timeout([] { return testkit::leaked_peer(true); }, 100ms).has_value());
    }
}

TEST(EscapeHatch, HandWiredCycleDeadlocks)
{
    for (int i = 0; i < 5; ++i)
    {
        EXPECT_FALSE(testkit::run_with_timeout([] { return testkit::cycle(true); }, 100ms).has_value());
    }
}
