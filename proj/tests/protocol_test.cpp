#include "sess/sess.hpp"

#include "support/testkit.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <type_traits>

using namespace sess;

namespace
{
    struct IntStream : Send<std::int32_t, IntStream>
    {
    };

    // Mutually recursive pair of named protocols.
    struct Ask;
    struct Answer : Recv<std::int32_t, Ask>
    {
    };
    struct Ask : Send<std::int32_t, Answer>
    {
    };

    using SqrSrv = Recv<std::int32_t, Send<std::int32_t, End>>;
    using Ping = Send<unit, End>;

    template <typename S>
    constexpr bool involutive = std::is_same_v<dual_t<dual_t<S>>, S>;
}  // namespace

static_assert(std::is_same_v<dual_t<End>, End>);
static_assert(std::is_same_v<dual_t<Ping>, Recv<unit, End>>);
static_assert(std::is_same_v<dual_t<SqrSrv>, Send<std::int32_t, Recv<std::int32_t, End>>>);
static_assert(std::is_same_v<dual_t<Recv<Ping, End>>, Send<Ping, End>>, "payloads are not dualised");
static_assert(involutive<End> && involutive<Ping> && involutive<SqrSrv>);
static_assert(involutive<IntStream> && involutive<Dual<IntStream>>);
static_assert(std::is_same_v<dual_t<IntStream>, Dual<IntStream>>);
static_assert(std::is_base_of_v<Recv<std::int32_t, Dual<IntStream>>, Dual<IntStream>>);
static_assert(std::is_base_of_v<Send<std::int32_t, Dual<Ask>>, Dual<Answer>>);
static_assert(involutive<Ask> && involutive<Answer>);

static_assert(session<End> && session<Ping> && session<IntStream> && session<Dual<IntStream>>);
static_assert(!session<int> && !session<unit>);
static_assert(!std::is_copy_constructible_v<Ping> && !std::is_copy_assignable_v<Ping>);
static_assert(!std::is_copy_constructible_v<End> && !std::is_copy_constructible_v<IntStream>);
static_assert(std::is_nothrow_move_constructible_v<Recv<int, End>>);

// Choice aliases: the chooser's dual is the offer over the branch duals.
static_assert(std::is_same_v<dual_t<Choose<SqrSrv, End>>, Offer<dual_t<SqrSrv>, End>>);
static_assert(std::is_same_v<dual_t<Choose<IntStream, Ping>>, Offer<Dual<IntStream>, Recv<unit, End>>>);
static_assert(std::is_same_v<dual_t<Offer<SqrSrv, End>>, Choose<dual_t<SqrSrv>, End>>);

TEST(Protocol, NewSessionOfSendGivesDualRecv)
{
    auto [s, r] = detail::new_session<Ping>();
    static_assert(std::is_same_v<decltype(r), Recv<unit, End>>);
    EXPECT_TRUE(s.live());
    EXPECT_TRUE(r.live());
    cancel(std::move(s));
    cancel(std::move(r));
}

TEST(Protocol, NewSessionOfNamedProtocolAndItsDual)
{
    auto [a, b] = detail::new_session<IntStream>();
    static_assert(std::is_same_v<decltype(b), Dual<IntStream>>);
    auto [c, d] = detail::new_session<Dual<IntStream>>();
    static_assert(std::is_same_v<decltype(c), Dual<IntStream>>);
    static_assert(std::is_same_v<decltype(d), IntStream>);
    cancel(std::move(a));
    cancel(std::move(b));
    cancel(std::move(c));
    cancel(std::move(d));
}

TEST(Protocol, GeneratedFamilyIsInvolutive)
{
    ASSERT_GE(testkit::duality_family_distinct(), 500u);
    for (std::size_t i = 0; i < testkit::duality_family_size(); ++i)
    {
        EXPECT_TRUE(testkit::duality_involutive(i)) << testkit::describe(testkit::duality_family_steps(i));
    }
}

TEST(Protocol, GeneratedFamilyReachesFullDepth)
{
    std::size_t deepest = 0;
    bool endpoint_payload = false;
    for (std::size_t i = 0; i < testkit::duality_family_size(); ++i)
    {
        auto const& steps = testkit::duality_family_steps(i);
        deepest = std::max(deepest, steps.size() - 1);
        for (auto k : steps)
        {
            endpoint_payload |= k == testkit::step::send_endpoint || k == testkit::step::recv_endpoint;
        }
    }
    EXPECT_EQ(deepest, static_cast<std::size_t>(testkit::max_depth));
    EXPECT_TRUE(endpoint_payload);
}
