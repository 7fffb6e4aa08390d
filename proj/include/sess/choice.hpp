#pragma once

// Choice is derived, not primitive. The chooser creates a fresh session for
// the branch, sends one endpoint wrapped in a label, cancels the End that
// follows and keeps the other endpoint. The offerer receives the label,
// cancels its End and continues on the wrapped endpoint. Cancelling both
// Ends acts as an asynchronous close; closing just one of them fails.

#include "sess/protocol.hpp"
#include "sess/session.hpp"

#include <concepts>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>

namespace sess
{
    /// Base of every label in a labelled choice. A label wraps exactly one
    /// session: the offerer's view of that branch.
    ///
    ///   struct Sqr : sess::label<SqrSrv> {};
    ///   struct Neg : sess::label<NegSrv> {};
    ///   using CalcOp = std::variant<Sqr, Neg>;
    ///   using CalcSrv = sess::Recv<CalcOp, sess::End>;
    template <typename S>
    struct label
    {
        using session_type = S;
        S session;
    };

    namespace detail
    {
        template <typename S>
        S label_session_of(label<S> const&);

        template <typename L>
        concept wraps_one_session = requires(L const& l) { detail::label_session_of(l); }
            && session<typename L::session_type> && std::is_aggregate_v<L>
            && (sizeof(L) == sizeof(label<typename L::session_type>));

        template <typename Sum>
        inline constexpr bool is_choice_sum_v = false;

        template <typename... Ls>
        inline constexpr bool is_choice_sum_v<std::variant<Ls...>> = (sizeof...(Ls) > 0) && (wraps_one_session<Ls> && ...);

        template <typename L, typename Sum>
        inline constexpr bool is_alternative_v = false;

        template <typename L, typename... Ls>
        inline constexpr bool is_alternative_v<L, std::variant<Ls...>> = ((std::is_same_v<L, Ls> ? 1 : 0) + ... + 0) == 1;

        template <typename Handler, typename Sum>
        inline constexpr bool covers_all_v = false;

        template <typename Handler, typename... Ls>
        inline constexpr bool covers_all_v<Handler, std::variant<Ls...>> = (std::invocable<Handler, Ls&&> && ...);
    }  // namespace detail

    /// A std::variant whose alternatives are distinct labels, each wrapping
    /// exactly one session.
    template <typename Sum>
    concept choice_sum = detail::is_choice_sum_v<Sum>;

    template <typename S1, typename S2>
    struct left : label<S1>
    {
    };

    template <typename S1, typename S2>
    struct right : label<S2>
    {
    };

    /// Binary sum of two sessions.
    template <typename S1, typename S2>
    using either = std::variant<left<S1, S2>, right<S1, S2>>;

    /// Choosing side of a binary choice: continues as S1 or S2.
    template <typename S1, typename S2>
    using Choose = Send<either<dual_t<S1>, dual_t<S2>>, End>;

    /// Offering side of a binary choice: continues as S1 or S2.
    template <typename S1, typename S2>
    using Offer = Recv<either<S1, S2>, End>;

    // A Choose<S1, S2> carries the offerer's view either<dual S1, dual S2>,
    // so O1/O2 below are the duals of the branches the chooser continues on.

    template <typename O1, typename O2>
    [[nodiscard]] dual_t<O1> choose_left(Send<either<O1, O2>, End> s)
    {
        auto [here, there] = detail::new_session<dual_t<O1>>();
        auto rest = send(left<O1, O2>{{std::move(there)}}, std::move(s));
        cancel(std::move(rest));
        return std::move(here);
    }

    template <typename O1, typename O2>
    [[nodiscard]] dual_t<O2> choose_right(Send<either<O1, O2>, End> s)
    {
        auto [here, there] = detail::new_session<dual_t<O2>>();
        auto rest = send(right<O1, O2>{{std::move(there)}}, std::move(s));
        cancel(std::move(rest));
        return std::move(here);
    }

    /// Waits for the peer's choice and runs `on_left` or `on_right` on the
    /// chosen branch. Returns nullopt, running neither, if the peer cancelled.
    template <typename S1, typename S2, typename P1, typename P2>
        requires std::invocable<P1, S1> && std::invocable<P2, S2>
    auto offer_either(Offer<S1, S2> s, P1 on_left, P2 on_right)
        -> std::common_type_t<std::invoke_result_t<P1, S1>, std::invoke_result_t<P2, S2>>
    {
        using result = std::common_type_t<std::invoke_result_t<P1, S1>, std::invoke_result_t<P2, S2>>;
        auto got = recv(std::move(s));
        if (!got)
        {
            return result{std::nullopt};
        }
        auto [choice, rest] = std::move(*got);
        cancel(std::move(rest));
        if (auto* l = std::get_if<0>(&choice))
        {
            return std::invoke(std::move(on_left), std::move(l->session));
        }
        return std::invoke(std::move(on_right), std::move(std::get<1>(choice).session));
    }

    /// Chooses the branch labelled L. Returns the chooser's endpoint for that
    /// branch, the dual of the session L wraps. Never blocks.
    ///
    ///   auto s = sess::choose<Sqr>(std::move(cli));
    template <typename L, typename Sum>
        requires choice_sum<Sum> && detail::is_alternative_v<L, Sum>
    [[nodiscard]] dual_t<typename L::session_type> choose(Send<Sum, End> s)
    {
        using branch = typename L::session_type;
        auto [offered, kept] = detail::new_session<branch>();
        auto rest = send(Sum{std::in_place_type<L>, L{{std::move(offered)}}}, std::move(s));
        cancel(std::move(rest));
        return std::move(kept);
    }

    /// Waits for the peer's choice and dispatches on its label. `handler`
    /// must accept every label of the sum (typically an sess::overloaded set);
    /// a missing label does not compile. Returns nullopt if the peer cancelled.
    template <typename Sum, typename Handler>
        requires choice_sum<Sum>
    auto offer(Recv<Sum, End> s, Handler&& handler)
    {
        static_assert(detail::covers_all_v<Handler, Sum>,
                      "offer: the handlers must cover every label of the choice");
        using result = decltype(std::visit(handler, std::declval<Sum&&>()));
        auto got = recv(std::move(s));
        if (!got)
        {
            return result{std::nullopt};
        }
        auto [choice, rest] = std::move(*got);
        cancel(std::move(rest));
        return std::visit(std::forward<Handler>(handler), std::move(choice));
    }

    /// Builds one callable out of several lambdas, one per label.
    template <typename... Fs>
    struct overloaded : Fs...
    {
        using Fs::operator()...;
    };
    template <typename... Fs>
    overloaded(Fs...) -> overloaded<Fs...>;
}  // namespace sess
