#pragma once

// Session types. A protocol is built from three primitives:
//
//   Send<T, S>   send a T, continue as S
//   Recv<T, S>   receive a T, continue as S
//   End          close the session
//
// Values of these types are endpoints. Every endpoint is move-only and is
// consumed by exactly one operation; the operation hands back the
// continuation endpoint.
//
// Recursive protocols are written as a named struct deriving from a
// primitive, which gives the recursion a name to refer to:
//
//   struct IntStream : sess::Send<std::int32_t, IntStream> {};
//
// The peer of a named protocol P is sess::Dual<P>.

#include "sess/diagnostics.hpp"
#include "sess/oneshot.hpp"

#include <concepts>
#include <type_traits>
#include <utility>
#include <variant>

namespace sess
{
    using unit = std::monostate;

    template <typename T, typename S>
    class Send;
    template <typename T, typename S>
    class Recv;
    class End;
    template <typename P>
    struct Dual;

    namespace detail
    {
        struct access;

        template <typename S>
        struct dual_of
        {
            // Named protocol: its peer is named by Dual<S>.
            using type = Dual<S>;
        };

        template <>
        struct dual_of<End>
        {
            using type = End;
        };

        template <typename P>
        struct dual_of<Dual<P>>
        {
            using type = P;
        };
    }  // namespace detail

    /// The peer's view of protocol S. Involutive: dual_t<dual_t<S>> is S.
    template <typename S>
    using dual_t = typename detail::dual_of<S>::type;

    namespace detail
    {
        template <typename T, typename S>
        struct dual_of<Send<T, S>>
        {
            using type = Recv<T, dual_t<S>>;
        };

        template <typename T, typename S>
        struct dual_of<Recv<T, S>>
        {
            using type = Send<T, dual_t<S>>;
        };

        template <typename T>
        inline constexpr bool is_primitive_v = false;
        template <typename T, typename S>
        inline constexpr bool is_primitive_v<Send<T, S>> = true;
        template <typename T, typename S>
        inline constexpr bool is_primitive_v<Recv<T, S>> = true;
        template <>
        inline constexpr bool is_primitive_v<End> = true;

        template <typename T, typename S>
        Send<T, S> primitive_base(Send<T, S> const&);
        template <typename T, typename S>
        Recv<T, S> primitive_base(Recv<T, S> const&);
        End primitive_base(End const&);

        /// The primitive protocol a named protocol derives from.
        template <typename P>
        using primitive_of_t = decltype(primitive_base(std::declval<P const&>()));
    }  // namespace detail

    /// Satisfied by every session type: the primitives, named protocols
    /// deriving from a primitive, and their duals.
    template <typename S>
    concept session = requires(S const& s) { detail::primitive_base(s); }
        && std::is_move_constructible_v<S> && !std::is_copy_constructible_v<S>
        && (sizeof(S) == sizeof(detail::primitive_of_t<S>));

    template <typename T, typename S>
    class [[nodiscard]] Send
    {
    public:
        using payload_type = T;
        using continuation_type = S;

        Send(Send&&) noexcept = default;
        Send& operator=(Send&& other) noexcept
        {
            if (this != &other)
            {
                drop();
                channel_ = std::move(other.channel_);
            }
            return *this;
        }
        Send(Send const&) = delete;
        Send& operator=(Send const&) = delete;
        ~Send() { drop(); }

        /// False once the endpoint has been consumed or moved from.
        [[nodiscard]] bool live() const noexcept { return channel_.live(); }

    private:
        friend struct detail::access;
        using channel_type = oneshot::sender<std::pair<T, dual_t<S>>>;

        explicit Send(channel_type ch) noexcept
            : channel_{std::move(ch)}
        {
        }

        void drop()
        {
            if (channel_.live())
            {
                detail::report_discard("send");
                channel_.reset();
            }
        }

        channel_type channel_;
    };

    template <typename T, typename S>
    class [[nodiscard]] Recv
    {
    public:
        using payload_type = T;
        using continuation_type = S;

        Recv(Recv&&) noexcept = default;
        Recv& operator=(Recv&& other) noexcept
        {
            if (this != &other)
            {
                drop();
                channel_ = std::move(other.channel_);
            }
            return *this;
        }
        Recv(Recv const&) = delete;
        Recv& operator=(Recv const&) = delete;
        ~Recv() { drop(); }

        [[nodiscard]] bool live() const noexcept { return channel_.live(); }

    private:
        friend struct detail::access;
        using channel_type = oneshot::receiver<std::pair<T, S>>;

        explicit Recv(channel_type ch) noexcept
            : channel_{std::move(ch)}
        {
        }

        void drop()
        {
            if (channel_.live())
            {
                detail::report_discard("recv");
                channel_.reset();
            }
        }

        channel_type channel_;
    };

    /// A completed session. close() is synchronous: it is simulated with two
    /// unit channels running crosswise between the peers.
    class [[nodiscard]] End
    {
    public:
        End(End&&) noexcept = default;
        End& operator=(End&& other) noexcept
        {
            if (this != &other)
            {
                drop();
                sender_ = std::move(other.sender_);
                receiver_ = std::move(other.receiver_);
            }
            return *this;
        }
        End(End const&) = delete;
        End& operator=(End const&) = delete;
        ~End() { drop(); }

        [[nodiscard]] bool live() const noexcept { return sender_.live() || receiver_.live(); }

    private:
        friend struct detail::access;

        End(oneshot::sender<unit> tx, oneshot::receiver<unit> rx) noexcept
            : sender_{std::move(tx)}
            , receiver_{std::move(rx)}
        {
        }

        void drop()
        {
            if (live())
            {
                detail::report_discard("end");
                sender_.reset();
                receiver_.reset();
            }
        }

        oneshot::sender<unit> sender_;
        oneshot::receiver<unit> receiver_;
    };

    /// The peer of a named protocol P.
    template <typename P>
    struct Dual : dual_t<detail::primitive_of_t<P>>
    {
    };

    namespace detail
    {
        // Internal constructor and field access for the session layer.
        struct access
        {
            template <typename T, typename S>
            static Send<T, S> make_send(typename Send<T, S>::channel_type ch)
            {
                return Send<T, S>{std::move(ch)};
            }

            template <typename T, typename S>
            static Recv<T, S> make_recv(typename Recv<T, S>::channel_type ch)
            {
                return Recv<T, S>{std::move(ch)};
            }

            static End make_end(oneshot::sender<unit> tx, oneshot::receiver<unit> rx)
            {
                return End{std::move(tx), std::move(rx)};
            }

            template <typename T, typename S>
            static auto& channel(Send<T, S>& s) noexcept
            {
                return s.channel_;
            }

            template <typename T, typename S>
            static auto& channel(Recv<T, S>& s) noexcept
            {
                return s.channel_;
            }

            template <typename T, typename S>
            static auto const& channel(Recv<T, S> const& s) noexcept
            {
                return s.channel_;
            }

            static auto& sender(End& e) noexcept { return e.sender_; }
            static auto& receiver(End& e) noexcept { return e.receiver_; }
        };

        template <typename S>
        struct session_maker;

        template <>
        struct session_maker<End>
        {
            static std::pair<End, End> make()
            {
                auto [tx1, rx1] = oneshot::make<unit>();
                auto [tx2, rx2] = oneshot::make<unit>();
                return {access::make_end(std::move(tx1), std::move(rx2)),
                        access::make_end(std::move(tx2), std::move(rx1))};
            }
        };

        template <typename T, typename S>
        struct session_maker<Send<T, S>>
        {
            static std::pair<Send<T, S>, Recv<T, dual_t<S>>> make()
            {
                auto [tx, rx] = oneshot::make<std::pair<T, dual_t<S>>>();
                return {access::make_send<T, S>(std::move(tx)),
                        access::make_recv<T, dual_t<S>>(std::move(rx))};
            }
        };

        template <typename T, typename S>
        struct session_maker<Recv<T, S>>
        {
            static std::pair<Recv<T, S>, Send<T, dual_t<S>>> make()
            {
                auto [tx, rx] = oneshot::make<std::pair<T, S>>();
                return {access::make_recv<T, S>(std::move(rx)),
                        access::make_send<T, dual_t<S>>(std::move(tx))};
            }
        };

        /// Creates two connected, dual endpoints. Not part of the public
        /// API: sessions built this way and handed to raw threads can form
        /// cycles and deadlock. Use sess::fork instead.
        template <typename S>
        std::pair<S, dual_t<S>> new_session()
        {
            if constexpr (is_primitive_v<S>)
            {
                return session_maker<S>::make();
            }
            else
            {
                static_assert(session<S>, "new_session: not a session type");
                using base = primitive_of_t<S>;
                auto [here, there] = session_maker<base>::make();
                return {S{std::move(here)}, dual_t<S>{std::move(there)}};
            }
        }
    }  // namespace detail
}  // namespace sess
