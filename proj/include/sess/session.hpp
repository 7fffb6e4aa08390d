#pragma once

#include "sess/diagnostics.hpp"
#include "sess/oneshot.hpp"
#include "sess/protocol.hpp"

#include <concepts>
#include <functional>
#include <memory>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>

namespace sess
{
    /// Result of a process that may observe a cancelled session.
    using outcome = std::optional<unit>;

    /// The successful outcome.
    inline constexpr outcome done{std::in_place};

    namespace detail
    {
        struct runnable
        {
            virtual ~runnable() = default;
            virtual void run() noexcept = 0;
        };

        // One non-template thread launch shared by every fork instantiation.
        inline void spawn_detached(std::unique_ptr<runnable> job)
        {
            std::thread{[j = std::move(job)] { j->run(); }}.detach();
        }

        template <typename S, typename Process>
        struct forked_process final : runnable
        {
            forked_process(Process p, S s)
                : process{std::move(p)}
                , endpoint{std::move(s)}
            {
            }

            void run() noexcept override
            {
                try
                {
                    [[maybe_unused]] outcome r = std::invoke(std::move(process), std::move(endpoint));
                }
                catch (...)
                {
                }
            }

            Process process;
            S endpoint;
        };
    }  // namespace detail

    /// Sends `x` and returns the continuation. Never blocks, never fails:
    /// if the peer has cancelled, `x` is cancelled instead.
    template <typename T, typename S>
    [[nodiscard]] S send(std::type_identity_t<T> x, Send<T, S> s)
    {
        static_assert(session<S>, "the continuation of a session must itself be a session");
        auto& channel = detail::access::channel(s);
        if (!channel.live())
        {
            throw double_use{"send on an endpoint that was already consumed"};
        }
        auto [here, there] = detail::new_session<S>();
        oneshot::send(std::move(channel), std::pair<T, dual_t<S>>{std::move(x), std::move(there)});
        return std::move(here);
    }

    /// Blocks for the next message. Returns the value and the continuation,
    /// or nullopt if the peer cancelled.
    template <typename T, typename S>
    [[nodiscard]] std::optional<std::pair<T, S>> recv(Recv<T, S> s)
    {
        static_assert(session<S>, "the continuation of a session must itself be a session");
        auto& channel = detail::access::channel(s);
        if (!channel.live())
        {
            throw double_use{"recv on an endpoint that was already consumed"};
        }
        return oneshot::recv(std::move(channel));
    }

    /// Synchronous close: returns once the peer has also called close, or
    /// nullopt if the peer cancelled.
    inline outcome close(End s)
    {
        auto& tx = detail::access::sender(s);
        auto& rx = detail::access::receiver(s);
        if (!tx.live() || !rx.live())
        {
            throw double_use{"close on an endpoint that was already consumed"};
        }
        oneshot::send(std::move(tx), unit{});
        if (!oneshot::recv(std::move(rx)))
        {
            return std::nullopt;
        }
        return done;
    }

    /// Drops `x` on purpose. Every session endpoint inside it is cancelled
    /// and its peer's next recv or close returns nullopt. Unlike an implicit
    /// drop this never triggers the unused-endpoint diagnostic.
    template <typename T>
    void cancel(T&& x)
    {
        detail::quiet_scope quiet;
        [[maybe_unused]] std::remove_cvref_t<T> sink{std::forward<T>(x)};
    }

    /// Starts `process` on a new thread with one endpoint of a fresh session
    /// and returns the other endpoint. If the process returns nullopt or
    /// throws, the failure stays in the child: its endpoints are cancelled
    /// and peers see that as a cancelled session.
    template <typename S, typename Process>
        requires session<S> && std::invocable<Process, S>
        && std::convertible_to<std::invoke_result_t<Process, S>, outcome>
    [[nodiscard]] dual_t<S> fork(Process process)
    {
        auto [here, there] = detail::new_session<S>();
        detail::spawn_detached(std::make_unique<detail::forked_process<S, Process>>(std::move(process), std::move(here)));
        return std::move(there);
    }
}  // namespace sess
