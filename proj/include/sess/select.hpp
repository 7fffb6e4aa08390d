#pragma once

#include "sess/diagnostics.hpp"
#include "sess/oneshot.hpp"
#include "sess/protocol.hpp"
#include "sess/session.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sess
{
    /// Blocks until one endpoint in `pool` can complete its receive, completes
    /// it, and removes that endpoint; the others keep their order. Returns
    /// nullopt when the completed endpoint's peer had cancelled (the endpoint
    /// is still removed). Throws empty_selection on an empty pool.
    ///
    /// No fairness: with several endpoints ready, any of them may fire.
    template <typename T, typename S>
    [[nodiscard]] std::optional<std::pair<T, S>> select_mut(std::vector<Recv<T, S>>& pool)
    {
        if (pool.empty())
        {
            throw empty_selection{};
        }
        using channel_type = std::remove_cvref_t<decltype(detail::access::channel(pool.front()))>;
        using message_type = std::pair<T, S>;
        static_assert(std::is_same_v<channel_type, oneshot::receiver<message_type>>);

        std::vector<channel_type const*> channels;
        channels.reserve(pool.size());
        for (auto const& r : pool)
        {
            if (!r.live())
            {
                throw double_use{"select on an endpoint that was already consumed"};
            }
            channels.push_back(&detail::access::channel(r));
        }

        auto const fired = oneshot::ready_index<message_type>(std::span<channel_type const* const>{channels});
        Recv<T, S> chosen = std::move(pool[fired]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(fired));
        return recv(std::move(chosen));
    }

    /// What select hands back: the received message (or nullopt on a
    /// cancelled peer) and the endpoints that did not fire.
    template <typename T, typename S>
    struct selection
    {
        std::optional<std::pair<T, S>> message;
        std::vector<Recv<T, S>> rest;
    };

    /// By-value variant of select_mut.
    template <typename T, typename S>
    [[nodiscard]] selection<T, S> select(std::vector<Recv<T, S>> pool)
    {
        auto message = select_mut(pool);
        return {std::move(message), std::move(pool)};
    }
}  // namespace sess
