#pragma once

#include <atomic>
#include <cstdio>
#include <stdexcept>

namespace sess
{
    /// Raised when an endpoint that was already consumed (moved into an
    /// operation, or moved from) is used again. This is a programming
    /// error, never a cancellation.
    class double_use : public std::logic_error
    {
    public:
        explicit double_use(char const* what)
            : std::logic_error{what}
        {
        }
    };

    /// Raised by select/select_mut when handed an empty pool.
    class empty_selection : public std::logic_error
    {
    public:
        empty_selection()
            : std::logic_error{"select on an empty pool of endpoints"}
        {
        }
    };

    /// Called when an endpoint is destroyed without being consumed and
    /// without an explicit cancel(). `kind` is "send", "recv" or "end".
    using discard_observer = void (*)(char const* kind);

    namespace detail
    {
        inline void print_discard(char const* kind)
        {
            std::fprintf(stderr, "sess: %s endpoint dropped without being used; call sess::cancel to silence\n", kind);
        }

#ifdef SESS_WARN_UNUSED
        inline constexpr discard_observer default_discard_observer = &print_discard;
#else
        inline constexpr discard_observer default_discard_observer = nullptr;
#endif

        inline std::atomic<discard_observer>& discard_observer_slot()
        {
            static std::atomic<discard_observer> slot{default_discard_observer};
            return slot;
        }

        // Depth of explicit cancellation on this thread. Endpoints destroyed
        // while it is non-zero were dropped on purpose.
        inline int& quiet_depth()
        {
            thread_local int depth = 0;
            return depth;
        }

        struct quiet_scope
        {
            quiet_scope() { ++quiet_depth(); }
            ~quiet_scope() { --quiet_depth(); }
            quiet_scope(quiet_scope const&) = delete;
            quiet_scope& operator=(quiet_scope const&) = delete;
        };

        inline void report_discard(char const* kind) noexcept
        {
            if (quiet_depth() > 0)
            {
                return;
            }
            if (auto obs = discard_observer_slot().load(std::memory_order_acquire))
            {
                obs(kind);
            }
        }
    }  // namespace detail

    /// Installs `obs` and returns the previous observer. Pass nullptr to
    /// disable. Defining SESS_WARN_UNUSED makes the default observer print
    /// a warning to stderr.
    inline discard_observer set_discard_observer(discard_observer obs) noexcept
    {
        return detail::discard_observer_slot().exchange(obs, std::memory_order_acq_rel);
    }
}  // namespace sess
