#pragma once

// One-shot channels: a capacity-one slot shared by exactly one sender half
// and one receiver half. Dropping either half disconnects the channel.
// Sending never blocks and never fails; receiving blocks until a value
// arrives or the sender is gone.

#include "sess/diagnostics.hpp"

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace sess::oneshot
{
#ifdef SESS_SUBSTRATE_PROBE
    /// Counts substrate calls. Only present when SESS_SUBSTRATE_PROBE is
    /// defined; used by tests to check which layers touch channels.
    struct probe_counters
    {
        std::atomic<long> created{0};
        std::atomic<long> sent{0};
        std::atomic<long> received{0};
        std::atomic<long> ready_calls{0};
    };

    inline probe_counters& probe()
    {
        static probe_counters counters;
        return counters;
    }
#define SESS_PROBE_BUMP(field) (::sess::oneshot::probe().field.fetch_add(1, std::memory_order_relaxed))
#else
#define SESS_PROBE_BUMP(field) ((void)0)
#endif

    namespace detail
    {
        // Wakes a task blocked in ready_index.
        struct waiter
        {
            std::mutex mutex;
            std::condition_variable cv;
            bool fired = false;

            void fire()
            {
                {
                    std::lock_guard lock{mutex};
                    fired = true;
                }
                cv.notify_one();
            }
        };

        template <typename T>
        struct state
        {
            std::mutex mutex;
            std::condition_variable cv;
            std::optional<T> slot;
            int refs = 2;
            bool disconnected = false;
            waiter* watcher = nullptr;

            bool ready_locked() const { return slot.has_value() || disconnected; }

            void wake_locked()
            {
                cv.notify_all();
                if (watcher != nullptr)
                {
                    watcher->fire();
                }
            }

            // Drops one half. Returns any payload that must be destroyed
            // once the lock is released.
            std::optional<T> release(bool is_receiver)
            {
                std::optional<T> orphan;
                std::lock_guard lock{mutex};
                --refs;
                if (refs == 1)
                {
                    disconnected = true;
                }
                if (is_receiver && slot.has_value())
                {
                    orphan = std::move(slot);
                    slot.reset();
                }
                wake_locked();
                return orphan;
            }

            int refcount()
            {
                std::lock_guard lock{mutex};
                return refs;
            }
        };

        // Destroys a payload that nobody will ever receive. Any endpoint it
        // carries is cancelled, which is intentional, so stay quiet.
        template <typename T>
        void discard(std::optional<T>&& payload)
        {
            if (payload.has_value())
            {
                sess::detail::quiet_scope quiet;
                payload.reset();
            }
        }
    }  // namespace detail

    template <typename T>
    class sender;
    template <typename T>
    class receiver;

    template <typename T>
    std::pair<sender<T>, receiver<T>> make();

    template <typename T>
    class sender
    {
    public:
        sender(sender&& other) noexcept = default;

        sender& operator=(sender&& other) noexcept
        {
            if (this != &other)
            {
                reset();
                state_ = std::move(other.state_);
            }
            return *this;
        }

        sender(sender const&) = delete;
        sender& operator=(sender const&) = delete;

        ~sender() { reset(); }

        [[nodiscard]] bool live() const noexcept { return state_ != nullptr; }

        /// Number of halves still holding the channel (2, 1) or 0 once consumed.
        [[nodiscard]] int refcount() const { return state_ ? state_->refcount() : 0; }

        /// Disconnects the channel. Equivalent to letting the half go out of scope.
        void reset()
        {
            if (auto s = std::move(state_))
            {
                s->release(false);
            }
        }

    private:
        template <typename U>
        friend std::pair<sender<U>, receiver<U>> make();
        template <typename U>
        friend void send(sender<U>&& tx, U value);

        explicit sender(std::shared_ptr<detail::state<T>> s)
            : state_{std::move(s)}
        {
        }

        std::shared_ptr<detail::state<T>> state_;
    };

    template <typename T>
    class receiver
    {
    public:
        receiver(receiver&& other) noexcept = default;

        receiver& operator=(receiver&& other) noexcept
        {
            if (this != &other)
            {
                reset();
                state_ = std::move(other.state_);
            }
            return *this;
        }

        receiver(receiver const&) = delete;
        receiver& operator=(receiver const&) = delete;

        ~receiver() { reset(); }

        [[nodiscard]] bool live() const noexcept { return state_ != nullptr; }

        [[nodiscard]] int refcount() const { return state_ ? state_->refcount() : 0; }

        /// Non-blocking readiness check: a value is buffered or the sender is gone.
        [[nodiscard]] bool ready() const
        {
            if (!state_)
            {
                throw double_use{"oneshot receiver used after it was consumed"};
            }
            std::lock_guard lock{state_->mutex};
            return state_->ready_locked();
        }

        /// Disconnects the channel and destroys any buffered value.
        void reset()
        {
            if (auto s = std::move(state_))
            {
                detail::discard(s->release(true));
            }
        }

    private:
        template <typename U>
        friend std::pair<sender<U>, receiver<U>> make();
        template <typename U>
        friend std::optional<U> recv(receiver<U>&& rx);
        template <typename U>
        friend std::size_t ready_index(std::span<receiver<U> const* const> pool);

        explicit receiver(std::shared_ptr<detail::state<T>> s)
            : state_{std::move(s)}
        {
        }

        std::shared_ptr<detail::state<T>> state_;
    };

    /// Creates a connected pair. Both halves start with refcount 2.
    template <typename T>
    std::pair<sender<T>, receiver<T>> make()
    {
        SESS_PROBE_BUMP(created);
        auto s = std::make_shared<detail::state<T>>();
        return {sender<T>{s}, receiver<T>{s}};
    }

    /// Buffers `value` for the receiver, or destroys it if the receiver is
    /// gone. Never blocks. Consumes the sender.
    template <typename T>
    void send(sender<T>&& tx, T value)
    {
        auto s = std::move(tx.state_);
        if (!s)
        {
            throw double_use{"oneshot sender used after it was consumed"};
        }
        SESS_PROBE_BUMP(sent);
        std::optional<T> orphan;
        {
            std::lock_guard lock{s->mutex};
            if (s->refs < 2)
            {
                orphan.emplace(std::move(value));
            }
            else
            {
                s->slot.emplace(std::move(value));
                s->wake_locked();
            }
        }
        detail::discard(std::move(orphan));
        s->release(false);
    }

    /// Blocks until a value is buffered or the sender half is dropped.
    /// Returns the value, or nullopt on disconnect. Consumes the receiver.
    template <typename T>
    std::optional<T> recv(receiver<T>&& rx)
    {
        auto s = std::move(rx.state_);
        if (!s)
        {
            throw double_use{"oneshot receiver used after it was consumed"};
        }
        SESS_PROBE_BUMP(received);
        std::optional<T> value;
        {
            std::unique_lock lock{s->mutex};
            s->cv.wait(lock, [&] { return s->ready_locked(); });
            value = std::move(s->slot);
            s->slot.reset();
        }
        detail::discard(s->release(true));
        return value;
    }

    namespace detail
    {
        inline std::size_t random_offset(std::size_t n)
        {
            thread_local std::minstd_rand rng{std::random_device{}()};
            return std::uniform_int_distribution<std::size_t>{0, n - 1}(rng);
        }
    }  // namespace detail

    /// Blocks until at least one receiver in `pool` is ready (value buffered
    /// or peer gone) and returns the index of a ready one. When several are
    /// ready the choice among them is unspecified. The caller is expected to
    /// complete a receive on the returned index. `pool` must be non-empty.
    template <typename T>
    std::size_t ready_index(std::span<receiver<T> const* const> pool)
    {
        if (pool.empty())
        {
            throw empty_selection{};
        }
        SESS_PROBE_BUMP(ready_calls);
        for (auto const* rx : pool)
        {
            if (rx == nullptr || !rx->state_)
            {
                throw double_use{"oneshot receiver used after it was consumed"};
            }
        }

        detail::waiter w;
        std::size_t registered = 0;
        bool any_ready = false;
        for (; registered < pool.size(); ++registered)
        {
            auto& s = *pool[registered]->state_;
            std::lock_guard lock{s.mutex};
            if (s.ready_locked())
            {
                any_ready = true;
                break;
            }
            s.watcher = &w;
        }

        if (!any_ready)
        {
            std::unique_lock lock{w.mutex};
            w.cv.wait(lock, [&] { return w.fired; });
        }

        for (std::size_t i = 0; i < registered; ++i)
        {
            auto& s = *pool[i]->state_;
            std::lock_guard lock{s.mutex};
            if (s.watcher == &w)
            {
                s.watcher = nullptr;
            }
        }

        // The watcher is detached everywhere now, so `w` may die safely.
        // Every wake-up comes from a send or a sender drop, both of which
        // leave their channel ready for good.
        std::size_t const start = detail::random_offset(pool.size());
        for (;;)
        {
            for (std::size_t k = 0; k < pool.size(); ++k)
            {
                std::size_t const i = (start + k) % pool.size();
                auto& s = *pool[i]->state_;
                std::lock_guard lock{s.mutex};
                if (s.ready_locked())
                {
                    return i;
                }
            }
        }
    }

    /// Convenience overload for a contiguous pool of receivers.
    template <typename T>
    std::size_t ready_index(std::span<receiver<T> const> pool)
    {
        std::vector<receiver<T> const*> ptrs;
        ptrs.reserve(pool.size());
        for (auto const& rx : pool)
        {
            ptrs.push_back(&rx);
        }
        return ready_index<T>(std::span<receiver<T> const* const>{ptrs});
    }
}  // namespace sess::oneshot
