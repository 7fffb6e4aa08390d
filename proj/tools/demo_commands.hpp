#pragma once

// The demo programs behind `demo`. Each returns an exit code and writes
// newline-terminated decimal integers (or "pong") to `out`.

#include "sess/sess.hpp"

#include <cstdint>
#include <ostream>
#include <string_view>
#include <variant>
#include <vector>

namespace sess::demo
{
    enum exit_code : int
    {
        completed = 0,
        cancelled = 1,
        usage = 2,
    };

    using Ping = Send<unit, End>;

    using SqrSrv = Recv<std::int32_t, Send<std::int32_t, End>>;
    using NegSrv = Recv<std::int32_t, Send<std::int32_t, End>>;

    struct Sqr : label<SqrSrv>
    {
    };
    struct Neg : label<NegSrv>
    {
    };

    using CalcOp = std::variant<Sqr, Neg>;
    using CalcSrv = Recv<CalcOp, End>;
    using CalcCli = dual_t<CalcSrv>;

    struct IntStream : Send<std::int32_t, IntStream>
    {
    };

    // Two's complement wrap instead of signed overflow.
    inline std::int32_t square(std::int32_t x)
    {
        auto const u = static_cast<std::uint32_t>(x);
        return static_cast<std::int32_t>(u * u);
    }

    inline std::int32_t negate(std::int32_t x)
    {
        return static_cast<std::int32_t>(0u - static_cast<std::uint32_t>(x));
    }

    template <typename F>
    outcome serve_unary(Recv<std::int32_t, Send<std::int32_t, End>> s, F f)
    {
        auto got = recv(std::move(s));
        if (!got)
        {
            return std::nullopt;
        }
        auto [x, reply] = std::move(*got);
        return close(send(f(x), std::move(reply)));
    }

    inline outcome calc_server(CalcSrv s)
    {
        return offer(std::move(s), overloaded{
                                       [](Sqr op) { return serve_unary(std::move(op.session), square); },
                                       [](Neg op) { return serve_unary(std::move(op.session), negate); },
                                   });
    }

    inline int cmd_ping(std::ostream& out, bool cancel_child)
    {
        auto s = fork<Ping>([cancel_child](Ping s) -> outcome {
            if (cancel_child)
            {
                cancel(std::move(s));
                return done;
            }
            return close(send(unit{}, std::move(s)));
        });
        auto got = recv(std::move(s));
        if (!got)
        {
            return cancelled;
        }
        if (!close(std::move(got->second)))
        {
            return cancelled;
        }
        out << "pong\n";
        return completed;
    }

    enum class calc_op
    {
        sqr,
        neg,
    };

    inline int cmd_calc(std::ostream& out, calc_op op, std::int32_t x)
    {
        auto cli = fork<CalcSrv>(calc_server);
        auto s = op == calc_op::sqr ? choose<Sqr>(std::move(cli)) : choose<Neg>(std::move(cli));
        auto got = recv(send(x, std::move(s)));
        if (!got)
        {
            return cancelled;
        }
        auto [z, end] = std::move(*got);
        if (!close(std::move(end)))
        {
            return cancelled;
        }
        out << z << '\n';
        return completed;
    }

    inline int cmd_fanin(std::ostream& out, std::int32_t n)
    {
        if (n < 1)
        {
            return usage;
        }
        std::vector<Recv<std::int32_t, End>> pool;
        pool.reserve(static_cast<std::size_t>(n));
        for (std::int32_t i = 0; i < n; ++i)
        {
            pool.push_back(fork<Send<std::int32_t, End>>(
                [i](Send<std::int32_t, End> s) { return close(send(i, std::move(s))); }));
        }
        int rc = completed;
        while (!pool.empty())
        {
            auto got = select_mut(pool);
            if (!got)
            {
                rc = cancelled;
                continue;
            }
            out << got->first << '\n';
            if (!close(std::move(got->second)))
            {
                rc = cancelled;
            }
        }
        return rc;
    }

    inline int cmd_stream(std::ostream& out, std::int32_t n)
    {
        if (n < 1)
        {
            return usage;
        }
        auto s = fork<IntStream>([n](IntStream s) -> outcome {
            for (std::int32_t i = 0; i < n; ++i)
            {
                s = send(i, std::move(s));
            }
            cancel(std::move(s));
            return done;
        });
        for (std::int32_t i = 0; i < n; ++i)
        {
            auto got = recv(std::move(s));
            if (!got)
            {
                return cancelled;
            }
            out << got->first << '\n';
            s = std::move(got->second);
        }
        cancel(std::move(s));
        return completed;
    }
}  // namespace sess::demo
