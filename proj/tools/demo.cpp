#include "demo_commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv)
{
    namespace demo = sess::demo;

    CLI::App app{"Session-typed communication demos"};
    app.require_subcommand(1);

    bool cancel_child = false;
    auto* ping = app.add_subcommand("ping", "fork a child that sends a ping; print pong");
    ping->add_flag("--cancel", cancel_child, "make the child cancel instead of sending");

    demo::calc_op op = demo::calc_op::sqr;
    std::int32_t x = 0;
    auto* calc = app.add_subcommand("calc", "ask a forked calculator server to square or negate");
    std::map<std::string, demo::calc_op> const ops{{"sqr", demo::calc_op::sqr}, {"neg", demo::calc_op::neg}};
    calc->add_option("op", op, "sqr or neg")->required()->transform(CLI::CheckedTransformer(ops, CLI::ignore_case));
    calc->add_option("x", x, "32-bit integer operand")->required();

    std::int32_t n = 0;
    auto* fanin = app.add_subcommand("fanin", "fork n senders and select over them");
    fanin->add_option("n", n, "number of senders")->required()->check(CLI::PositiveNumber);

    auto* stream = app.add_subcommand("stream", "stream 0..n-1 over a recursive session");
    stream->add_option("n", n, "number of values")->required()->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return demo::usage;
    }

    int rc = demo::usage;
    if (ping->parsed())
    {
        rc = demo::cmd_ping(std::cout, cancel_child);
    }
    else if (calc->parsed())
    {
        rc = demo::cmd_calc(std::cout, op, x);
    }
    else if (fanin->parsed())
    {
        rc = demo::cmd_fanin(std::cout, n);
    }
    else if (stream->parsed())
    {
        rc = demo::cmd_stream(std::cout, n);
    }
    std::cout.flush();
    if (rc == demo::cancelled)
    {
        std::cerr << "session cancelled\n";
    }
    return rc;
}
