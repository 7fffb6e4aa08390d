// Offering a labelled choice requires a handler for every label.
#include "sess/sess.hpp"

#include <cstdint>
#include <variant>

using Srv = sess::Recv<std::int32_t, sess::Send<std::int32_t, sess::End>>;

struct Sqr : sess::label<Srv>
{
};
struct Neg : sess::label<Srv>
{
};

using Calc = sess::Recv<std::variant<Sqr, Neg>, sess::End>;

sess::outcome serve(Calc s)
{
    return sess::offer(std::move(s), sess::overloaded{
                                         [](Sqr op) -> sess::outcome { sess::cancel(std::move(op)); return sess::done; },
#ifndef SESS_COMPILE_FAIL
                                         [](Neg op) -> sess::outcome { sess::cancel(std::move(op)); return sess::done; },
#endif
                                     });
}
