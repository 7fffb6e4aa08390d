// Choosing a label that is not part of the choice must not compile.
#include "sess/sess.hpp"

#include <cstdint>
#include <variant>

using Srv = sess::Recv<std::int32_t, sess::End>;

struct Sqr : sess::label<Srv>
{
};
struct Neg : sess::label<Srv>
{
};
struct Cube : sess::label<Srv>
{
};

using Cli = sess::Send<std::variant<Sqr, Neg>, sess::End>;

sess::Send<std::int32_t, sess::End> pick(Cli s)
{
#ifdef SESS_COMPILE_FAIL
    return sess::choose<Cube>(std::move(s));
#else
    return sess::choose<Neg>(std::move(s));
#endif
}
