// The payload type is part of the protocol.
#include "sess/sess.hpp"

#include <cstdint>
#include <string>

using Chan = sess::Send<std::int32_t, sess::End>;

sess::End step(Chan s)
{
#ifdef SESS_COMPILE_FAIL
    return sess::send(std::string{"seven"}, std::move(s));
#else
    return sess::send(7, std::move(s));
#endif
}
