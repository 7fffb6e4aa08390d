#pragma once

// Affine binary session types over one-shot channels.

#include "sess/choice.hpp"
#include "sess/diagnostics.hpp"
#include "sess/protocol.hpp"
#include "sess/select.hpp"
#include "sess/session.hpp"
