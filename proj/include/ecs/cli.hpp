#pragma once

#include <iosfwd>

namespace ecs::cli {

// Exit codes: 0 success, 1 check failed, 2 invalid flags, 3 exact-size
// refusal, 4 I/O error, 5 no interior optimum, 6 truncation failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ecs::cli
