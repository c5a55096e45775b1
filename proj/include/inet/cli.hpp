#pragma once

#include <ostream>

namespace inet {

// Subcommands check, reduce and collapse. Returns 0 on success, 1 when the
// input is rejected, 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace inet
