#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pickdirichlet {

// Command dispatch behind the pickdirichlet binary. Exit codes: 0 success
// (JSON on out), 1 domain errors (structured error object), 2 malformed
// input or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace pickdirichlet
