#ifndef NOVIKOV_TOOLS_CLI_APP_HPP
#define NOVIKOV_TOOLS_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

namespace novikov::cli
{

// Exit codes shared by the subcommands.
enum Exit : int {
    ok = 0,
    parse_error = 1,
    invalid = 2, // invalid complex (betti), failed precondition (ring)
    inequality_violated = 3,
    hypothesis_violated = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace novikov::cli

#endif
