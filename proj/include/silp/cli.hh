#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace silp
{
    namespace exit_code
    {
        constexpr int ok = 0;
        constexpr int answered_no = 1;
        constexpr int usage = 2;
        constexpr int validation = 3;
        constexpr int budget = 4;
    }

    /// Runs one subcommand. args excludes the program name. `-` as a path
    /// means in (for inputs) or out (for outputs).
    auto run_cli(const std::vector<std::string> & args, std::istream & in, std::ostream & out, std::ostream & err) -> int;
}
