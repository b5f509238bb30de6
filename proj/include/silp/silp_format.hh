#pragma once

#include <silp/instance.hh>

#include <istream>
#include <string>
#include <string_view>

namespace silp
{
    /*
     * SILP text format, one instance per file:
     *
     *   silp 1
     *   param r <int>                      (optional)
     *   param d <int>                      (optional)
     *   var <name> <lower> <upper>         (declaration order)
     *   con <tag>: <coef>*<name> [+|- <coef>*<name> ...] <= <rhs>
     *   con <tag>: 0 <= <rhs>              (row without variables)
     *
     * A term without '*' is a bare name with coefficient 1, or -1 when written -<name>.
     *
     * Coefficients and rhs are integers or p/q. '#' starts a comment. The
     * writer emits single spaces, lowest-term rationals and terms in VarId
     * order, so parse(serialize(I)) == I and serialize is byte-stable.
     */
    auto parse_silp(std::istream & in) -> IlpInstance;
    auto parse_silp(std::string_view text) -> IlpInstance;

    auto serialize_silp(const IlpInstance & instance) -> std::string;
}
