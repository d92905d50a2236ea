#ifndef QDYN_CLI_HPP
#define QDYN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qdyn/repspace.hpp"

namespace qdyn {

/// Exit codes: 0 pass, 1 a residual above tolerance, 2 evaluation failure, 3 bad input.
enum ExitCode { kExitPass = 0, kExitFail = 1, kExitEval = 2, kExitInput = 3 };

/// spin:J (J = 1/2 or 0.5), vector, osp3, spinor, file:PATH
Representation parse_rep_spec(const std::string& spec, AlgebraId id, double q);

/// "a:b:s" -> a, a+s, ... <= b; empty when b < a.
std::vector<double> parse_range(const std::string& text);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdyn

#endif  // QDYN_CLI_HPP
