#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gv::cli {

// Runs one subcommand (verify / expand / intersect / rr / oracle).
// Exit codes: 0 all checks verified (cited rules and hypotheses permitted),
// 1 a verification step failed, 2 usage or input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gv::cli
