#ifndef SINKSTABLE_CLI_HPP
#define SINKSTABLE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sinkstable::cli {

/// Runs one command (argv without the program name). Exit code 0 covers
/// mathematical "no" answers; nonzero means usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sinkstable::cli

#endif
