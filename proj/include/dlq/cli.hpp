#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dlq::cli {

// Exit codes of the `dlq` front end.
enum Exit : int { kOk = 0, kTypeError = 1, kParseError = 2, kRuntimeError = 3, kEnvironment = 4 };

// Runs one `dlq` command. `args` excludes the program name. Results go to
// `out`; failures print `ERROR <category> <line>:<col>` and prose to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlq::cli
