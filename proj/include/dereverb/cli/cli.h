// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CLI_CLI_H_
#define DEREVERB_CLI_CLI_H_

#include <ostream>

namespace dereverb::cli {

// Parses arguments and runs one subcommand. Returns the process exit code.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace dereverb::cli

#endif  // DEREVERB_CLI_CLI_H_
