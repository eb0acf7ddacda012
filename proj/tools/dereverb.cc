// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <iostream>

#include "dereverb/cli/cli.h"

int main(int argc, char** argv) {
  return dereverb::cli::Main(argc, argv, std::cout, std::cerr);
}
