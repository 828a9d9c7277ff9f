#pragma once

namespace pabm::cli {

/// Entry point for the `pabm` tool. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace pabm::cli
