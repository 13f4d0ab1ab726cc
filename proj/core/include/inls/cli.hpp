#pragma once

namespace inls {

/// Command-line entry. Subcommands:
///   ground-state | evolve | s-family | verify | transform
/// Exit codes: 0 ok, 1 check failure, 2 usage error, 3 numerical failure.
int dispatch(int argc, const char* const* argv);

} // namespace inls
