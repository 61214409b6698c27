#pragma once

namespace soliton::cli {

/// Entry point behind the command-line tool.  Exit codes: 0 success or
/// verified, 1 verification failure (replay mismatch, residual above
/// tolerance, or an expression domain violation), 2 usage or config error.
int run(int argc, char** argv);

}  // namespace soliton::cli
