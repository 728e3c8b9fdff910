#pragma once

#include <iosfwd>

namespace qinv {

// Runs one command line. Exit codes: 0 success, 1 usage or computation
// error, 2 a verification failed.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qinv
