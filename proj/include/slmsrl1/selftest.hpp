#pragma once

#include <iosfwd>

namespace slmsrl1 {

/// Quick invariant checks of the installed build; prints one PASS/FAIL line
/// per check and returns the number of failures.
int run_selftest(std::ostream& os);

}  // namespace slmsrl1
