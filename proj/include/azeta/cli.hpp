#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace azeta {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Entry point of the `azeta` tool; args excludes the program name.
/// Exit 0 iff every lemma-level check passed, 1 on a failed check (a witness is
/// printed), 2 on a usage error. Conjecture findings never change the status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace azeta
