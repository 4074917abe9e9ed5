#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tatespace {

struct LawResult {
    bool ok = true;
    std::string detail;  ///< first counterexample, or the instance count on success
};

/// A randomized invariant. `module` groups laws for the check suites.
struct Law {
    std::string module;
    std::string name;
    std::function<LawResult(std::uint64_t seed)> run;
};

/// One law per stated invariant of the library modules.
const std::vector<Law>& all_laws();

struct SuiteOutcome {
    bool ok = true;
    std::vector<std::pair<const Law*, LawResult>> results;  ///< in registry order
};

/// suite: laws (everything) | grid (bidirected) | appendix (splitting and
/// functional extension). Laws run concurrently, each on its own seeded
/// generator; results come back in registry order. Throws
/// PreconditionError for unknown suite names.
SuiteOutcome run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace tatespace
