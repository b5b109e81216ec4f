#pragma once

#include <string>
#include <vector>

#include "gep/types.hpp"

namespace gep {

/// One broken invariant. `entity` names the offending item, e.g. "line L1".
struct Violation {
    std::string entity;
    std::string message;

    std::string to_string() const { return entity + ": " + message; }
};

/// Checks every type invariant and cross-reference of a system. Returns an
/// empty list when the system is well formed.
std::vector<Violation> validate_system(const SystemModel& system);

std::vector<Violation> validate_config(const ScenarioConfig& config);

}  // namespace gep
