#pragma once

#include <string>
#include <vector>

namespace wolffpot {

/// A bundled scenario with the exit status its run is expected to produce
/// (the rejection scenarios exercise the refusal paths on purpose).
struct RegistryEntry {
    std::string name;
    std::string json_text;
    int expected_exit;
};

const std::vector<RegistryEntry>& scenario_registry();
const RegistryEntry* find_scenario(const std::string& name);

}  // namespace wolffpot
