#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmeas/entropy.hpp"

namespace qm {

struct Preset {
    std::string name;
    DensityMatrix density;
    std::optional<StateVector> pure;  // set for pure presets
};

// Named states: bell (alias case3), case1 (independent maximally mixed
// spins), case2 (classically correlated spins), ghz, werner:<x>, nplet:<m>
// ((|0...0> + |1...1>)/sqrt(2) on m qubits).
Preset preset(const std::string& key);
std::vector<std::string> preset_names();

StateVector bell_state();
StateVector ghz_state(std::size_t qubits = 3);

}  // namespace qm
