#pragma once

#include <string>

#include "remap/machine.hpp"
#include "remap/machine_io.hpp"

#ifndef REMAP_FIXTURE_DIR
#define REMAP_FIXTURE_DIR "fixtures"
#endif

namespace remap::testing {

inline std::string fixture(const std::string& name) { return std::string(REMAP_FIXTURE_DIR) + "/" + name; }

inline MooreMachine astarb() { return std::get<MooreMachine>(load_machine(fixture("astarb.json"))); }

}  // namespace remap::testing
