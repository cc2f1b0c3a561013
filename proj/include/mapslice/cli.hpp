#pragma once

#include <string>
#include <vector>

#include "mapslice/bbform.hpp"

namespace mapslice {

// Command-line driver. Exit codes: 0 success, 1 input error, 2 I/O error.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without the program name

// The bundled synthetic demonstration mesh: a small tower of perturbed,
// translated maps. Deterministic.
std::vector<TrivariateMap> demo_mesh_maps();

}  // namespace mapslice
