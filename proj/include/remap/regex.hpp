#pragma once

#include <string>
#include <vector>

#include "remap/machine.hpp"

namespace remap {

// Classifier f(s) = k for the lowest k with s in L(components[k-1]), and 0
// when no component matches. Output alphabet {0..N}. Components use the
// alphabet's labels as literals with | * + ? ( ) and ε; whitespace is ignored.
// Built per component by Thompson construction and subset construction, then
// a product automaton, labelling, and minimization. Throws BadRegex.
MooreMachine from_regex_union(const std::vector<std::string>& components, const Alphabet& alphabet);

}  // namespace remap
