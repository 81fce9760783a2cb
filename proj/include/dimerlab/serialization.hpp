#pragma once

#include <string>

#include "dimerlab/dimer_height.hpp"
#include "dimerlab/monte_carlo.hpp"

namespace dimerlab {

// {"tau":[re,im],"M":int,"aliasing":float,"law":[{"r":int,"s":int,"p":float}]}
std::string law_to_json(const HeightLaw& law);
// Adds "samples" and a per-class "stderr".
std::string law_to_json(const EmpiricalLaw& law);
HeightLaw law_from_json(const std::string& text);

// [[white, black], ...]
std::string matching_to_json(const TemperleyanGraph& G, const Matching& m);
Matching matching_from_json(const TemperleyanGraph& G, const std::string& text);

// [{"vertex":v,"edge":d,"head":h}, ...]: the dart id is kept because parallel
// edges make a bare (v, head) pair ambiguous.
std::string crsf_to_json(const Crsf& f);
Crsf crsf_from_json(GraphPtr g, const std::string& text);

}  // namespace dimerlab
