#pragma once

#include <string>
#include <string_view>

#include "delayh2/pattern.hpp"
#include "delayh2/plant.hpp"

namespace delayh2 {

// Plant documents: {"A": [[...]], "B1": ..., "B2", "C1", "C2", "D12", "D21"},
// each a row-major array of rows.
PlantMatrices parse_plant_matrices(std::string_view json);
Plant parse_plant(std::string_view json, const Tolerances& tol = default_tolerances());
std::string plant_to_json(const PlantMatrices& m);

// Pattern documents: {"N", "u_blocks", "y_blocks"} plus either "masks"
// (N block matrices of 0/1) or "delays" (block delay matrix).
InformationPattern parse_pattern(std::string_view json);
std::string pattern_to_json(const InformationPattern& pattern);

std::string read_text_file(const std::string& path);

}  // namespace delayh2
