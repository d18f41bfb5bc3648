#pragma once

#include <string>

#include "erm2s/model.hpp"

namespace erm2s {

// Fixed-column MPS rendering of a model (OBJSENSE MIN, COLUMNS with
// INTORG/INTEND markers, explicit UP bounds). Names follow the model's
// R_i / w_s_t / w2_i_j / Rw_l_s_t / Rw2_l_i_j convention and numbers are
// shortest round-trip decimals, so identical models export byte-identically.
std::string to_mps(const MilpModel& model);

void write_mps(const MilpModel& model, const std::string& path);

}  // namespace erm2s
