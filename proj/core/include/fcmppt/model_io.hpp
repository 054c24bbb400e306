#pragma once

#include "fcmppt/anfis.hpp"
#include "fcmppt/mlp.hpp"

#include <string>

namespace fcmppt {

// Versioned plain-text model documents, full decimal precision. Shared
// layout: "fcmppt-model v1" magic, "type anfis|mlp", norm lines, then the
// type-specific parameter block in declared order.

std::string anfis_to_text(const AnfisModel& model);
AnfisModel anfis_from_text(const std::string& text);
void save_anfis(const AnfisModel& model, const std::string& path);
AnfisModel load_anfis(const std::string& path);

std::string mlp_to_text(const MlpNetwork& net);
MlpNetwork mlp_from_text(const std::string& text);
void save_mlp(const MlpNetwork& net, const std::string& path);
MlpNetwork load_mlp(const std::string& path);

} // namespace fcmppt
