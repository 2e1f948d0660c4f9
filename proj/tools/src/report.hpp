#pragma once

#include <string>

#include "json.hpp"

#include "thopf/diagnostics.hpp"
#include "thopf/normal_form.hpp"
#include "thopf/spectrum.hpp"
#include "thopf/unfolding.hpp"

namespace thopf::cli {

inline constexpr const char* kSchemaVersion = "v1";

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const TuringReport& tr);
nlohmann::json to_json(const A6Check& a6);
nlohmann::json to_json(const HopfBranch& br);
nlohmann::json to_json(const HopfReport& hr);
nlohmann::json to_json(const BTPoint& bt);
nlohmann::json to_json(const NormalFormResult& nf);
nlohmann::json to_json(const PlanarUnfolding& pu);
nlohmann::json to_json(const PlanarEquilibrium& e);
nlohmann::json to_json(const RegionClass& rc);
nlohmann::json to_json(const PatternDiagnostics& d);

/// Writes `doc` with a trailing newline; throws Error(invalid_argument) when
/// the file cannot be opened.
void write_json(const std::string& path, const nlohmann::json& doc);

} // namespace thopf::cli
