#pragma once

#include <json.hpp>
#include <string>

#include "fusionforge/coset.hpp"
#include "fusionforge/extension.hpp"
#include "fusionforge/modular_data.hpp"

namespace fusionforge {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "fusionforge/1";

/// Doubles are rounded to 15 significant digits with -0 normalized to 0, so
/// identical inputs serialize byte-identically.
double canonical_double(double x);
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json modular_data_to_json(const ModularData& md);
ModularData modular_data_from_json(const Json& j);

Json axiom_report_to_json(const AxiomReport& rep);
Json extension_to_json(const ExtensionResult& ext, const SuperFusion& sf);
Json coset_tables_to_json(const CosetTables& tables);

/// Setup document: family descriptor (or inline modular data), the Gram
/// matrix of L, the weight map, N generators and the designated currents.
CosetSetup coset_setup_from_json(const Json& j);

std::string render_modular_data_text(const ModularData& md);
std::string render_extension_text(const ExtensionResult& ext, const SuperFusion& sf);
std::string render_coset_text(const CosetTables& tables);

}  // namespace fusionforge
