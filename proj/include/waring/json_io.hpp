#pragma once

#include <string>

#include "json.hpp"
#include "waring/decomposer.hpp"

namespace waring {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "waring-forms/1";

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

Json element_to_json(const FieldElement& e);
FieldElement element_from_json(const Field& f, const Json& j);

Json matrix_to_json(const MatE& m);
MatE matrix_from_json(const Field& f, const Json& j);

Json form_to_json(const HermitianForm& form, const Json& metadata = Json::object());
HermitianForm form_from_json(const Json& j);

Json representation_to_json(const Field& f, const Representation& rep);
Representation representation_from_json(const Field& f, const Json& j);

Json profile_to_json(const BoundsProfile& p);
BoundsProfile profile_from_json(const Json& j);

Json reduced_form_to_json(const ReducedForm& rf, const ReductionChecks& checks);
Json certificate_to_json(const Certificate& c);
Json trace_to_json(const DecomposeTrace& t);
Json outcome_to_json(const Field& f, const DecomposeOutcome& outcome);

}  // namespace waring
