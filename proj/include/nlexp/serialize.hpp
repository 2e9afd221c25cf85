#pragma once

#include <json.hpp>

#include "nlexp/sequence_model.hpp"

namespace nlexp {

// Structured-text records for distributions, ambiguity sets and sequence
// models. One record per distribution: a kind tag plus named numeric
// parameters. See the README for the full schema.
nlohmann::json to_json(const Distribution& dist);
Distribution distribution_from_json(const nlohmann::json& j,
                                    const std::string& where);

nlohmann::json to_json(const AmbiguitySet& amb);
AmbiguitySet ambiguity_from_json(const nlohmann::json& j,
                                 const std::string& where);

nlohmann::json to_json(const SequenceModel& model);
SequenceModel model_from_json(const nlohmann::json& j,
                              const std::string& where);

}  // namespace nlexp
