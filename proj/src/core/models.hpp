#pragma once

#include <nlohmann/json.hpp>

#include "types.hpp"

namespace gibbsline {

struct ResolvedModel {
    InteractionTerm term;
    std::string name;               // builtin name or "file"
    double renormalization = 1.0;   // factor the raw term was divided by
    std::vector<std::string> warnings;
};

// Builtin models. params (may be null/empty):
//   free:       {"d": 2}
//   ising:      {"coupling": 1.0}            h = -coupling Z(x)Z, |coupling| <= 1
//   tfim:       {"J": 1.0, "g": 1.0}         -(J Z(x)Z + g(X(x)I + I(x)X)/2),
//                                            renormalized to ||h|| <= 1
//   heisenberg: {}                           (X(x)X + Y(x)Y + Z(x)Z)/3
ResolvedModel builtin_model(const std::string& name, const nlohmann::json& params);

// Model file: JSON {"d": int, "matrix": d^2 x d^2 array of [re, im] pairs},
// row-major, site-1-major index convention.
ResolvedModel parse_model_json(const nlohmann::json& doc);
ResolvedModel parse_model_file(const std::string& path);

}  // namespace gibbsline
