#pragma once

// Command execution over a parsed document: every CLI verb maps to a JSON
// report with a schema version, a list of gating verdicts, witnesses and
// timing. Commands that synthesize DSL output (dualize, glue) also hand back
// the document text.

#include <json.hpp>

#include "fibcat/dsl.hpp"

namespace fibcat::cmd {

struct CommandOptions {
  std::string functor;              // analyze, dualize, doubledual
  std::string data;                 // glue
  std::string map;                  // finset pullback/pi, vect tangent
  std::string family;               // finset pullback/pi, jet
  std::string first, second;        // finset compose
  std::string relation, relation2;  // jet, vect tangent
  std::string comorphism;           // jet
  std::string builtin;              // strength functor name
  std::string xi;                   // strength prolong
  std::string bundle;               // vect dagger
  int d_size = 2;
  int b_size = 2;
  int field = 2;
  int max_size = 3;
  unsigned long long seed = 20240801;
};

// Known commands: check, analyze, dualize, doubledual, glue, finset-pullback,
// finset-pi, finset-compose, jet, strength-check, strength-flow,
// strength-prolong, vect-dagger, vect-tangent. Unknown names or unresolved
// references produce a report whose "usage_error" flag is set.
nlohmann::json run_command(const std::string& command, const dsl::Document& doc,
                           const CommandOptions& opts, std::string* artifact = nullptr);

// 0 when every verdict passes, 1 when one fails, 2 on usage errors.
int exit_code_for(const nlohmann::json& report);

}  // namespace fibcat::cmd
