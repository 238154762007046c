#pragma once

// Canonical text form of a temporal pattern:
//
//   <VAR=SYM(,VAR=SYM)*|RELS>
//
// RELS is the row-major upper triangle over {b,c}, empty for one state.
// Example: <HR=N,BP=N,HR=L|cbc>

#include <stdexcept>
#include <string>
#include <string_view>

#include "tpmine/model.hpp"

namespace tpmine {

class KeyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string encode_key(const TemporalPattern& p, const VariableTable& variables);

/// Unknown variable names are interned into `variables`.
TemporalPattern decode_key(std::string_view key, VariableTable& variables);

}  // namespace tpmine
