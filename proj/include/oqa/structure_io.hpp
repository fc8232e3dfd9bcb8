#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oqa/homfly_bridge.hpp"
#include "oqa/oqa.hpp"

namespace oqa {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symbol name -> scalar text, or "symbolic" to leave the symbol free.
using BindingTexts = std::map<std::string, std::string>;

struct LoadedStructure {
  std::string kind;  // structure, balanced_mn, params, single_block, sweedler
  SymbolTable symbols;
  Structure structure;
  std::vector<Scalar> trace;  // empty when none is known
  std::optional<MnParams> params;
  std::optional<SingleBlockContext> single_block;
};

// Accepted kinds:
//   structure     full tables as written by structure_to_json
//   balanced_mn   n, a, bc, b {"i,l": text}, omega1_sq
//   params        n, blocks, bc, a, off, omega_sq, optional cross and flip
//   single_block  n, a, sbc, same [bool], x {"i,l": text}
//   sweedler      alpha, optional twist and trace
// Every kind takes optional "symbols" (declared first, fixing their order)
// and, except single_block, optional "twist" and "trace" vectors.
// Throws InputError on malformed input or unusable parameter values.
LoadedStructure load_structure(const nlohmann::json& j, const BindingTexts& bind = {});
LoadedStructure load_structure_file(const std::string& path, const BindingTexts& bind = {});

// kind "structure"; load_structure on the result reproduces s exactly.
nlohmann::json structure_to_json(const Structure& s, const SymbolTable& st, const std::vector<Scalar>& trace = {});

nlohmann::json element_to_json(const AlgebraSpec& a, const AlgebraElement& x, const SymbolTable& st);
nlohmann::json tensor_to_json(const AlgebraSpec& a, const TensorSquareElement& u, const SymbolTable& st);

}  // namespace oqa
