#include "oqa/structure_io.hpp"

#include <fstream>
#include <sstream>

namespace oqa {

using nlohmann::json;

namespace {

AlgebraSpec algebra_by_name(const std::string& name) {
  std::string base = name;
  const bool op = base.ends_with("^op");
  if (op) base.resize(base.size() - 3);
  AlgebraSpec a;
  if (base == "H4") {
    a = sweedler_algebra();
  } else if (base.size() > 1 && base[0] == 'M') {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(base.substr(1), &used);
      if (used != base.size() - 1) n = 0;
    } catch (const std::logic_error&) {
    }
    if (n < 1 || n > 8) throw InputError("unknown algebra '" + name + "'");
    a = matrix_algebra(n);
  } else {
    throw InputError("unknown algebra '" + name + "'");
  }
  return op ? opposite_algebra(a) : a;
}

class Reader {
 public:
  Reader(const json& j, const BindingTexts& bind) : bind_(bind) {
    if (j.contains("symbols")) {
      for (const auto& s : j.at("symbols")) st.declare(s.get<std::string>());
    }
  }

  Scalar scalar(const json& v, const std::string& where) {
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number_integer()) text = std::to_string(v.get<long>());
    else throw InputError(where + ": expected a scalar string");
    Scalar s;
    try {
      s = parse_scalar(text, st, true);
    } catch (const std::exception& e) {
      throw InputError(where + ": " + e.what());
    }
    return apply(s);
  }

  std::vector<Scalar> vec(const json& v, const std::string& where) {
    if (!v.is_array()) throw InputError(where + ": expected an array");
    std::vector<Scalar> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(scalar(v[k], where + "[" + std::to_string(k) + "]"));
    return out;
  }

  PairTable pairs(const json& v, const std::string& where) {
    if (!v.is_object()) throw InputError(where + ": expected an object keyed \"i,l\"");
    PairTable t;
    for (const auto& [key, val] : v.items()) {
      int i = 0, l = 0;
      char comma = 0;
      std::istringstream in(key);
      if (!(in >> i >> comma >> l) || comma != ',' || !in.eof())
        throw InputError(where + ": bad key '" + key + "'");
      t[{i, l}] = scalar(val, where + "." + key);
    }
    return t;
  }

  // Bound symbols that never appeared are an input error.
  void finish() const {
    for (const auto& [name, text] : bind_)
      if (!st.find(name)) throw InputError("binding for undeclared symbol '" + name + "'");
  }

  SymbolTable st;

 private:
  Scalar apply(const Scalar& s) {
    Bindings b;
    for (const auto& [name, text] : bind_) {
      if (text == "symbolic") continue;
      auto idx = st.find(name);
      if (!idx) continue;
      auto it = values_.find(name);
      if (it == values_.end()) {
        Scalar v;
        try {
          v = parse_scalar(text, static_cast<const SymbolTable&>(st));
        } catch (const std::exception& e) {
          throw InputError("binding " + name + "=" + text + ": " + e.what());
        }
        it = values_.emplace(name, v).first;
      }
      b[*idx] = it->second;
    }
    return b.empty() ? s : substitute(s, b);
  }

  const BindingTexts& bind_;
  std::map<std::string, Scalar> values_;
};

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

TensorSquareElement read_tensor(Reader& r, const AlgebraSpec& a, const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array of {i, j, c}");
  TensorSquareElement u;
  for (const auto& e : v) {
    try {
      u.add(a.label_index(e.at("i").get<std::string>()), a.label_index(e.at("j").get<std::string>()),
            r.scalar(e.at("c"), where));
    } catch (const json::exception& ex) {
      throw InputError(where + ": " + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw InputError(where + ": " + ex.what());
    }
  }
  return u;
}

AlgebraMap read_map(Reader& r, int dim, const json& v, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) throw InputError(where + ": expected " + std::to_string(dim) + " rows");
  AlgebraMap m(dim);
  for (int i = 0; i < dim; ++i) {
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != dim) throw InputError(where + ": bad row " + std::to_string(i));
    for (int j = 0; j < dim; ++j) m.set(i, j, r.scalar(v[i][j], where));
  }
  return m;
}

std::vector<std::vector<int>> read_blocks(const json& v) {
  try {
    return v.get<std::vector<std::vector<int>>>();
  } catch (const json::exception&) {
    throw InputError("blocks: expected lists of indices");
  }
}

void attach_optional_twist(Reader& r, const json& j, LoadedStructure& out) {
  if (j.contains("twist") && !j.at("twist").is_null()) {
    auto g = r.vec(j.at("twist"), "twist");
    if (static_cast<int>(g.size()) != out.structure.algebra.dim) throw InputError("twist: wrong length");
    out.structure = attach_twist(out.structure, AlgebraElement(g));
  }
  if (j.contains("trace")) {
    out.trace = r.vec(j.at("trace"), "trace");
    if (static_cast<int>(out.trace.size()) != out.structure.algebra.dim) throw InputError("trace: wrong length");
  }
}

LoadedStructure load_full(Reader& r, const json& j) {
  LoadedStructure out;
  Structure& s = out.structure;
  s.name = j.value("name", std::string("structure"));
  s.algebra = algebra_by_name(need(j, "algebra").get<std::string>());
  const int dim = s.algebra.dim;
  if (j.contains("roots")) {
    for (const auto& e : j.at("roots")) {
      const std::string sym = e.at("symbol").get<std::string>();
      s.roots.add(r.st.declare(sym), r.scalar(e.at("square"), "roots." + sym));
    }
  }
  s.rho = s.reduce(read_tensor(r, s.algebra, need(j, "rho"), "rho"));
  if (j.contains("rho_inv")) s.rho_inv = s.reduce(read_tensor(r, s.algebra, j.at("rho_inv"), "rho_inv"));
  else s.rho_inv = s.reduce(tensor_invert(s.algebra, s.rho));
  s.t_d = j.contains("t_d") ? read_map(r, dim, j.at("t_d"), "t_d") : AlgebraMap::identity(dim);
  s.t_u = j.contains("t_u") ? read_map(r, dim, j.at("t_u"), "t_u") : AlgebraMap::identity(dim);
  // twists are stored as they were, not re-derived
  if (j.contains("twist") && !j.at("twist").is_null()) {
    s.twist = AlgebraElement(r.vec(j.at("twist"), "twist"));
    if (s.twist->dim() != dim) throw InputError("twist: wrong length");
    if (j.contains("twist_inv") && !j.at("twist_inv").is_null()) {
      s.twist_inv = AlgebraElement(r.vec(j.at("twist_inv"), "twist_inv"));
    } else {
      auto gi = invert(s.algebra, *s.twist);
      if (!gi) throw InputError("twist is not invertible");
      s.twist_inv = s.reduce(*gi);
    }
    if (s.twist_inv->dim() != dim) throw InputError("twist_inv: wrong length");
  }
  if (j.contains("trace")) {
    out.trace = r.vec(j.at("trace"), "trace");
    if (static_cast<int>(out.trace.size()) != dim) throw InputError("trace: wrong length");
  }
  return out;
}

}  // namespace

LoadedStructure load_structure(const json& j, const BindingTexts& bind) {
  if (!j.is_object()) throw InputError("structure file must hold a JSON object");
  Reader r(j, bind);
  const std::string kind = j.value("kind", std::string("structure"));
  LoadedStructure out;
  try {
    if (kind == "structure") {
      out = load_full(r, j);
    } else if (kind == "balanced_mn") {
      const int n = need_int(j, "n");
      const Scalar a = r.scalar(need(j, "a"), "a"), bc = r.scalar(need(j, "bc"), "bc");
      PairTable b = j.contains("b") ? r.pairs(j.at("b"), "b") : PairTable{};
      const Scalar w1 = j.contains("omega1_sq") ? r.scalar(j.at("omega1_sq"), "omega1_sq") : Scalar(1);
      out.structure = build_balanced_mn(n, a, bc, b, w1, r.st);
      out.trace = matrix_trace(n);
    } else if (kind == "params") {
      MnParams p;
      p.n = need_int(j, "n");
      p.blocks = read_blocks(need(j, "blocks"));
      p.bc = r.vec(need(j, "bc"), "bc");
      p.a = r.vec(need(j, "a"), "a");
      p.off = r.pairs(need(j, "off"), "off");
      p.omega_sq = r.vec(need(j, "omega_sq"), "omega_sq");
      if (j.contains("cross")) p.cross = r.pairs(j.at("cross"), "cross");
      std::vector<int> flip = j.value("flip", std::vector<int>{});
      // no classification gate: check-axioms reports on broken tables too
      out.structure = assemble_params(p, r.st, flip);
      out.params = p;
      out.trace = matrix_trace(p.n);
    } else if (kind == "single_block") {
      const int n = need_int(j, "n");
      const Scalar a = r.scalar(need(j, "a"), "a"), sbc = r.scalar(need(j, "sbc"), "sbc");
      if (a.is_zero() || sbc.is_zero()) throw InputError("a and sbc must be nonzero");
      if (a * a == sbc * sbc || a * a == -(sbc * sbc)) throw InputError("a^2 = +-bc is excluded");
      std::vector<bool> same = j.value("same", std::vector<bool>(n, true));
      PairTable x = j.contains("x") ? r.pairs(j.at("x"), "x") : PairTable{};
      auto p = single_block_params(n, a, sbc, same, x);
      out.single_block = single_block_context(p, sbc, r.st);
      out.structure = out.single_block->structure;
      out.params = p;
      out.trace = out.single_block->trace;
    } else if (kind == "sweedler") {
      out.structure = sweedler_oqa(r.scalar(need(j, "alpha"), "alpha"));
      attach_optional_twist(r, j, out);
    } else {
      throw InputError("unknown structure kind '" + kind + "'");
    }
    if (kind == "balanced_mn" || kind == "params") {
      if (j.contains("twist") || j.contains("trace")) attach_optional_twist(r, j, out);
    }
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
  r.finish();
  out.kind = kind;
  out.symbols = r.st;
  return out;
}

LoadedStructure load_structure_file(const std::string& path, const BindingTexts& bind) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return load_structure(j, bind);
}

json element_to_json(const AlgebraSpec& a, const AlgebraElement& x, const SymbolTable& st) {
  json out = json::object();
  for (int k = 0; k < a.dim; ++k)
    if (!x[k].is_zero()) out[a.labels[k]] = x[k].str(st);
  return out;
}

json tensor_to_json(const AlgebraSpec& a, const TensorSquareElement& u, const SymbolTable& st) {
  json out = json::array();
  for (const auto& [key, c] : u.entries())
    out.push_back({{"i", a.labels[key.first]}, {"j", a.labels[key.second]}, {"c", c.str(st)}});
  return out;
}

json structure_to_json(const Structure& s, const SymbolTable& st, const std::vector<Scalar>& trace) {
  auto vec = [&](const std::vector<Scalar>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(c.str(st));
    return out;
  };
  auto mat = [&](const AlgebraMap& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j).str(st));
      rows.push_back(row);
    }
    return rows;
  };
  json j;
  j["kind"] = "structure";
  j["symbols"] = st.names();
  j["name"] = s.name;
  j["algebra"] = s.algebra.name;
  json roots = json::array();
  for (const auto& [sym, sq] : s.roots.roots()) roots.push_back({{"symbol", st.name(sym)}, {"square", sq.str(st)}});
  j["roots"] = roots;
  j["rho"] = tensor_to_json(s.algebra, s.rho, st);
  j["rho_inv"] = tensor_to_json(s.algebra, s.rho_inv, st);
  j["t_d"] = mat(s.t_d);
  j["t_u"] = mat(s.t_u);
  j["twist"] = s.twist ? vec(s.twist->coeffs()) : json(nullptr);
  j["twist_inv"] = s.twist_inv ? vec(s.twist_inv->coeffs()) : json(nullptr);
  if (!trace.empty()) j["trace"] = vec(trace);
  return j;
}

}  // namespace oqa
