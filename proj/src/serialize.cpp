#include "asymspec/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asymspec/error.hpp"

namespace asymspec {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& ptr, const char* key) {
  if (!obj.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(ptr + "/" + key, "missing required field");
  return *it;
}

double number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(ptr, "expected a finite number");
  return x;
}

std::size_t dimension(const json& v, const std::string& ptr) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
    throw SchemaError(ptr, "expected a positive integer");
  return v.get<std::size_t>();
}

const json& array(const json& v, const std::string& ptr) {
  if (!v.is_array()) throw SchemaError(ptr, "expected an array");
  return v;
}

ComplexMatrix parse_matrix(const json& obj, const std::string& ptr) {
  const std::size_t dim = dimension(field(obj, ptr, "dim"), ptr + "/dim");
  const json& re = array(field(obj, ptr, "re"), ptr + "/re");
  const json& im = array(field(obj, ptr, "im"), ptr + "/im");
  if (re.size() != dim * dim) throw SchemaError(ptr + "/re", "expected dim*dim entries");
  if (im.size() != dim * dim) throw SchemaError(ptr + "/im", "expected dim*dim entries");
  std::vector<Complex> entries(dim * dim);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    entries[k] = {number(re[k], ptr + "/re/" + std::to_string(k)),
                  number(im[k], ptr + "/im/" + std::to_string(k))};
  }
  return ComplexMatrix(dim, std::move(entries));
}

json write_matrix(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (const Complex& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

FamilySpec parse_node(const json& obj, std::size_t dim, const std::string& ptr);

std::vector<FamilySpec> parse_list(const json& obj, std::size_t dim, const std::string& ptr,
                                   const char* key) {
  const std::string lptr = ptr + "/" + key;
  const json& arr = array(field(obj, ptr, key), lptr);
  if (arr.empty()) throw SchemaError(lptr, "expected at least one node");
  std::vector<FamilySpec> out;
  for (std::size_t k = 0; k < arr.size(); ++k)
    out.push_back(parse_node(arr[k], dim, lptr + "/" + std::to_string(k)));
  return out;
}

FamilySpec parse_node(const json& obj, std::size_t dim, const std::string& ptr) {
  const json& kind_v = field(obj, ptr, "kind");
  if (!kind_v.is_string()) throw SchemaError(ptr + "/kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();

  if (kind == "constant") {
    ComplexMatrix m = parse_matrix(field(obj, ptr, "matrix"), ptr + "/matrix");
    if (m.dim() != dim) throw SchemaError(ptr + "/matrix/dim", "does not match the family dim");
    return FamilySpec::constant(std::move(m));
  }
  if (kind == "jordan") {
    const json& ev = array(field(obj, ptr, "eigenvalue"), ptr + "/eigenvalue");
    if (ev.size() != 2) throw SchemaError(ptr + "/eigenvalue", "expected [re, im]");
    return FamilySpec::jordan(dim, {number(ev[0], ptr + "/eigenvalue/0"),
                                    number(ev[1], ptr + "/eigenvalue/1")});
  }
  if (kind == "diag_expr") {
    const json& arr = array(field(obj, ptr, "entries"), ptr + "/entries");
    if (arr.size() != dim) throw SchemaError(ptr + "/entries", "expected dim entries");
    std::vector<std::string> entries;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_string())
        throw SchemaError(ptr + "/entries/" + std::to_string(k), "expected a string");
      entries.push_back(arr[k].get<std::string>());
    }
    try {
      return FamilySpec::diag_expr(entries);
    } catch (const Error& e) {
      throw SchemaError(ptr + "/entries", e.what());
    }
  }
  if (kind == "h_scaled") return FamilySpec::h_scaled(parse_node(field(obj, ptr, "inner"), dim, ptr + "/inner"));
  if (kind == "sum") return FamilySpec::sum(parse_list(obj, dim, ptr, "terms"));
  if (kind == "product") return FamilySpec::product(parse_list(obj, dim, ptr, "factors"));
  if (kind == "random") {
    const json& seed = field(obj, ptr, "seed");
    if (!seed.is_number_unsigned()) throw SchemaError(ptr + "/seed", "expected a nonnegative integer");
    double sc = 1.0;
    if (obj.contains("scale")) sc = number(obj["scale"], ptr + "/scale");
    if (!(sc > 0.0)) throw SchemaError(ptr + "/scale", "expected a positive number");
    return FamilySpec::seeded_random(dim, seed.get<std::uint64_t>(), sc);
  }
  throw SchemaError(ptr + "/kind", "unknown node kind '" + kind + "'");
}

json write_node(const FamilySpec& spec) {
  return std::visit(
      [&](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return {{"kind", "constant"}, {"matrix", write_matrix(node.matrix)}};
        } else if constexpr (std::is_same_v<T, JordanNode>) {
          return {{"kind", "jordan"}, {"eigenvalue", {node.eigenvalue.real(), node.eigenvalue.imag()}}};
        } else if constexpr (std::is_same_v<T, DiagExprNode>) {
          json entries = json::array();
          for (const auto& f : node.entries) entries.push_back(f.source());
          return {{"kind", "diag_expr"}, {"entries", std::move(entries)}};
        } else if constexpr (std::is_same_v<T, HScaledNode>) {
          return {{"kind", "h_scaled"}, {"inner", write_node(node.inner)}};
        } else if constexpr (std::is_same_v<T, SumNode>) {
          json terms = json::array();
          for (const auto& t : node.terms) terms.push_back(write_node(t));
          return {{"kind", "sum"}, {"terms", std::move(terms)}};
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          json factors = json::array();
          for (const auto& f : node.factors) factors.push_back(write_node(f));
          return {{"kind", "product"}, {"factors", std::move(factors)}};
        } else if constexpr (std::is_same_v<T, RandomNode>) {
          return {{"kind", "random"}, {"seed", node.seed}, {"scale", node.scale}};
        } else {
          throw Error(ErrorCode::BadParameter, "functional-calculus families cannot be serialized");
        }
      },
      spec.node().node);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

FamilySpec family_from_json(std::string_view text) {
  const json doc = parse_text(text);
  const std::size_t dim = dimension(field(doc, "", "dim"), "/dim");
  return parse_node(field(doc, "", "node"), dim, "/node");
}

std::string family_to_json(const FamilySpec& spec) {
  json doc = {{"dim", spec.dim()}, {"node", write_node(spec)}};
  return doc.dump(2);
}

ComplexMatrix matrix_from_json(std::string_view text) { return parse_matrix(parse_text(text), ""); }

std::string matrix_to_json(const ComplexMatrix& m) { return write_matrix(m).dump(2); }

FamilySpec load_family(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read family file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return family_from_json(os.str());
}

void write_report(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace asymspec
