#pragma once

#include <algorithm>

#include <json.hpp>

#include "cdga/cyclic.hpp"

namespace cdga {

/// Raised on any structurally invalid document: wrong schema, missing or
/// mistyped fields, unknown labels, degree mismatches, or bad scalars.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string requireString(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require(j, key);
  if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::string requireString(const nlohmann::json& arr, std::size_t idx, const char* context) {
  const nlohmann::json& v = arr.at(idx);
  if (!v.is_string())
    throw ParseError(std::string(context) + " entries must hold labels as strings");
  return v.get<std::string>();
}

inline std::pair<int, int> locateLabel(const GradedVectorSpace& sp, const std::string& label,
                                       const char* context) {
  auto pos = sp.find(label);
  if (!pos)
    throw ParseError(std::string(context) + " references unknown basis label \"" + label + "\"");
  return *pos;
}

template <class K>
K parseScalar(const nlohmann::json& j, const FieldSpec& field, const char* context) {
  if (!j.is_string())
    throw ParseError(std::string(context) + " coefficients must be strings");
  try {
    return FieldOps<K>::parse(j.get<std::string>(), field);
  } catch (const std::exception& e) {
    throw ParseError(std::string(context) + ": " + e.what());
  }
}

}  // namespace detail

/// Reads an algebra document (schema "cdga/1"). The optional field override
/// reinterprets all coefficients over another scalar field.
template <class K>
OrientedAlgebra<K> parseOriented(const nlohmann::json& j,
                                 std::optional<FieldSpec> fieldOverride = std::nullopt) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (detail::requireString(j, "schema") != "cdga/1")
    throw ParseError("unsupported schema (expected \"cdga/1\")");

  OrientedAlgebra<K> out;
  Algebra<K>& alg = out.alg;
  alg.name = detail::requireString(j, "name");
  try {
    alg.field = fieldOverride ? *fieldOverride : FieldSpec::parse(detail::requireString(j, "field"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }

  if (j.contains("truncation")) {
    const nlohmann::json& t = j.at("truncation");
    if (!t.is_number_integer() || t.get<long long>() < 0)
      throw ParseError("truncation must be a nonnegative integer");
    alg.truncation = t.get<int>();
  }

  const nlohmann::json& basis = detail::require(j, "basis");
  if (!basis.is_array()) throw ParseError("basis must be an array of arrays of labels");
  for (const nlohmann::json& deg : basis) {
    if (!deg.is_array()) throw ParseError("basis must be an array of arrays of labels");
    std::vector<std::string> labels;
    for (const nlohmann::json& l : deg) {
      if (!l.is_string() || l.get<std::string>().empty())
        throw ParseError("basis labels must be nonempty strings");
      labels.push_back(l.get<std::string>());
    }
    alg.space.labels.push_back(labels);
  }
  if (auto dup = alg.space.duplicateLabel())
    throw ParseError("duplicate basis label \"" + *dup + "\"");
  if (alg.truncation && *alg.truncation < alg.space.maxDegree())
    throw ParseError("basis extends past the declared truncation degree");

  std::string unit = detail::requireString(j, "unit");
  auto unitPos = detail::locateLabel(alg.space, unit, "unit");
  if (unitPos.first != 0) throw ParseError("unit must live in degree 0");
  alg.unitIndex = unitPos.second;

  alg.d = GradedLinearMap<K>::zero(alg.space, alg.space, 1);
  const nlohmann::json& dEntries = detail::require(j, "d");
  if (!dEntries.is_array()) throw ParseError("d must be an array of [src, dst, coeff] triples");
  for (const nlohmann::json& e : dEntries) {
    if (!e.is_array() || e.size() != 3)
      throw ParseError("d entries must be [src, dst, coeff] triples");
    auto [sd, si] = detail::locateLabel(alg.space, detail::requireString(e, 0, "d"), "d");
    auto [dd, di] = detail::locateLabel(alg.space, detail::requireString(e, 1, "d"), "d");
    if (dd != sd + 1) throw ParseError("d entry does not raise degree by one");
    alg.d.block(sd).at(di, si) += detail::parseScalar<K>(e.at(2), alg.field, "d");
  }

  const nlohmann::json& pEntries = detail::require(j, "product");
  if (!pEntries.is_array())
    throw ParseError("product must be an array of [a, b, dst, coeff] quadruples");
  std::map<ProdKey, std::map<int, K>> table;
  for (const nlohmann::json& e : pEntries) {
    if (!e.is_array() || e.size() != 4)
      throw ParseError("product entries must be [a, b, dst, coeff] quadruples");
    auto [da, ia] = detail::locateLabel(alg.space, detail::requireString(e, 0, "product"), "product");
    auto [db, ib] = detail::locateLabel(alg.space, detail::requireString(e, 1, "product"), "product");
    auto [dd, di] = detail::locateLabel(alg.space, detail::requireString(e, 2, "product"), "product");
    if (dd != da + db) throw ParseError("product entry lands in the wrong degree");
    table[ProdKey{da, ia, db, ib}][di] += detail::parseScalar<K>(e.at(3), alg.field, "product");
  }
  for (const auto& [key, entries] : table) {
    std::vector<std::pair<int, K>> list;
    for (const auto& [idx, c] : entries)
      if (!isZero(c)) list.push_back({idx, c});
    if (!list.empty()) alg.prod[key] = list;
  }

  if (j.contains("orientation")) {
    const nlohmann::json& o = j.at("orientation");
    const nlohmann::json& degJ = detail::require(o, "degree");
    if (!degJ.is_number_integer()) throw ParseError("orientation degree must be an integer");
    Orientation<K> orient;
    orient.degree = degJ.get<int>();
    if (orient.degree < 0 || orient.degree > alg.space.maxDegree())
      throw ParseError("orientation degree is outside the basis range");
    orient.row = zeroVec<K>(alg.space.dim(orient.degree));
    const nlohmann::json& values = detail::require(o, "values");
    if (!values.is_array()) throw ParseError("orientation values must be [label, coeff] pairs");
    for (const nlohmann::json& e : values) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("orientation values must be [label, coeff] pairs");
      auto [d, i] = detail::locateLabel(alg.space, detail::requireString(e, 0, "orientation"),
                                        "orientation");
      if (d != orient.degree) throw ParseError("orientation value is not in the stated degree");
      orient.row[i] += detail::parseScalar<K>(e.at(1), alg.field, "orientation");
    }
    out.orient = orient;
  }
  return out;
}

/// Canonical emission: fixed key order, entries sorted by coordinates, every
/// nonzero structure constant listed (both factor orders included). Emitting,
/// parsing, and emitting again reproduces the bytes exactly.
template <class K>
nlohmann::ordered_json emitOriented(const OrientedAlgebra<K>& doc) {
  const Algebra<K>& alg = doc.alg;
  nlohmann::ordered_json j;
  j["schema"] = "cdga/1";
  j["name"] = alg.name;
  j["field"] = alg.field.str();
  if (alg.truncation) j["truncation"] = *alg.truncation;

  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (const auto& deg : alg.space.labels) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& l : deg) row.push_back(l);
    basis.push_back(row);
  }
  j["basis"] = basis;
  j["unit"] = alg.space.label(0, alg.unitIndex);

  nlohmann::ordered_json d = nlohmann::ordered_json::array();
  for (int deg = 0; deg <= alg.space.maxDegree(); ++deg) {
    const Matrix<K>& b = alg.d.block(deg);
    for (int c = 0; c < b.cols(); ++c)
      for (int r = 0; r < b.rows(); ++r)
        if (!isZero(b.at(r, c)))
          d.push_back({alg.space.label(deg, c), alg.space.label(deg + 1, r),
                       FieldOps<K>::str(b.at(r, c))});
  }
  j["d"] = d;

  nlohmann::ordered_json prod = nlohmann::ordered_json::array();
  for (const auto& [key, entries] : alg.prod) {
    std::vector<std::pair<int, K>> sorted = entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [idx, c] : sorted) {
      if (isZero(c)) continue;
      prod.push_back({alg.space.label(key.da, key.ia), alg.space.label(key.db, key.ib),
                      alg.space.label(key.da + key.db, idx), FieldOps<K>::str(c)});
    }
  }
  j["product"] = prod;

  if (doc.orient) {
    nlohmann::ordered_json o;
    o["degree"] = doc.orient->degree;
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (int i = 0; i < static_cast<int>(doc.orient->row.size()); ++i)
      if (!isZero(doc.orient->row[i]))
        values.push_back({alg.space.label(doc.orient->degree, i),
                          FieldOps<K>::str(doc.orient->row[i])});
    o["values"] = values;
    j["orientation"] = o;
  }
  return j;
}

/// Reads a degree-preserving linear map document (schema "cdga-map/1") whose
/// entries are [sourceLabel, targetLabel, coeff] triples over the given
/// source and target spaces.
template <class K>
GradedLinearMap<K> parseMapDocument(const nlohmann::json& j, const GradedVectorSpace& src,
                                    const GradedVectorSpace& dst, const FieldSpec& field) {
  if (!j.is_object()) throw ParseError("map document must be a JSON object");
  if (detail::requireString(j, "schema") != "cdga-map/1")
    throw ParseError("unsupported schema (expected \"cdga-map/1\")");
  GradedLinearMap<K> f = GradedLinearMap<K>::zero(src, dst, 0);
  const nlohmann::json& entries = detail::require(j, "entries");
  if (!entries.is_array()) throw ParseError("entries must be an array of [src, dst, coeff]");
  for (const nlohmann::json& e : entries) {
    if (!e.is_array() || e.size() != 3)
      throw ParseError("map entries must be [src, dst, coeff] triples");
    auto [sd, si] = detail::locateLabel(src, detail::requireString(e, 0, "map"), "map");
    auto [dd, di] = detail::locateLabel(dst, detail::requireString(e, 1, "map"), "map");
    if (dd != sd) throw ParseError("map entry does not preserve degree");
    f.block(sd).at(di, si) += detail::parseScalar<K>(e.at(2), field, "map");
  }
  return f;
}

template <class K>
nlohmann::ordered_json emitMapDocument(const GradedLinearMap<K>& f, const GradedVectorSpace& src,
                                       const GradedVectorSpace& dst) {
  nlohmann::ordered_json j;
  j["schema"] = "cdga-map/1";
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int deg = 0; deg <= src.maxDegree(); ++deg) {
    const Matrix<K>& b = f.block(deg);
    for (int c = 0; c < b.cols(); ++c)
      for (int r = 0; r < b.rows(); ++r)
        if (!isZero(b.at(r, c)))
          entries.push_back({src.label(deg, c), dst.label(deg + f.shift, r),
                             FieldOps<K>::str(b.at(r, c))});
  }
  j["entries"] = entries;
  return j;
}

}  // namespace cdga
