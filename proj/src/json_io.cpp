#include "lenstor/json_io.hpp"

#include <fstream>

namespace lenstor {

namespace {

template <class V>
std::string value_text(const V& v) {
  return v.to_string();
}

template <class V>
Json function_json(const GroupFunction<V>& f) {
  Json values = Json::array();
  const FinAbGroup& group = f.group();
  for (std::size_t i = 0; i < f.size(); ++i) values.push_back(Json::array({to_json(group.at(i)), value_text(f[i])}));
  return Json{{"group", to_json(group)}, {"values", std::move(values)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational string, got " + j.dump());
}

template <class V, class Convert>
GroupFunction<V> function_from_json(const Json& j, Convert convert) {
  if (!j.is_object() || !j.contains("group") || !j.contains("values")) {
    throw ParseError("group function needs \"group\" and \"values\"");
  }
  const FinAbGroup group = group_from_json(j.at("group"));
  const Json& entries = j.at("values");
  if (!entries.is_array()) throw ParseError("\"values\" must be an array");

  std::size_t n = 0;
  try {
    n = group.checked_size();
  } catch (const TooLarge& e) {
    throw ParseError(e.what());
  }
  if (entries.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " values, got " + std::to_string(entries.size()));
  }
  std::vector<V> values(n);
  std::vector<bool> seen(n, false);
  for (const auto& entry : entries) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array()) {
      throw ParseError("each value must be [[residues...], \"a/b\"]: " + entry.dump());
    }
    std::vector<std::int64_t> residues;
    for (const auto& r : entry[0]) {
      if (!r.is_number_integer()) throw ParseError("residues must be integers: " + entry.dump());
      residues.push_back(r.get<std::int64_t>());
    }
    std::size_t idx = 0;
    try {
      idx = group.element(residues).index();
    } catch (const BadParameters& e) {
      throw ParseError(std::string("bad residues ") + entry[0].dump() + ": " + e.what());
    }
    if (seen[idx]) throw ParseError("element " + entry[0].dump() + " listed twice");
    seen[idx] = true;
    values[idx] = convert(rational_from_json(entry[1]));
  }
  return GroupFunction<V>(group, std::move(values));
}

}  // namespace

Json to_json(const FinAbGroup& group) {
  Json a = Json::array();
  for (const auto n : group.invariant_factors()) a.push_back(n);
  return a;
}

Json to_json(const GroupElement& g) {
  Json a = Json::array();
  for (const auto r : g.residues()) a.push_back(r);
  return a;
}

Json to_json(const RationalFunction& f) { return function_json(f); }
Json to_json(const ResidueFunction& f) { return function_json(f); }

Json to_json(const TorsionFunction& t) {
  Json j = to_json(t.values());
  if (t.lens()) {
    j["p"] = t.lens()->p;
    j["q"] = t.lens()->q;
    j["e"] = t.lens()->e;
  }
  return j;
}

Json to_json(const LatticeResolution& r) {
  Json rows = Json::array();
  const IntMatrix& m = r.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) throw TooLarge("matrix entry does not fit 64 bits");
      row.push_back(m(i, j).get_si());
    }
    rows.push_back(std::move(row));
  }
  Json cf = Json::array();
  for (const auto a : r.continued_fraction()) cf.push_back(a);
  return Json{{"matrix", std::move(rows)}, {"continued_fraction", std::move(cf)}};
}

Json to_json(const BilinearFormQZ& b) {
  const std::size_t k = b.group().rank();
  Json gram = Json::array();
  for (std::size_t i = 0; i < k; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < k; ++j) row.push_back(b.gram(i, j).to_string());
    gram.push_back(std::move(row));
  }
  return Json{{"group", to_json(b.group())}, {"gram", std::move(gram)}};
}

Json to_json(const StructureResult& s) {
  Json orbit = Json::array();
  for (const auto& e : s.orbit) orbit.push_back(Json{{"shift", to_json(e.shift)}, {"c", e.c.to_string()}});
  return Json{{"c", s.c.to_string()},
              {"shift", to_json(s.shift)},
              {"refinement", to_json(s.refinement.values())},
              {"c_stable", s.c_stable},
              {"orbit", std::move(orbit)}};
}

FinAbGroup group_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("\"group\" must be an array of invariant factors");
  std::vector<std::int64_t> factors;
  for (const auto& n : j) {
    if (!n.is_number_integer()) throw ParseError("invariant factors must be integers");
    factors.push_back(n.get<std::int64_t>());
  }
  try {
    return FinAbGroup(std::move(factors));
  } catch (const BadParameters& e) {
    throw ParseError(e.what());
  }
}

RationalFunction rational_function_from_json(const Json& j) {
  return function_from_json<Rational>(j, [](const Rational& r) { return r; });
}

ResidueFunction residue_function_from_json(const Json& j) {
  return function_from_json<QZ>(j, [](const Rational& r) { return qz_reduce(r); });
}

TorsionFunction torsion_from_json(const Json& j) {
  RationalFunction f = rational_function_from_json(j);
  std::optional<LensParameters> lens;
  if (j.contains("p") || j.contains("q") || j.contains("e")) {
    try {
      lens = LensParameters{j.at("p").get<std::int64_t>(), j.at("q").get<std::int64_t>(),
                            j.value("e", std::int64_t{0})};
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad lens metadata: ") + e.what());
    }
  }
  return TorsionFunction(std::move(f), lens);
}

LatticeResolution resolution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.at("matrix").is_array()) {
    throw ParseError("resolution needs a \"matrix\" array");
  }
  const Json& rows = j.at("matrix");
  const std::size_t m = rows.size();
  IntMatrix matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m) throw ParseError("resolution matrix must be square");
    for (std::size_t c = 0; c < m; ++c) {
      if (!rows[i][c].is_number_integer()) throw ParseError("resolution entries must be integers");
      matrix(i, c) = BigInt(rows[i][c].get<long>());
    }
  }
  std::vector<std::int64_t> cf;
  if (j.contains("continued_fraction")) {
    for (const auto& a : j.at("continued_fraction")) {
      if (!a.is_number_integer()) throw ParseError("continued fraction entries must be integers");
      cf.push_back(a.get<std::int64_t>());
    }
  }
  try {
    return LatticeResolution(std::move(matrix), std::move(cf));
  } catch (const BadParameters& e) {
    throw ParseError(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace lenstor
