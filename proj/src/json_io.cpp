#include "torsionlab/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace torsionlab {

Json poly_to_json(const LaurentPoly& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.terms()) out.push_back(Json::array({e, to_decimal(c)}));
  return out;
}

LaurentPoly poly_from_json(const Json& j, std::size_t nvars) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), nvars);
  if (j.is_number_integer()) return LaurentPoly::constant(nvars ? nvars : 1, BigInt(j.get<long>()));
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of [exponents, coefficient] pairs or a string");
  std::size_t nv = nvars;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_array()) throw std::invalid_argument("polynomial term must be [exponents, coefficient]");
    if (nv == 0) nv = term[0].size();
    if (term[0].size() != nv) throw std::invalid_argument("polynomial term has the wrong number of exponents");
  }
  LaurentPoly f(nv == 0 ? 1 : nv);
  for (const auto& term : j) {
    Exponent e = term[0].get<Exponent>();
    BigInt c = term[1].is_string() ? parse_bigint(term[1].get<std::string>()) : BigInt(term[1].get<long>());
    f.add_term(e, c);
  }
  return f;
}

Json matrix_to_json(const PolyMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(poly_to_json(m(r, c)));
    entries.push_back(row);
  }
  return {{"nvars", m.nvars()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

PolyMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries")) throw std::invalid_argument("matrix JSON must be an object with an 'entries' field");
  const Json& entries = j.at("entries");
  std::size_t nvars = j.value("nvars", std::size_t{0});
  if (nvars == 0) {
    // Infer from the entries: the widest variable count wins.
    nvars = 1;
    for (const auto& row : entries)
      for (const auto& e : row) nvars = std::max(nvars, poly_from_json(e).nvars());
  }
  std::size_t rows = j.value("rows", entries.size());
  std::size_t cols = j.value("cols", entries.empty() ? std::size_t{0} : entries.front().size());
  if (entries.size() != rows) throw std::invalid_argument("matrix JSON: row count does not match entries");
  PolyMatrix m(rows, cols, nvars);
  for (std::size_t r = 0; r < rows; ++r) {
    if (entries[r].size() != cols) throw std::invalid_argument("matrix JSON: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      LaurentPoly f = poly_from_json(entries[r][c], nvars);
      if (f.nvars() != nvars) throw std::invalid_argument("matrix JSON: entry has the wrong number of variables");
      m(r, c) = f;
    }
  }
  return m;
}

Json subgroup_to_json(const Subgroup& g) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.nvars(); ++i) {
    Json row = Json::array();
    for (const auto& v : g.gens()) row.push_back(v[i]);
    rows.push_back(row);
  }
  return rows;
}

Subgroup subgroup_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("subgroup JSON must be a non-empty integer matrix");
  const std::size_t n = j.size();
  const std::size_t m = j.front().size();
  std::vector<IntVec> gens(m, IntVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != m) throw std::invalid_argument("subgroup JSON: ragged rows");
    for (std::size_t k = 0; k < m; ++k) gens[k][i] = j[i][k].get<std::int64_t>();
  }
  return Subgroup(n, std::move(gens));
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace torsionlab
