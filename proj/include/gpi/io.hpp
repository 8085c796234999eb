#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpi/cohomology.hpp"
#include "gpi/error.hpp"
#include "gpi/group.hpp"
#include "gpi/rep.hpp"

namespace gpi::io {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << j.dump() << '\n';
}

template <class T>
T field_of(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type: " + e.what());
  }
}

// {"n": n, "table": [[int; n]; n]}
inline json group_to_json(const FiniteGroup& G) { return json{{"n", G.order()}, {"table", G.rows()}}; }

inline FiniteGroup group_from_json(const json& j) {
  const int n = field_of<int>(j, "n");
  auto t = field_of<std::vector<std::vector<int>>>(j, "table");
  if (static_cast<int>(t.size()) != n) throw InvalidInput("table has " + std::to_string(t.size()) + " rows, n = " + std::to_string(n));
  return load_group(t);
}

// {"p", "q", "d", "images": [[row-major]]} indexed by group element.
inline json rep_to_json(const Representation& R) {
  json imgs = json::array();
  for (const auto& A : R.images) imgs.push_back(std::vector<int>(A.a.begin(), A.a.end()));
  return json{{"p", R.F.p()}, {"q", R.F.q()}, {"d", R.d}, {"images", imgs}};
}

inline Representation rep_from_json(const json& j, const GroupRef& grp) {
  const int p = field_of<int>(j, "p"), q = field_of<int>(j, "q"), d = field_of<int>(j, "d");
  const Field F = Field::of(q);
  if (F.p() != p) throw InvalidInput("representation: p does not match q");
  if (d < 0) throw InvalidInput("representation: negative dimension");
  auto imgs = field_of<std::vector<std::vector<int>>>(j, "images");
  if (static_cast<int>(imgs.size()) != grp->G.order())
    throw InvalidInput("representation has " + std::to_string(imgs.size()) + " images for a group of order " +
                       std::to_string(grp->G.order()));
  Representation R{grp, F, d, {}};
  for (const auto& flat : imgs) {
    if (static_cast<int>(flat.size()) != d * d) throw InvalidInput("image is not d*d entries");
    Matrix A(d, d);
    for (int k = 0; k < d * d; ++k) {
      if (flat[k] < 0 || flat[k] >= q) throw InvalidInput("matrix entry outside GF(q)");
      A.a[k] = static_cast<Elt>(flat[k]);
    }
    R.images.push_back(std::move(A));
  }
  if (auto v = check_representation(R)) throw InvalidInput("not a representation: " + v->what);
  return R;
}

// {"p", "d", "n", "values": [[[int; d]; n]; n]}
inline json cocycle_to_json(const Cocycle& f) {
  json rows = json::array();
  for (int x = 0; x < f.n; ++x) {
    json row = json::array();
    for (int y = 0; y < f.n; ++y) row.push_back(std::vector<int>(f.at(x, y).begin(), f.at(x, y).end()));
    rows.push_back(row);
  }
  return json{{"p", f.p}, {"d", f.d}, {"n", f.n}, {"values", rows}};
}

inline Cocycle cocycle_from_json(const json& j) {
  const int p = field_of<int>(j, "p"), d = field_of<int>(j, "d"), n = field_of<int>(j, "n");
  if (n < 1 || d < 0) throw InvalidInput("cocycle: bad shape");
  auto v = field_of<std::vector<std::vector<std::vector<int>>>>(j, "values");
  Cocycle f = Cocycle::zero(n, p, d);
  if (static_cast<int>(v.size()) != n) throw InvalidInput("cocycle: wrong number of rows");
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(v[x].size()) != n) throw InvalidInput("cocycle: wrong row length");
    for (int y = 0; y < n; ++y) {
      if (static_cast<int>(v[x][y].size()) != d) throw InvalidInput("cocycle: value is not a d-vector");
      for (int i = 0; i < d; ++i) {
        if (v[x][y][i] < 0 || v[x][y][i] >= p) throw InvalidInput("cocycle entry outside GF(p)");
        f.at(x, y)[i] = static_cast<Elt>(v[x][y][i]);
      }
    }
  }
  return f;
}

inline json matrix_to_json(const Matrix& A) {
  json rows = json::array();
  for (int i = 0; i < A.rows; ++i) rows.push_back(std::vector<int>(A.row(i), A.row(i) + A.cols));
  return rows;
}

}  // namespace gpi::io
