#include "json_io.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace conley {

namespace {

Family family_from_name(const std::string& name) {
  if (name == "piecewise_linear") return Family::piecewise_linear;
  if (name == "quadratic") return Family::quadratic;
  if (name == "henon") return Family::henon;
  if (name == "linear") return Family::linear;
  throw ConleyError(Errc::unknown_family, "unknown family: " + name);
}

}  // namespace

SystemSpec system_from_json(const Json& j) {
  SystemSpec s;
  std::string type = j.value("type", "sampled");
  if (type == "digraph") {
    s.sampled = false;
    const Json& verts = j.at("vertices");
    s.vertex_count =
        verts.is_number() ? verts.get<std::size_t>() : verts.size();
    for (const auto& e : j.value("edges", Json::array()))
      s.edges.emplace_back(e.at(0).get<Id>(), e.at(1).get<Id>());
    for (const auto& v : j.value("exits", Json::array()))
      s.exit_ids.push_back(v.get<Id>());
    for (const auto& v : j.value("boundary", Json::array()))
      s.boundary_ids.push_back(v.get<Id>());
    return s;
  }
  if (type != "sampled")
    throw ConleyError(Errc::invalid_argument, "type must be sampled or digraph");
  s.dimension = j.at("dimension").get<int>();
  if (s.dimension < 1 || s.dimension > kMaxDim)
    throw ConleyError(Errc::invalid_argument, "dimension must be in [1,3]");
  for (const auto& b : j.at("bounds"))
    s.bounds.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
  if (s.bounds.size() != static_cast<std::size_t>(s.dimension))
    throw ConleyError(Errc::invalid_argument, "bounds arity mismatch");
  s.family = family_from_name(j.at("family").get<std::string>());
  for (const auto& p : j.value("params", Json::array()))
    s.params.push_back(p.get<double>());
  for (const auto& p : j.value("offset", Json::array()))
    s.offset.push_back(p.get<double>());
  s.depth = j.value("depth", 0);
  s.padding = j.value("padding", 0.0);
  return s;
}

SystemSpec system_from_file(const std::string& path) {
  return system_from_json(load_json_file(path));
}

Mat<Z> matrix_from_json(const Json& j) {
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const Json& entries = j.at("entries");
  if (entries.size() != rows)
    throw ConleyError(Errc::io, "matrix entry rows mismatch");
  Mat<Z> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols)
      throw ConleyError(Errc::io, "matrix entry cols mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = entries[i][c];
      if (e.is_string())
        m(i, c) = Z(e.get<std::string>());
      else
        m(i, c) = Z(e.get<long long>());
    }
  }
  return m;
}

Json matrix_to_json(const Mat<Z>& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j).str());
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

Json matrix_to_json(const Mat<Q>& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j).str());
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

Json pair_to_json(const FiltrationPair& p) {
  Json n = Json::array(), l = Json::array();
  for (Id b : p.N.ids()) n.push_back(b);
  for (Id b : p.L.ids()) l.push_back(b);
  return Json{{"N", std::move(n)},
              {"L", std::move(l)},
              {"valid", {p.valid.isolates, p.valid.covers_exit, p.valid.image_escapes}}};
}

Json pointed_to_json(const PointedDigraph& pd) {
  Json verts = Json::array(), edges = Json::array();
  pd.vertices.for_each([&](Id v) {
    verts.push_back(v);
    for (Id w : pd.out[v]) edges.push_back(Json::array({v, w}));
  });
  return Json{{"vertices", std::move(verts)},
              {"edges", std::move(edges)},
              {"basepoint", pd.star}};
}

Json homology_to_json(const HomologyGroups& g) {
  Json out = Json::array();
  for (std::size_t k = 0; k < g.betti.size(); ++k) {
    Json tor = Json::array();
    for (const Z& t : g.torsion[k]) tor.push_back(t.str());
    out.push_back(Json{{"dim", k}, {"betti", g.betti[k]}, {"torsion", std::move(tor)}});
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConleyError(Errc::io, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConleyError(Errc::io, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConleyError(Errc::io, "cannot write " + path);
  out << text;
}

}  // namespace conley
