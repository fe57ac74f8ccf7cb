#include "report.hpp"

#include <sstream>

#include "errors.hpp"

namespace conley {

Analysis analyze_system(const SystemSpec& spec, int depth, double padding,
                        FiltrationMode mode, std::size_t box_budget,
                        std::size_t interval_budget) {
  Analysis a;
  a.map = build_boxmap(spec, depth, padding, box_budget);
  BoxSet all = a.map.all_boxes();

  BoxSet B;
  if (is_isolating_block(a.map, all)) {
    B = all;
  } else {
    if (!is_isolating_neighborhood(a.map, all))
      throw ConleyError(Errc::refine,
                        "the region is not an isolating neighborhood; increase depth");
    auto blk = isolating_block_in(a.map, all);
    if (!blk)
      throw ConleyError(Errc::refine,
                        "no isolating block at this depth; increase depth");
    B = *blk;
  }
  BoxSet L = grow_exit_collar(a.map, B);
  a.pair = make_pair(a.map, B, L);
  if (!a.pair.valid.ok())
    throw ConleyError(Errc::invalid_pair, "constructed pair failed validation");
  a.pd = pointed_map(a.map, a.pair);
  a.inv_core_size = inv(a.map, B - L).size();

  if (a.map.grid_mode()) {
    a.im = index_map(a.map, a.pair);
    for (const Mat<Z>& m : a.im.matrices) a.leray.push_back(leray_reduction(m));
    a.trivial = is_trivial_index(a.im.matrices);
    a.has_homology = true;
  }

  Digraph d = as_digraph(a.pd);
  a.poset = associated_decomposition(a.pd);
  a.filt = morse_filtration(d, a.poset, mode, interval_budget);
  a.filt_report = validate_morse_filtration(d, a.poset, a.filt);
  return a;
}

BoxSet quotient_preimage(const Analysis& a, const BoxSet& S) {
  BoxSet boxes(a.map.node_count());
  S.for_each([&](Id v) {
    if (v != a.pd.star) boxes.insert(v);
  });
  if (S.contains(a.pd.star)) boxes = boxes | a.pair.L;
  return boxes;
}

namespace {

Json leray_to_json(const LerayForm& f) {
  Json cp = Json::array();
  for (const Q& c : f.charpoly) cp.push_back(c.str());
  return Json{{"reduced_dim", f.reduced_dim},
              {"action", matrix_to_json(f.action)},
              {"charpoly", std::move(cp)}};
}

// Per-dimension reduced index dimensions for a Morse class, best effort.
std::string class_index_summary(const Analysis& a, const Digraph& d,
                                std::size_t p) {
  if (!a.has_homology) return "";
  try {
    Interval I, J;
    for (std::size_t q = 0; q < a.poset.size(); ++q)
      if (q == p || a.poset.less(q, p)) I.push_back(q);
    for (std::size_t q : I)
      if (q != p) J.push_back(q);
    BoxSet NI = quotient_preimage(a, attracting_neighborhood_of_interval(d, a.poset, I));
    BoxSet NJ = quotient_preimage(a, attracting_neighborhood_of_interval(d, a.poset, J));
    FiltrationPair pr = make_pair(a.map, NI, NJ);
    if (!pr.valid.ok()) return "?";
    IndexMap im = index_map(a.map, pr);
    std::ostringstream os;
    os << "con=[";
    for (std::size_t k = 0; k < im.matrices.size(); ++k)
      os << (k ? "," : "") << leray_reduction(im.matrices[k]).reduced_dim;
    os << "]";
    return os.str();
  } catch (const ConleyError&) {
    return "?";
  }
}

}  // namespace

Json analysis_to_json(const Analysis& a, bool with_timings, double elapsed_ms) {
  Json j;
  j["pair"] = Json{{"n_size", a.pair.N.size()},
                   {"l_size", a.pair.L.size()},
                   {"valid", {a.pair.valid.isolates, a.pair.valid.covers_exit,
                              a.pair.valid.image_escapes}}};
  j["inv_core_size"] = a.inv_core_size;

  if (a.has_homology) {
    j["homology"] = homology_to_json(a.im.groups);
    Json idx = Json::array();
    for (const Mat<Z>& m : a.im.matrices) idx.push_back(matrix_to_json(m));
    j["index"] = std::move(idx);
    Json lf = Json::array();
    for (const LerayForm& f : a.leray) lf.push_back(leray_to_json(f));
    j["leray"] = std::move(lf);
    j["trivial"] = a.trivial;
  }

  Json classes = Json::array();
  for (const BoxSet& c : a.poset.classes) {
    Json ids = Json::array();
    for (Id v : c.ids()) ids.push_back(v);
    classes.push_back(std::move(ids));
  }
  Json order = Json::array();
  for (std::size_t p = 0; p < a.poset.size(); ++p)
    for (std::size_t q = 0; q < a.poset.size(); ++q)
      if (a.poset.less(p, q)) order.push_back(Json::array({p, q}));
  Json morse = Json{{"classes", std::move(classes)}, {"order", std::move(order)}};
  if (a.poset.basepoint_class) morse["basepoint_class"] = *a.poset.basepoint_class;
  j["morse"] = std::move(morse);

  Json intervals = Json::array(), sizes = Json::array(), defects = Json::array();
  for (const Interval& I : a.filt.intervals) intervals.push_back(I);
  for (const BoxSet& s : a.filt.sets) sizes.push_back(s.size());
  for (Id b : a.filt.defects) defects.push_back(b);
  j["filtration"] =
      Json{{"mode", a.filt.mode == FiltrationMode::chain ? "chain" : "poset"},
           {"intervals", std::move(intervals)},
           {"set_sizes", std::move(sizes)},
           {"defects", std::move(defects)},
           {"valid", a.filt_report.ok()},
           {"failures", a.filt_report.failures}};

  if (with_timings) j["timings"] = Json{{"total_ms", elapsed_ms}};
  return j;
}

std::string morse_dot(const Analysis& a) {
  Digraph d = as_digraph(a.pd);
  std::ostringstream os;
  os << "digraph morse {\n";
  for (std::size_t p = 0; p < a.poset.size(); ++p) {
    os << "  m" << p << " [label=\"M" << p << " |" << a.poset.classes[p].size()
       << "|";
    if (a.poset.basepoint_class && p == *a.poset.basepoint_class)
      os << " base";
    std::string idx = class_index_summary(a, d, p);
    if (!idx.empty()) os << " " << idx;
    os << "\"];\n";
  }
  for (std::size_t p = 0; p < a.poset.size(); ++p)
    for (std::size_t q = 0; q < a.poset.size(); ++q) {
      if (!a.poset.less(p, q)) continue;
      bool covering = true;
      for (std::size_t r = 0; r < a.poset.size(); ++r)
        if (a.poset.less(p, r) && a.poset.less(r, q)) covering = false;
      if (covering) os << "  m" << q << " -> m" << p << ";\n";
    }
  os << "}\n";
  return os.str();
}

ContinuationReport continuation_check(const SystemSpec& spec,
                                      const std::vector<double>& perturbation,
                                      int depth, double padding,
                                      std::size_t box_budget) {
  if (!spec.sampled)
    throw ConleyError(Errc::digraph_only, "continuation needs a sampled system");
  Analysis a = analyze_system(spec, depth, padding, FiltrationMode::chain, box_budget);

  SystemSpec spec2 = spec;
  spec2.offset.resize(spec.dimension, 0.0);
  for (int ax = 0; ax < spec.dimension; ++ax) {
    double eps = perturbation.empty()
                     ? 0.0
                     : perturbation[std::min<std::size_t>(ax, perturbation.size() - 1)];
    spec2.offset[ax] += eps;
  }
  BoxMap map2 = build_boxmap(spec2, depth, padding, box_budget);

  ContinuationReport rep;
  rep.robustness = robustness_check(map2, a.map, a.pair);
  if (rep.robustness.valid.ok()) {
    FiltrationPair p2{a.pair.N, a.pair.L, rep.robustness.valid};
    IndexMap im2 = index_map(map2, p2);
    rep.compared = true;
    for (std::size_t k = 0; k < a.im.matrices.size(); ++k)
      rep.equivalent.push_back(
          shift_equivalent_rational(a.im.matrices[k], im2.matrices[k]));
  }
  return rep;
}

}  // namespace conley
