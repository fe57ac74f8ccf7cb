#include "../include/conley/conley.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include "errors.hpp"
#include "report.hpp"

namespace {

using namespace conley;

thread_local std::string g_last_error;
thread_local std::string g_last_error_name;

struct SystemHandle {
  SystemSpec spec;
  std::size_t box_budget = kDefaultBoxBudget;
  std::size_t interval_budget = kDefaultIntervalBudget;
};

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

conley_status status_of(const ConleyError& e) {
  switch (e.code()) {
    case Errc::refine:
    case Errc::degenerate_pair:
    case Errc::nonrectangular_image:
    case Errc::box_budget:
    case Errc::budget:
      return CONLEY_REFINE;
    default:
      return CONLEY_ERROR;
  }
}

template <typename F>
conley_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    g_last_error_name.clear();
    return CONLEY_OK;
  } catch (const ConleyError& e) {
    g_last_error = e.what();
    g_last_error_name = errc_name(e.code());
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    g_last_error_name = "Internal";
    return CONLEY_ERROR;
  }
}

FiltrationMode mode_of(const char* mode) {
  if (mode == nullptr || std::string(mode) == "chain") return FiltrationMode::chain;
  if (std::string(mode) == "poset") return FiltrationMode::poset;
  throw ConleyError(Errc::invalid_argument, "mode must be chain or poset");
}

int effective_depth(const SystemHandle* h, int depth) {
  return depth >= 0 ? depth : h->spec.depth;
}

double effective_padding(const SystemHandle* h, double padding) {
  return padding >= 0 ? padding : h->spec.padding;
}

Analysis run(const SystemHandle* h, int depth, double padding, const char* mode) {
  if (h == nullptr)
    throw ConleyError(Errc::invalid_argument, "null system handle");
  return analyze_system(h->spec, effective_depth(h, depth),
                        effective_padding(h, padding), mode_of(mode),
                        h->box_budget, h->interval_budget);
}

}  // namespace

extern "C" {

conley_status conley_system_from_json(const char* json_text, conley_system** out) {
  return guarded([&] {
    if (json_text == nullptr || out == nullptr)
      throw ConleyError(Errc::invalid_argument, "null argument");
    Json j;
    try {
      j = Json::parse(json_text);
    } catch (const std::exception& e) {
      throw ConleyError(Errc::io, std::string("malformed JSON: ") + e.what());
    }
    auto* h = new SystemHandle{system_from_json(j)};
    *out = reinterpret_cast<conley_system*>(h);
  });
}

conley_status conley_system_from_file(const char* path, conley_system** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr)
      throw ConleyError(Errc::invalid_argument, "null argument");
    auto* h = new SystemHandle{system_from_file(path)};
    *out = reinterpret_cast<conley_system*>(h);
  });
}

void conley_system_free(conley_system* sys) {
  delete reinterpret_cast<SystemHandle*>(sys);
}

conley_status conley_set_budgets(conley_system* sys, long long box_budget,
                                 long long interval_budget) {
  return guarded([&] {
    auto* h = reinterpret_cast<SystemHandle*>(sys);
    if (h == nullptr)
      throw ConleyError(Errc::invalid_argument, "null system handle");
    if (box_budget > 0) h->box_budget = static_cast<std::size_t>(box_budget);
    if (interval_budget > 0)
      h->interval_budget = static_cast<std::size_t>(interval_budget);
  });
}

conley_status conley_analyze(conley_system* sys, int depth, double padding,
                             const char* mode, char** report_json) {
  return guarded([&] {
    if (report_json == nullptr)
      throw ConleyError(Errc::invalid_argument, "null output argument");
    auto* h = reinterpret_cast<SystemHandle*>(sys);
    auto t0 = std::chrono::steady_clock::now();
    Analysis a = run(h, depth, padding, mode);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    *report_json = dup_string(analysis_to_json(a, true, ms).dump(2));
  });
}

conley_status conley_morse(conley_system* sys, int depth, double padding,
                           const char* mode, char** report_json, char** dot) {
  return guarded([&] {
    auto* h = reinterpret_cast<SystemHandle*>(sys);
    Analysis a = run(h, depth, padding, mode);
    if (report_json) *report_json = dup_string(analysis_to_json(a, false, 0).dump(2));
    if (dot) *dot = dup_string(morse_dot(a));
  });
}

conley_status conley_pair(conley_system* sys, int depth, double padding,
                          char** pair_json) {
  return guarded([&] {
    if (pair_json == nullptr)
      throw ConleyError(Errc::invalid_argument, "null output argument");
    auto* h = reinterpret_cast<SystemHandle*>(sys);
    Analysis a = run(h, depth, padding, "chain");
    Json j;
    j["pair"] = pair_to_json(a.pair);
    j["quotient"] = pointed_to_json(a.pd);
    *pair_json = dup_string(j.dump(2));
  });
}

conley_status conley_invariant(conley_system* sys, int depth, double padding,
                               char** inv_json) {
  return guarded([&] {
    if (inv_json == nullptr)
      throw ConleyError(Errc::invalid_argument, "null output argument");
    auto* h = reinterpret_cast<SystemHandle*>(sys);
    if (h == nullptr)
      throw ConleyError(Errc::invalid_argument, "null system handle");
    BoxMap map = build_boxmap(h->spec, effective_depth(h, depth),
                              effective_padding(h, padding), h->box_budget);
    BoxSet invset = inv(map, map.all_boxes());
    Json ids = Json::array();
    for (Id b : invset.ids()) ids.push_back(b);
    *inv_json = dup_string(Json{{"inv", std::move(ids)}}.dump(2));
  });
}

conley_status conley_continue(conley_system* sys, const double* perturbation,
                              int len, int depth, double padding,
                              char** report_json) {
  return guarded([&] {
    if (report_json == nullptr)
      throw ConleyError(Errc::invalid_argument, "null output argument");
    auto* h = reinterpret_cast<SystemHandle*>(sys);
    if (h == nullptr)
      throw ConleyError(Errc::invalid_argument, "null system handle");
    std::vector<double> pert;
    for (int i = 0; i < len; ++i) pert.push_back(perturbation[i]);
    ContinuationReport rep =
        continuation_check(h->spec, pert, effective_depth(h, depth),
                           effective_padding(h, padding), h->box_budget);
    Json j;
    j["pair_valid"] = rep.robustness.valid.ok();
    j["conditions"] = {rep.robustness.valid.isolates, rep.robustness.valid.covers_exit,
                       rep.robustness.valid.image_escapes};
    j["inv_changed"] = rep.robustness.inv_changed;
    j["compared"] = rep.compared;
    if (rep.compared) {
      Json eq = Json::array();
      for (bool b : rep.equivalent) eq.push_back(b);
      j["equivalent"] = std::move(eq);
    }
    *report_json = dup_string(j.dump(2));
  });
}

conley_status conley_shifteq(const char* a_json, const char* b_json,
                             char** verdict_json) {
  return guarded([&] {
    if (a_json == nullptr || b_json == nullptr || verdict_json == nullptr)
      throw ConleyError(Errc::invalid_argument, "null argument");
    Mat<Z> A, B;
    try {
      A = matrix_from_json(Json::parse(a_json));
      B = matrix_from_json(Json::parse(b_json));
    } catch (const ConleyError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConleyError(Errc::io, std::string("malformed matrix JSON: ") + e.what());
    }
    if (A.rows != A.cols || B.rows != B.cols)
      throw ConleyError(Errc::shape_mismatch, "matrices must be square");
    bool eq = shift_equivalent_rational(A, B);
    ZReport zr = z_distinguishers(A, B);
    Json j;
    j["rational"] = eq ? "equivalent" : "inequivalent";
    j["z_report"] = Json{{"trace_mismatch", zr.trace_mismatch},
                         {"charpoly_mismatch", zr.charpoly_mismatch},
                         {"det_mismatch", zr.det_mismatch},
                         {"verdict", zr.distinguished() ? "distinguished"
                                                        : "not-distinguished"}};
    *verdict_json = dup_string(j.dump(2));
  });
}

void conley_string_free(char* s) { std::free(s); }

const char* conley_last_error(void) { return g_last_error.c_str(); }
const char* conley_last_error_name(void) { return g_last_error_name.c_str(); }

}  // extern "C"
