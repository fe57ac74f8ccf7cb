#ifndef CONLEY_REPORT_HPP
#define CONLEY_REPORT_HPP

#include <string>

#include "algebra.hpp"
#include "json_io.hpp"
#include "morse.hpp"

namespace conley {

struct Analysis {
  BoxMap map;
  FiltrationPair pair;
  PointedDigraph pd;
  std::size_t inv_core_size = 0;

  bool has_homology = false;  // grid systems only
  IndexMap im;
  std::vector<LerayForm> leray;
  bool trivial = true;

  MorsePoset poset;
  MorseFiltration filt;
  MorseFiltrationReport filt_report;
};

// Full pipeline: box map, isolating block, collar pair, quotient, homology
// index (grid systems), Morse decomposition and filtration.
Analysis analyze_system(const SystemSpec& spec, int depth, double padding,
                        FiltrationMode mode,
                        std::size_t box_budget = kDefaultBoxBudget,
                        std::size_t interval_budget = kDefaultIntervalBudget);

// Pointed-level vertex set pulled back to box ids: ⋆ becomes L.
BoxSet quotient_preimage(const Analysis& a, const BoxSet& S);

Json analysis_to_json(const Analysis& a, bool with_timings, double elapsed_ms);

std::string morse_dot(const Analysis& a);

struct ContinuationReport {
  RobustnessRecord robustness;
  bool compared = false;         // false when the pair broke under map2
  std::vector<bool> equivalent;  // per dimension, when compared
};

ContinuationReport continuation_check(const SystemSpec& spec,
                                      const std::vector<double>& perturbation,
                                      int depth, double padding,
                                      std::size_t box_budget = kDefaultBoxBudget);

}  // namespace conley

#endif
