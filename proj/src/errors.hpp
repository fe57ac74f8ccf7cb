#ifndef CONLEY_ERRORS_HPP
#define CONLEY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conley {

// Machine-readable failure categories.  Refine and DegeneratePair are
// signals that a finer grid would help; they map to CLI exit code 1.
enum class Errc {
  unknown_family,
  nonfinite_hull,
  box_budget,
  invalid_argument,
  invalid_pair,
  degenerate_pair,
  refine,
  grid_mismatch,
  digraph_only,
  nonrectangular_image,
  carrier_not_acyclic,
  shape_mismatch,
  not_intertwining,
  invalid_witness,
  not_an_interval,
  not_attracting,
  not_attracting_interval,
  budget,
  io,
};

class ConleyError : public std::runtime_error {
 public:
  ConleyError(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unknown_family: return "UnknownFamily";
    case Errc::nonfinite_hull: return "NonfiniteHull";
    case Errc::box_budget: return "BoxBudget";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::invalid_pair: return "InvalidPair";
    case Errc::degenerate_pair: return "DegeneratePair";
    case Errc::refine: return "Refine";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::digraph_only: return "DigraphOnly";
    case Errc::nonrectangular_image: return "NonrectangularImage";
    case Errc::carrier_not_acyclic: return "CarrierNotAcyclic";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::not_intertwining: return "NotIntertwining";
    case Errc::invalid_witness: return "InvalidWitness";
    case Errc::not_an_interval: return "NotAnInterval";
    case Errc::not_attracting: return "NotAttracting";
    case Errc::not_attracting_interval: return "NotAttractingInterval";
    case Errc::budget: return "Budget";
    case Errc::io: return "IO";
  }
  return "Unknown";
}

}  // namespace conley

#endif
