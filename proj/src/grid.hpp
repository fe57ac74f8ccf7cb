#ifndef CONLEY_GRID_HPP
#define CONLEY_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace conley {

using Id = std::int64_t;

constexpr int kMaxDim = 3;

struct Ival {
  double lo = 0.0;
  double hi = 0.0;
};

// Uniform rectangular grid over an axis-aligned outer rectangle.  Depth d
// produced by bisection yields 2^d closed boxes per axis; adjacent boxes
// share faces.  Box ids are row-major over the per-axis indices.
class BoxGrid {
 public:
  BoxGrid() = default;
  BoxGrid(int dimension, std::vector<Ival> bounds, std::vector<Id> subdivisions);

  int dimension() const { return dim_; }
  const std::vector<Ival>& bounds() const { return bounds_; }
  const std::vector<Id>& subdivisions() const { return subs_; }
  Id box_count() const { return count_; }

  double box_width(int axis) const;

  std::array<Id, kMaxDim> coords(Id id) const;
  Id id_of(const std::array<Id, kMaxDim>& c) const;

  Ival box_interval(Id id, int axis) const;
  bool on_outer_face(Id id) const;

  bool operator==(const BoxGrid& o) const {
    return dim_ == o.dim_ && subs_ == o.subs_ && bounds_eq(o);
  }

 private:
  bool bounds_eq(const BoxGrid& o) const;

  int dim_ = 0;
  std::vector<Ival> bounds_;
  std::vector<Id> subs_;
  Id count_ = 0;
};

// A subset of box ids (or digraph vertex ids) with a fixed universe size.
// Dense bitmap; set algebra is exact.
class BoxSet {
 public:
  BoxSet() = default;
  explicit BoxSet(std::size_t universe) : mask_(universe, 0) {}
  static BoxSet from_ids(std::size_t universe, std::span<const Id> ids);
  static BoxSet full(std::size_t universe);

  std::size_t universe() const { return mask_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Id id) const {
    return id >= 0 && static_cast<std::size_t>(id) < mask_.size() && mask_[id];
  }
  void insert(Id id);
  void erase(Id id);

  std::vector<Id> ids() const;

  BoxSet operator|(const BoxSet& o) const;
  BoxSet operator&(const BoxSet& o) const;
  BoxSet operator-(const BoxSet& o) const;
  bool subset_of(const BoxSet& o) const;
  bool operator==(const BoxSet& o) const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) f(static_cast<Id>(i));
  }

 private:
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

}  // namespace conley

#endif
