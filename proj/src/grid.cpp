#include "grid.hpp"

#include "errors.hpp"

namespace conley {

BoxGrid::BoxGrid(int dimension, std::vector<Ival> bounds, std::vector<Id> subdivisions)
    : dim_(dimension), bounds_(std::move(bounds)), subs_(std::move(subdivisions)) {
  if (dim_ < 1 || dim_ > kMaxDim)
    throw ConleyError(Errc::invalid_argument, "grid dimension must be in [1,3]");
  if (bounds_.size() != static_cast<std::size_t>(dim_) ||
      subs_.size() != static_cast<std::size_t>(dim_))
    throw ConleyError(Errc::invalid_argument, "bounds/subdivisions arity mismatch");
  count_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (subs_[a] < 1)
      throw ConleyError(Errc::invalid_argument, "subdivisions must be positive");
    if (!(bounds_[a].lo < bounds_[a].hi))
      throw ConleyError(Errc::invalid_argument, "degenerate bounds interval");
    count_ *= subs_[a];
  }
}

double BoxGrid::box_width(int axis) const {
  return (bounds_[axis].hi - bounds_[axis].lo) / static_cast<double>(subs_[axis]);
}

std::array<Id, kMaxDim> BoxGrid::coords(Id id) const {
  std::array<Id, kMaxDim> c{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    c[a] = id % subs_[a];
    id /= subs_[a];
  }
  return c;
}

Id BoxGrid::id_of(const std::array<Id, kMaxDim>& c) const {
  Id id = 0;
  for (int a = 0; a < dim_; ++a) id = id * subs_[a] + c[a];
  return id;
}

Ival BoxGrid::box_interval(Id id, int axis) const {
  auto c = coords(id);
  double w = box_width(axis);
  double lo = bounds_[axis].lo;
  return {lo + static_cast<double>(c[axis]) * w,
          lo + static_cast<double>(c[axis] + 1) * w};
}

bool BoxGrid::on_outer_face(Id id) const {
  auto c = coords(id);
  for (int a = 0; a < dim_; ++a)
    if (c[a] == 0 || c[a] == subs_[a] - 1) return true;
  return false;
}

bool BoxGrid::bounds_eq(const BoxGrid& o) const {
  for (std::size_t i = 0; i < bounds_.size(); ++i)
    if (bounds_[i].lo != o.bounds_[i].lo || bounds_[i].hi != o.bounds_[i].hi)
      return false;
  return true;
}

BoxSet BoxSet::from_ids(std::size_t universe, std::span<const Id> ids) {
  BoxSet s(universe);
  for (Id id : ids) s.insert(id);
  return s;
}

BoxSet BoxSet::full(std::size_t universe) {
  BoxSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<Id>(i));
  return s;
}

void BoxSet::insert(Id id) {
  if (id < 0 || static_cast<std::size_t>(id) >= mask_.size())
    throw ConleyError(Errc::invalid_argument, "id outside universe");
  if (!mask_[id]) {
    mask_[id] = 1;
    ++count_;
  }
}

void BoxSet::erase(Id id) {
  if (id < 0 || static_cast<std::size_t>(id) >= mask_.size()) return;
  if (mask_[id]) {
    mask_[id] = 0;
    --count_;
  }
}

std::vector<Id> BoxSet::ids() const {
  std::vector<Id> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(static_cast<Id>(i));
  return out;
}

BoxSet BoxSet::operator|(const BoxSet& o) const {
  if (universe() != o.universe())
    throw ConleyError(Errc::invalid_argument, "universe mismatch");
  BoxSet r(universe());
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] || o.mask_[i]) r.insert(static_cast<Id>(i));
  return r;
}

BoxSet BoxSet::operator&(const BoxSet& o) const {
  if (universe() != o.universe())
    throw ConleyError(Errc::invalid_argument, "universe mismatch");
  BoxSet r(universe());
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && o.mask_[i]) r.insert(static_cast<Id>(i));
  return r;
}

BoxSet BoxSet::operator-(const BoxSet& o) const {
  if (universe() != o.universe())
    throw ConleyError(Errc::invalid_argument, "universe mismatch");
  BoxSet r(universe());
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !o.mask_[i]) r.insert(static_cast<Id>(i));
  return r;
}

bool BoxSet::subset_of(const BoxSet& o) const {
  if (universe() != o.universe())
    throw ConleyError(Errc::invalid_argument, "universe mismatch");
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !o.mask_[i]) return false;
  return true;
}

bool BoxSet::operator==(const BoxSet& o) const {
  return universe() == o.universe() && mask_ == o.mask_;
}

}  // namespace conley
