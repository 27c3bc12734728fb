#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "iqcl/formula.hpp"

namespace iqcl {

/// Finite ordered set of formulas; duplicates are dropped on insertion.
class Theory {
 public:
  Theory() = default;
  Theory(std::initializer_list<Formula> members);
  explicit Theory(const std::vector<Formula>& members);

  /// Returns false when `f` was already present.
  bool add(const Formula& f);
  bool contains(const Formula& f) const;
  /// Zero-based position of `f`, or size() when absent.
  std::size_t index_of(const Formula& f) const;

  const std::vector<Formula>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const Formula& operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const Theory& a, const Theory& b) { return a.members_ == b.members_; }

 private:
  std::vector<Formula> members_;
};

}  // namespace iqcl
