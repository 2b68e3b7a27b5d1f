#pragma once

#include <vector>

#include "hyperforge/finite_seq.hpp"

namespace hyperforge {

/// Assigns a base target to every target index l >= 1 by cycling, optionally
/// split into K residue classes of l so that each class also cycles through
/// every base target.
class TargetSchedule {
 public:
  explicit TargetSchedule(std::vector<FiniteSeq> base, unsigned classes = 1);

  const std::vector<FiniteSeq>& base() const noexcept { return base_; }
  unsigned classes() const noexcept { return classes_; }

  std::size_t target_id(unsigned l) const;
  const FiniteSeq& target(unsigned l) const { return base_[target_id(l)]; }
  index_t support_end(unsigned l) const { return target(l).max_index(); }
  // Class of l in 1..K.
  unsigned class_of(unsigned l) const;

 private:
  std::vector<FiniteSeq> base_;
  unsigned classes_;
};

// e_0, e_0 + e_1, 2 e_0 - e_1, i e_2
std::vector<FiniteSeq> default_base_targets();

}  // namespace hyperforge
