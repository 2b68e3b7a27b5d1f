#include "hyperforge/targets.hpp"

#include "hyperforge/error.hpp"

namespace hyperforge {

TargetSchedule::TargetSchedule(std::vector<FiniteSeq> base, unsigned classes)
    : base_(std::move(base)), classes_(classes) {
  if (base_.empty()) throw Error(ErrorCode::invalid_argument, "at least one target is required");
  if (classes_ < 1) throw Error(ErrorCode::invalid_argument, "number of classes must be >= 1");
  for (const FiniteSeq& y : base_) {
    if (y.empty()) throw Error(ErrorCode::invalid_argument, "targets must be nonzero");
  }
}

std::size_t TargetSchedule::target_id(unsigned l) const {
  if (l < 1) throw Error(ErrorCode::invalid_argument, "target indices start at 1");
  return ((l - 1) / classes_) % base_.size();
}

unsigned TargetSchedule::class_of(unsigned l) const {
  if (l < 1) throw Error(ErrorCode::invalid_argument, "target indices start at 1");
  return (l - 1) % classes_ + 1;
}

std::vector<FiniteSeq> default_base_targets() {
  FiniteSeq y2;
  y2.set(0, WideComplex(1.0));
  y2.set(1, WideComplex(1.0));
  FiniteSeq y3;
  y3.set(0, WideComplex(2.0));
  y3.set(1, WideComplex(-1.0));
  return {FiniteSeq::basis(0), y2, y3, FiniteSeq::basis(2, WideComplex(std::complex<double>(0.0, 1.0)))};
}

}  // namespace hyperforge
