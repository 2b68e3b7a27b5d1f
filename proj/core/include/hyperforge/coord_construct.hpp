#pragma once

#include <optional>
#include <vector>

#include "hyperforge/algebra_element.hpp"
#include "hyperforge/certificate.hpp"
#include "hyperforge/criteria.hpp"
#include "hyperforge/pairing.hpp"
#include "hyperforge/targets.hpp"

namespace hyperforge {

struct CoordOptions {
  unsigned rounds = 12;
  // Number of generators; 1 builds a single hypercyclic-algebra generator.
  unsigned classes = 1;
  PkOptions pk{};
  std::uint64_t scan_budget = 5'000'000;
  // Previously computed witness to continue from; must use the same pk options.
  std::optional<PkWitness> seed;
};

struct CoordRound {
  round_t r = 0;
  unsigned m = 1;
  unsigned l = 1;
  std::size_t target_id = 0;
  unsigned generator = 1;
  index_t a = 0;
  // Position of a in the hypercyclicity witness and the tolerance met there.
  std::size_t pk_position = 0;
  wide_real log_pk_tol = 0;
  FiniteSeq block;
  Certificate A1;  // ||block||_r < 2^{-r}
  Certificate A2;  // worst ||T^{a_t} block^nu||_r against 2^{-r}
  Certificate A3;  // a_r - a_{r-1} > s of the previous round's target

  bool certified() const { return A1.pass && A2.pass && A3.pass; }
};

/// Record of the coordinatewise construction: rounds r = (m, l) with
/// blocks (S^{a_r} y^{(l)})^{1/m}, each assigned to the generator of l's class.
struct CoordBundle {
  SpaceSpec space = SpaceSpec::make(SpaceId::lp, 1.0);
  Weight weight = Weight::constant(2.0);
  std::vector<FiniteSeq> targets;
  unsigned classes = 1;
  PkOptions pk_options{};
  std::vector<CoordRound> rounds;

  TargetSchedule schedule() const { return TargetSchedule(targets, classes); }
  bool certified() const;
  // Truncated generator: all blocks (k = 0) or the blocks of class k.
  FiniteSeq generator(unsigned k = 0) const;
  std::vector<FiniteSeq> generators() const;
};

class CoordBuilder {
 public:
  CoordBuilder(SpaceSpec space, Weight weight, std::vector<FiniteSeq> targets, CoordOptions options);

  // Smallest admissible witness index for the next round, with certificates.
  const CoordRound& select_next();
  const CoordBundle& run();
  const CoordBundle& bundle() const noexcept { return bundle_; }
  const PkWitness& witness() const noexcept { return pk_; }

 private:
  CoordBundle bundle_;
  CoordOptions options_;
  TargetSchedule schedule_;
  PkWitness pk_;
};

CoordBundle build_generator(const SpaceSpec& space, const Weight& w, const std::vector<FiniteSeq>& targets,
                            unsigned rounds, const PkOptions& pk = {});
CoordBundle build_algebrable(const SpaceSpec& space, const Weight& w, const std::vector<FiniteSeq>& targets,
                             unsigned K, unsigned rounds, const PkOptions& pk = {});

// Certificates A.1-A.3 for a block placed at a in round r, given earlier rounds.
CoordRound certify_round(const CoordBundle& bundle, round_t r, index_t a);

/// Recomputes every certificate and the witness condition at each a_r
/// from the bundle alone.
CheckResult revalidate(const CoordBundle& bundle);

struct HomogeneousPart {
  unsigned degree = 0;
  FiniteSeq value;
};

// Q_nu = sum_{|beta| = nu} c_beta prod_k (x^{(k)})^{beta_k} with the
// coordinatewise product; cross terms of disjointly supported generators vanish.
std::vector<HomogeneousPart> homogeneous_parts(const AlgebraElement& z, const std::vector<FiniteSeq>& generators);

}  // namespace hyperforge
