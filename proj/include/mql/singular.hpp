#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mql/families.hpp"

namespace mql {

struct SingularReport {
  FamilyId family = FamilyId::QuinticX;
  std::string params;
  Field field;
  std::vector<ProjectivePoint> points;  // sorted, deduplicated
  std::map<Stratum, std::size_t> by_stratum;  // only Y_mu is stratified; other families report Generic

  std::size_t count(Stratum s) const;
};

// All F_q-points of the variety where the Jacobian has rank below the
// codimension.  Hypersurfaces in P^4 need q <= 31 (plus 41 for the node
// census), P^5 pairs q <= 13; larger inputs raise kInstanceTooLarge.
SingularReport singular_points(const FamilyInstance& instance, unsigned threads = 1);

struct NodeClassification {
  ProjectivePoint point;
  bool is_singular = false;
  std::size_t chart = 0;  // dehomogenized coordinate
  std::size_t hessian_rank = 0;
  bool is_node = false;
};

// Hessian test on the affine chart at the first nonzero coordinate.
// Refuses characteristic <= 5 (kBadCharacteristic) and smooth points (kNotSingular).
NodeClassification classify_node(const FamilyInstance& instance, const ProjectivePoint& point);

struct FiberReport {
  ProjectivePoint base;
  Stratum stratum = Stratum::Generic;  // by zero pattern
  std::uint64_t preimages = 0;         // projective F_q-points over base (in the source, if given)
  std::uint64_t predicted = 0;         // e^{m-1}, m = number of nonzero coordinates
  // Degree of X_mu -> Y_mu over this point.  With every coordinate nonzero the
  // ambient fibre splits evenly over the e twists X_{zeta mu}, so this is
  // predicted / e there and predicted elsewhere.
  std::uint64_t predicted_on_x = 0;
  bool ratios_are_powers = false;      // every nonzero coordinate of base is an e-th power
};

// Projective F_q-points x with map(x) = base.  With a source instance only
// points of that instance are counted (restricted fibre).  Needs e | q - 1.
FiberReport preimage_count(const MonomialMap& map, const ProjectivePoint& base,
                           const FamilyInstance* source = nullptr);

struct FiberSum {
  std::uint64_t base_points = 0;
  std::uint64_t total_preimages = 0;
  std::uint64_t expected = 0;
};

// Sum of ambient phi-fibres over all of P^4(F_q); expected is #P^4(F_q).
FiberSum phi_fiber_sum(const Field& field, unsigned threads = 1);
// Sum over y in Y_mu(F_q) of the fibres restricted to X_mu; expected is #X_mu(F_q).
FiberSum phi_fiber_sum_over_y(const FieldElement& mu, unsigned threads = 1);

struct SurfaceEvidence {
  Field field;
  bool node_on_q = false;           // (a)
  std::uint64_t q_points = 0;
  std::uint64_t q_points_on_x = 0;  // (b)
  std::uint64_t q_smooth_points = 0;  // (c) Jacobian of Q has rank 2
  std::uint64_t images_on_y = 0;    // (d) phi-image lies on Y_1 ...
  std::uint64_t images_off_a = 0;   //     ... with stratum Generic or ExtraNode

  bool passed() const noexcept {
    return node_on_q && q_points > 0 && q_points_on_x == q_points && q_smooth_points == q_points &&
           images_on_y == q_points && images_off_a == q_points;
  }
};

// Exhaustive evidence that Q lies on X_1 and is smooth, and a tally of where
// phi(Q) lands relative to the singular lines of Y_1.  Points of Q with two
// vanishing coordinates map onto those lines, so images_off_a can fall short
// of q_points (it does over F_31).  Needs 5 | q - 1.
SurfaceEvidence surface_evidence(const Field& field, std::optional<FieldElement> xi5 = std::nullopt,
                                 unsigned threads = 1);

}  // namespace mql
