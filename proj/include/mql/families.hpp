#pragma once

// The named varieties: the quintic pencil X_mu, its mirror model Y_mu, the
// quadric surface Q through the node (1:1:1:1:1) of X_1, the complete
// intersections V_lambda, W_lambda and W~_nu in P^5, plus the singular lines A
// and triple points B of Y_mu (as set-theoretic systems).
//
// Each family is stored once as an integer template whose trailing variables
// are the parameters, and instantiated into a field by partial evaluation.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mql/ffield.hpp"
#include "mql/linalg.hpp"
#include "mql/mvpoly.hpp"
#include "mql/projective.hpp"

namespace mql {

enum class FamilyId { QuinticX, QuinticY, QuadricQ, CubicsV, CubicsW, CubicsWtilde, LinesA, PointsB };

// CLI / cache tags: X, Y, Q, V, W, Wt, A, B.
std::string_view family_tag(FamilyId id) noexcept;
std::optional<FamilyId> parse_family(std::string_view tag) noexcept;

using ParamMap = std::map<std::string, FieldElement>;

struct FamilyInstance {
  FamilyId id;
  Field field;
  ParamMap params;
  FieldSystem system;
  std::size_t ambient_dim;        // n for P^n
  bool complete_intersection;     // false for the set-theoretic A and B systems

  std::size_t codimension() const noexcept { return system.polys.size(); }
  // "name=value" pairs joined by ';' in name order, e.g. "mu=1".
  std::string params_key() const;
  const FieldElement& param(const std::string& name) const;
};

// Integer templates; the parameter (if any) is the last variable.
IntPoly quintic_x_template();                  // x0..x4, mu
IntPoly quintic_y_template();                  // x0..x4, mu
std::vector<IntPoly> quadric_q_template();     // x0..x4, xi5
std::vector<IntPoly> cubics_v_template();      // x0..x5, lambda
std::vector<IntPoly> cubics_w_template();      // x0..x5, lambda
std::vector<IntPoly> cubics_wtilde_template(); // x0..x5, nu

FamilyInstance build_family(FamilyId id, const ParamMap& params, const Field& field);

FamilyInstance quintic_x(const FieldElement& mu);
FamilyInstance quintic_y(const FieldElement& mu);
// Uses the field's deterministic primitive 5th root when xi5 is not given.
FamilyInstance quadric_q(const Field& field, std::optional<FieldElement> xi5 = std::nullopt);
FamilyInstance cubics_v(const FieldElement& lambda);
FamilyInstance cubics_w(const FieldElement& lambda);
FamilyInstance cubics_wtilde(const FieldElement& nu);
// nu = 1 / lambda^3.
FamilyInstance cubics_wtilde_from_lambda(const FieldElement& lambda);
FamilyInstance lines_a(const Field& field);
FamilyInstance points_b(const Field& field);

bool satisfies(const FamilyInstance& instance, const std::vector<Index>& coords);
bool satisfies(const FamilyInstance& instance, const ProjectivePoint& point);

// x_i -> x_i^exponent on P^{arity-1}.
struct MonomialMap {
  unsigned exponent = 1;
  std::size_t arity = 0;
};

inline constexpr MonomialMap kPhi{5, 5};
inline constexpr MonomialMap kPsi{3, 6};

// x_i -> sum_j matrix(i, j) x_j, matrix invertible.
class LinearChange {
 public:
  explicit LinearChange(FieldMatrix matrix);

  const FieldMatrix& matrix() const noexcept { return matrix_; }
  std::size_t arity() const noexcept { return matrix_.rows(); }
  LinearChange inverse() const;

 private:
  FieldMatrix matrix_;
};

ProjectivePoint apply_map(const MonomialMap& map, const ProjectivePoint& point);
ProjectivePoint apply_map(const LinearChange& change, const ProjectivePoint& point);

FieldPoly substitute(const FieldPoly& f, const MonomialMap& map);
FieldPoly substitute(const FieldPoly& f, const LinearChange& change);

enum class Stratum { Generic, OnLineA, InPointSetB, ExtraNode };
std::string_view to_string(Stratum s) noexcept;

// Position of a point of P^4 relative to the singular locus of Y_mu.
Stratum strata_membership(const ProjectivePoint& point, const FamilyInstance& y_instance);
// Same classification by coordinates alone (never reports ExtraNode).
Stratum zero_pattern_stratum(const ProjectivePoint& point);

// The block change x0 -> x0+x1+x2, x1 -> x0+xi x1+xi^2 x2, x2 -> x0+xi^2 x1+xi x2
// and likewise on x3, x4, x5.
LinearChange cubics_coordinate_change(const FieldElement& xi3);

struct CoordinateChangeCheck {
  FieldElement xi3;
  bool first_equation = false;   // 27 (x0^3 - l^3 (x3^3+x4^3+x5^3-3x3x4x5))
  bool second_equation = false;  // 27 (x3^3 - l^3 (x0^3+x1^3+x2^3-3x0x1x2))
  bool nu_form = false;          // both agree with -27 l^3 times the nu-normalized pair
  bool passed() const noexcept { return first_equation && second_equation && nu_form; }
};

CoordinateChangeCheck check_coordinate_change(const FieldElement& lambda);
bool verify_coordinate_change(const FieldElement& lambda);

struct WtildeImageCheck {
  std::size_t samples = 0;
  std::size_t on_wtilde = 0;
  bool passed() const noexcept { return samples > 0 && on_wtilde == samples; }
};

// Random points of W_lambda, rewritten in the new coordinates and pushed
// through psi, must land on W~_nu with nu = 1/lambda^3.
WtildeImageCheck check_wtilde_images(const FieldElement& lambda, std::size_t samples, std::mt19937_64& rng);

// Uniformly random F_q-points of the instance found by rejection sampling.
std::vector<ProjectivePoint> sample_points(const FamilyInstance& instance, std::size_t count, std::mt19937_64& rng,
                                           std::uint64_t max_attempts = 50'000'000);

}  // namespace mql
