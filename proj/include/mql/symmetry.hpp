#pragma once

// Diagonal symmetry groups acting by roots of unity:
//   G  = {(l1,l2,l3,l4) in (Z/5)^4 : l1+l2+l3+l4 = 0}, x_i -> xi5^{l_i} x_i (i >= 1);
//   G~ = {(a,b,d,e; m) : a,b,d,e in Z/3, m in Z/9, m = a+b = d+e mod 3} acting on P^5 by
//        (xi3^a xi9^m, xi3^b xi9^m, xi9^m, xi3^-d xi9^-m, xi3^-e xi9^-m, xi9^-m),
// with xi3 = xi9^3 throughout so that the two roots are compatible.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mql/families.hpp"

namespace mql {

struct ScalingElement {
  std::array<int, 4> lambda{};  // residues mod 5

  friend auto operator<=>(const ScalingElement&, const ScalingElement&) = default;
};

struct GtildeElement {
  int alpha = 0, beta = 0, delta = 0, epsilon = 0;  // mod 3
  int mu = 0;                                       // mod 9

  friend auto operator<=>(const GtildeElement&, const GtildeElement&) = default;
};

bool is_member(const ScalingElement& g) noexcept;
bool is_member(const GtildeElement& g) noexcept;
ScalingElement compose(const ScalingElement& a, const ScalingElement& b) noexcept;
GtildeElement compose(const GtildeElement& a, const GtildeElement& b) noexcept;
ScalingElement inverse(const ScalingElement& g) noexcept;
GtildeElement inverse(const GtildeElement& g) noexcept;
std::string to_string(const ScalingElement& g);
std::string to_string(const GtildeElement& g);

template <class E>
struct GroupSpec {
  std::vector<E> elements;  // sorted
  E identity{};

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(const E& g) const;
};

extern template struct GroupSpec<ScalingElement>;
extern template struct GroupSpec<GtildeElement>;

GroupSpec<ScalingElement> enumerate_G();
GroupSpec<GtildeElement> enumerate_Gtilde();

struct AxiomReport {
  bool closure = false;
  bool identity = false;
  bool inverses = false;
  bool associativity = false;
  bool abelian = false;
  std::uint64_t exponent = 0;  // lcm of element orders

  bool group() const noexcept { return closure && identity && inverses && associativity; }
};

// Exhaustive over all pairs (and triples for associativity).
AxiomReport check_axioms(const GroupSpec<ScalingElement>& group);
AxiomReport check_axioms(const GroupSpec<GtildeElement>& group);

// Per-coordinate scalars in the given field.  Throws kRootOfUnityUnavailable
// when 5 (resp. 9) does not divide q - 1.
std::vector<Index> action_scalars(const ScalingElement& g, const Field& field);
std::vector<Index> action_scalars(const GtildeElement& g, const Field& field);

ProjectivePoint act(const std::vector<Index>& scalars, const ProjectivePoint& point);
FieldPoly act(const std::vector<Index>& scalars, const FieldPoly& f);

// Every defining polynomial, composed with g, is a nonzero multiple of one of
// the defining polynomials.
bool invariance_check(const ScalingElement& g, const FamilyInstance& instance);
bool invariance_check(const GtildeElement& g, const FamilyInstance& instance);
// Same criterion for a raw diagonal action, e.g. a non-member scaling.
bool invariance_check(const std::vector<Index>& scalars, const FamilyInstance& instance);

std::set<ProjectivePoint> orbit(const ProjectivePoint& point, const GroupSpec<ScalingElement>& group);
std::set<ProjectivePoint> orbit(const ProjectivePoint& point, const GroupSpec<GtildeElement>& group);

struct PsiKernelReport {
  GroupSpec<GtildeElement> kernel;
  std::uint64_t quotient_order = 0;
  GtildeElement generator;                  // a coset representative of order 9
  std::array<int, 6> induced_xi3_exponents{};  // induced action on the image, projectively normalized
  bool scales_first_block_by_xi3 = false;   // exponents (1,1,1,0,0,0)
};

// Kernel of the action through psi: elements whose cubed scalars agree
// projectively, computed on exponents of xi9.
PsiKernelReport psi_kernel();

struct CosetActionCheck {
  std::size_t samples = 0;
  std::size_t image_on_w = 0;     // psi(v) lies on W_lambda
  std::size_t agrees = 0;         // psi(g v) = (xi3 y0 : xi3 y1 : xi3 y2 : y3 : y4 : y5), y = psi(v)
  std::size_t stays_on_w = 0;     // the scaled image still lies on W_lambda

  bool passed() const noexcept { return samples > 0 && image_on_w == samples && agrees == samples && stays_on_w == samples; }
};

// Samples points v of V_lambda and compares psi(g v) with the xi3-scaling of
// psi(v) for the generator reported by psi_kernel().
CosetActionCheck coset_action_check(const FieldElement& lambda, std::size_t samples, std::mt19937_64& rng);

struct MapInvarianceReport {
  std::size_t elements = 0;
  std::size_t invariant = 0;      // g with f(g x) = f(x) on every F_q-point
  std::size_t expected = 0;       // how many should be invariant
  bool matches_expectation = false;
};

// phi(g x) = phi(x) on all of P^4(F_q) for every g in G.
MapInvarianceReport phi_invariance(const Field& field, unsigned threads = 1);
// psi(g x) = psi(x) on all of P^5(F_q) exactly for g in the psi-kernel.
MapInvarianceReport psi_invariance(const Field& field, unsigned threads = 1);

}  // namespace mql
