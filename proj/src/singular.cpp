#include "mql/singular.hpp"

#include <algorithm>
#include <cmath>

#include "mql/linalg.hpp"

namespace mql {

namespace {

// A polynomial flattened for repeated evaluation against per-point power tables.
class FlatPoly {
 public:
  explicit FlatPoly(const FieldPoly& f) : nvars_(f.nvars()) {
    for (const auto& t : f.terms()) {
      coeffs_.push_back(t.coeff);
      for (auto e : t.exponents) {
        exps_.push_back(e);
        max_exp_ = std::max<unsigned>(max_exp_, e);
      }
    }
  }

  unsigned max_exponent() const noexcept { return max_exp_; }

  // powers[i * stride + e] = x_i^e
  Index eval(const Field& f, const std::vector<Index>& powers, std::size_t stride) const {
    Index acc = Field::kZero;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      Index v = coeffs_[t];
      const std::uint32_t* e = &exps_[t * nvars_];
      for (std::size_t i = 0; i < nvars_ && v != 0; ++i)
        if (e[i]) v = f.mul(v, powers[i * stride + e[i]]);
      acc = f.add(acc, v);
    }
    return acc;
  }

 private:
  std::size_t nvars_;
  unsigned max_exp_ = 0;
  std::vector<Index> coeffs_;
  std::vector<std::uint32_t> exps_;
};

// The system and its Jacobian, flattened.
struct FlatSystem {
  explicit FlatSystem(const FamilyInstance& inst) : field(inst.field), n(inst.ambient_dim + 1) {
    for (const auto& p : inst.system.polys) {
      eqs.emplace_back(p);
      stride = std::max<std::size_t>(stride, eqs.back().max_exponent() + 1);
      std::vector<FlatPoly> row;
      for (std::size_t i = 0; i < n; ++i) row.emplace_back(derivative(p, i));
      grads.push_back(std::move(row));
    }
  }

  void fill_powers(const std::vector<Index>& x, std::vector<Index>& powers) const {
    powers.assign(n * stride, 0);
    for (std::size_t i = 0; i < n; ++i) {
      powers[i * stride] = Field::kOne;
      for (std::size_t e = 1; e < stride; ++e) powers[i * stride + e] = field.mul(powers[i * stride + e - 1], x[i]);
    }
  }

  bool on_variety(const std::vector<Index>& powers) const {
    return std::all_of(eqs.begin(), eqs.end(), [&](const FlatPoly& f) { return f.eval(field, powers, stride) == 0; });
  }

  std::size_t jacobian_rank(const std::vector<Index>& powers) const {
    FieldMatrix j(field, grads.size(), n);
    for (std::size_t r = 0; r < grads.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) j(r, c) = grads[r][c].eval(field, powers, stride);
    return j.rank();
  }

  Field field;
  std::size_t n;
  std::size_t stride = 1;
  std::vector<FlatPoly> eqs;
  std::vector<std::vector<FlatPoly>> grads;
};

struct PointList {
  std::vector<std::vector<Index>> items;
  PointList& operator+=(const PointList& o) {
    items.insert(items.end(), o.items.begin(), o.items.end());
    return *this;
  }
};

void require_enumerable(const FamilyInstance& inst) {
  const std::uint64_t cap = inst.ambient_dim == 4 ? 41 : 13;
  if (inst.ambient_dim > 5 || inst.field.order() > cap)
    throw Error(ErrorCode::kInstanceTooLarge,
                "singular-locus scan over " + inst.field.name() + " in P^" + std::to_string(inst.ambient_dim));
}

void require_power_map(const MonomialMap& map, const Field& f) {
  if ((f.order() - 1) % map.exponent != 0)
    throw Error(ErrorCode::kRootOfUnityUnavailable,
                f.name() + " lacks the " + std::to_string(map.exponent) + "th roots of unity");
}

// roots[v] = all x with x^e = v.
std::vector<std::vector<Index>> root_lists(const Field& f, unsigned e) {
  std::vector<std::vector<Index>> roots(f.order());
  for (Index x = 0; x < f.order(); ++x) roots[f.pow(x, e)].push_back(x);
  return roots;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::size_t SingularReport::count(Stratum s) const {
  const auto it = by_stratum.find(s);
  return it == by_stratum.end() ? 0 : it->second;
}

SingularReport singular_points(const FamilyInstance& instance, unsigned threads) {
  if (!instance.complete_intersection)
    throw Error(ErrorCode::kInvalidArgument, "Jacobian criterion needs a complete intersection");
  require_enumerable(instance);
  const FlatSystem sys(instance);
  const std::uint64_t q = instance.field.order();
  const std::size_t codim = instance.codimension();

  const PointList found = parallel_sum<PointList>(
      projective_point_count(q, instance.ambient_dim), threads, [&](std::uint64_t lo, std::uint64_t hi) {
        PointList out;
        std::vector<Index> powers;
        for_each_normalized(q, instance.ambient_dim, lo, hi, [&](const std::vector<Index>& x) {
          sys.fill_powers(x, powers);
          if (sys.on_variety(powers) && sys.jacobian_rank(powers) < codim) out.items.push_back(x);
        });
        return out;
      });

  SingularReport r{instance.id, instance.params_key(), instance.field, {}, {}};
  for (const auto& x : found.items) r.points.emplace_back(instance.field, x);
  std::sort(r.points.begin(), r.points.end());
  r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
  for (const auto& pt : r.points) {
    const Stratum s = instance.id == FamilyId::QuinticY ? strata_membership(pt, instance) : Stratum::Generic;
    ++r.by_stratum[s];
  }
  return r;
}

NodeClassification classify_node(const FamilyInstance& instance, const ProjectivePoint& point) {
  const Field& f = instance.field;
  if (f.characteristic() <= 5)
    throw Error(ErrorCode::kBadCharacteristic, "node test needs characteristic > 5, got " + f.name());
  if (instance.codimension() != 1) throw Error(ErrorCode::kInvalidArgument, "node test needs a hypersurface");
  if (!(point.field() == f)) throw Error(ErrorCode::kFieldMismatch, "point field");
  const FieldPoly& eq = instance.system.polys.front();
  const std::size_t n = eq.nvars();
  if (point.size() != n) throw Error(ErrorCode::kDimensionMismatch, "point arity");

  const auto& x = point.coords();
  bool singular = eval(eq, std::span<const Index>(x)) == Field::kZero;
  std::vector<FieldPoly> grad;
  for (std::size_t i = 0; i < n; ++i) {
    grad.push_back(derivative(eq, i));
    singular = singular && eval(grad.back(), std::span<const Index>(x)) == Field::kZero;
  }
  if (!singular) throw Error(ErrorCode::kNotSingular, point.to_string() + " is not a singular point");

  NodeClassification c{point, true, 0, 0, false};
  while (x[c.chart] == Field::kZero) ++c.chart;
  // Setting x_chart = 1 commutes with differentiating in the remaining variables.
  FieldMatrix h(f, n - 1, n - 1);
  std::size_t r = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (a == c.chart) continue;
    std::size_t s = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == c.chart) continue;
      h(r, s++) = eval(derivative(grad[a], b), std::span<const Index>(x));
    }
    ++r;
  }
  c.hessian_rank = h.rank();
  c.is_node = c.hessian_rank == n - 1;
  return c;
}

FiberReport preimage_count(const MonomialMap& map, const ProjectivePoint& base, const FamilyInstance* source) {
  const Field& f = base.field();
  if (base.size() != map.arity) throw Error(ErrorCode::kDimensionMismatch, "monomial map arity");
  require_power_map(map, f);
  if (source && !(source->field == f)) throw Error(ErrorCode::kFieldMismatch, "source field");

  FiberReport r{base, map.arity == 5 ? zero_pattern_stratum(base) : Stratum::Generic, 0, 0, 0, false};
  const std::size_t m = base.nonzero_count();
  r.predicted = ipow(map.exponent, m - 1);
  r.predicted_on_x = m == map.arity ? r.predicted / map.exponent : r.predicted;

  // Normalized preimages share the leading index with the base and have 1 there,
  // which pins the scalar: x_i^e = base_i exactly.
  std::vector<std::vector<Index>> choices(base.size());
  r.ratios_are_powers = true;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (Index x = 0; x < f.order(); ++x)
      if (f.pow(x, map.exponent) == base[i]) choices[i].push_back(x);
    if (choices[i].empty()) r.ratios_are_powers = false;
  }
  const std::size_t lead = static_cast<std::size_t>(
      std::find(base.coords().begin(), base.coords().end(), Field::kOne) - base.coords().begin());
  choices[lead] = {Field::kOne};

  if (!source) {
    r.preimages = 1;
    for (const auto& c : choices) r.preimages *= c.size();
    return r;
  }
  std::vector<std::size_t> pos(base.size(), 0);
  std::vector<Index> x(base.size());
  if (!r.ratios_are_powers) return r;
  while (true) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = choices[i][pos[i]];
    if (satisfies(*source, x)) ++r.preimages;
    std::size_t i = x.size();
    while (i > 0 && ++pos[i - 1] == choices[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
  }
  return r;
}

FiberSum phi_fiber_sum(const Field& field, unsigned threads) {
  require_power_map(kPhi, field);
  const auto roots = root_lists(field, kPhi.exponent);
  const std::uint64_t q = field.order();
  FiberSum s;
  s.base_points = projective_point_count(q, 4);
  s.expected = s.base_points;
  s.total_preimages = parallel_sum<std::uint64_t>(s.base_points, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t total = 0;
    for_each_normalized(q, 4, lo, hi, [&](const std::vector<Index>& y) {
      std::uint64_t n = 1;
      bool lead = true;
      for (const auto c : y) {
        if (c == 0) continue;
        if (!lead) n *= roots[c].size();
        lead = false;
      }
      total += n;
    });
    return total;
  });
  return s;
}

FiberSum phi_fiber_sum_over_y(const FieldElement& mu, unsigned threads) {
  const Field& field = mu.field();
  require_power_map(kPhi, field);
  if (field.order() > 41) throw Error(ErrorCode::kInstanceTooLarge, "fibre sum over " + field.name());
  const auto x_inst = quintic_x(mu);
  const auto y_inst = quintic_y(mu);
  const std::uint64_t q = field.order();
  const std::uint64_t total = projective_point_count(q, 4);

  struct Acc {
    std::uint64_t base = 0, pre = 0, x = 0;
    Acc& operator+=(const Acc& o) {
      base += o.base;
      pre += o.pre;
      x += o.x;
      return *this;
    }
  };
  const Acc acc = parallel_sum<Acc>(total, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    Acc a;
    for_each_normalized(q, 4, lo, hi, [&](const std::vector<Index>& pt) {
      if (satisfies(x_inst, pt)) ++a.x;
      if (satisfies(y_inst, pt)) {
        ++a.base;
        a.pre += preimage_count(kPhi, ProjectivePoint(field, pt), &x_inst).preimages;
      }
    });
    return a;
  });
  return {acc.base, acc.pre, acc.x};
}

SurfaceEvidence surface_evidence(const Field& field, std::optional<FieldElement> xi5, unsigned threads) {
  const auto q_inst = quadric_q(field, xi5);
  const auto x_inst = quintic_x(field.one());
  const auto y_inst = quintic_y(field.one());
  const FlatSystem qsys(q_inst);
  const std::uint64_t q = field.order();

  SurfaceEvidence ev{field};
  ev.node_on_q = satisfies(q_inst, ProjectivePoint::from_ints(field, {1, 1, 1, 1, 1}));

  struct Acc {
    std::uint64_t pts = 0, on_x = 0, smooth = 0, on_y = 0, off_a = 0;
    Acc& operator+=(const Acc& o) {
      pts += o.pts;
      on_x += o.on_x;
      smooth += o.smooth;
      on_y += o.on_y;
      off_a += o.off_a;
      return *this;
    }
  };
  const Acc acc = parallel_sum<Acc>(projective_point_count(q, 4), threads, [&](std::uint64_t lo, std::uint64_t hi) {
    Acc a;
    std::vector<Index> powers;
    for_each_normalized(q, 4, lo, hi, [&](const std::vector<Index>& x) {
      qsys.fill_powers(x, powers);
      if (!qsys.on_variety(powers)) return;
      ++a.pts;
      if (satisfies(x_inst, x)) ++a.on_x;
      if (qsys.jacobian_rank(powers) == 2) ++a.smooth;
      const ProjectivePoint image = apply_map(kPhi, ProjectivePoint(field, x));
      if (satisfies(y_inst, image)) {
        ++a.on_y;
        const Stratum s = strata_membership(image, y_inst);
        if (s == Stratum::Generic || s == Stratum::ExtraNode) ++a.off_a;
      }
    });
    return a;
  });
  ev.q_points = acc.pts;
  ev.q_points_on_x = acc.on_x;
  ev.q_smooth_points = acc.smooth;
  ev.images_on_y = acc.on_y;
  ev.images_off_a = acc.off_a;
  return ev;
}

}  // namespace mql
