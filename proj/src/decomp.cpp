#include "lenstor/decomp.hpp"

namespace lenstor {

AffineDecomposition affine_decompose(const ResidueFunction& f) {
  const FinAbGroup& group = f.group();
  const QZ constant = f[0];
  const auto factors = group.invariant_factors();

  std::vector<std::int64_t> coefficients(group.rank());
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const Rational scaled = Rational(factors[i]) * (f(group.generator(i)) - constant).representative();
    if (!scaled.is_integer()) {
      throw NotAffine("F(g) - F(1) has order not dividing " + std::to_string(factors[i]) + " on generator " +
                      std::to_string(i));
    }
    coefficients[i] = scaled.numerator().get_si();
  }
  Character lambda(group, std::move(coefficients));

  // lambda agrees with a genuine character everywhere iff the character law
  // holds on all pairs.
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const GroupElement h = group.at(idx);
    if (!(f[idx] - constant == lambda(h))) {
      throw NotAffine("F - F(1) is not a character at " + h.to_string());
    }
  }
  return AffineDecomposition{constant, std::move(lambda)};
}

namespace {

void require_refines(const ModZTorsion& xi, const QuadraticFormQZ& q) {
  xi.values.require_same_group(q.group());
  const BilinearFormQZ lk = extract_linking(xi);
  BilinearFormQZ dq = BilinearFormQZ::zero(q.group());
  try {
    dq = delta_quadratic(q);
  } catch (const NotQuadratic& e) {
    throw RefinementMismatch(std::string("refinement is not quadratic: ") + e.what());
  }
  if (!(dq == -lk)) throw RefinementMismatch("Delta q differs from -lk of the torsion");
}

bool normal_form_holds(const ResidueFunction& xi, const QuadraticFormQZ& q, const GroupElement& g, const QZ& c) {
  const FinAbGroup& group = xi.group();
  for (std::size_t idx = 0; idx < xi.size(); ++idx) {
    const GroupElement h = group.at(idx);
    if (!(xi(g + h) == c + q.values()[idx])) return false;
  }
  return true;
}

void require_single(std::size_t count, const char* path) {
  if (count == 0) throw NoSolution(std::string(path) + ": no translation puts Xi in the form c + q");
  if (count > 1) {
    throw MultipleSolutions(std::string(path) + ": " + std::to_string(count) +
                            " translations put Xi in the form c + q");
  }
}

}  // namespace

std::vector<OrbitEntry> brute_force_shifts(const ModZTorsion& xi, const QuadraticFormQZ& q) {
  xi.values.require_same_group(q.group());
  const FinAbGroup& group = xi.values.group();
  std::vector<OrbitEntry> hits;
  for (std::size_t idx = 0; idx < xi.values.size(); ++idx) {
    const GroupElement g = group.at(idx);
    const QZ c = xi.values[idx];
    if (normal_form_holds(xi.values, q, g, c)) hits.push_back({q, g, c});
  }
  return hits;
}

StructureResult decompose(const ModZTorsion& xi, const QuadraticFormQZ& q, Verification mode) {
  require_refines(xi, q);
  const FinAbGroup& group = xi.values.group();
  const BilinearFormQZ dq = delta_quadratic(q);

  // Xi(g h) = Xi(g) + lambda(h) + Dq(g, h) + q(h), so the shift solves
  // lambda(h) + Dq(g, h) = 0; both sides are characters, so generators suffice.
  const AffineDecomposition affine = affine_decompose(xi.values - q.values());
  std::vector<GroupElement> solutions;
  for (std::size_t idx = 0; idx < xi.values.size(); ++idx) {
    const GroupElement g = group.at(idx);
    bool ok = true;
    for (std::size_t i = 0; i < group.rank() && ok; ++i) {
      const GroupElement gi = group.generator(i);
      ok = (affine.character(gi) + dq(g, gi)).is_zero();
    }
    if (ok) solutions.push_back(g);
  }
  require_single(solutions.size(), "structured");
  const GroupElement shift = solutions.front();
  const QZ c = xi.values(shift);
  if (!normal_form_holds(xi.values, q, shift, c)) {
    throw InternalError("structured shift " + shift.to_string() + " does not normalize Xi");
  }

  if (mode == Verification::cross_check) {
    const auto hits = brute_force_shifts(xi, q);
    require_single(hits.size(), "brute force");
    if (!(hits.front().shift == shift) || !(hits.front().c == c)) {
      throw InternalError("structured (" + shift.to_string() + ", " + c.to_string() + ") and brute force (" +
                          hits.front().shift.to_string() + ", " + hits.front().c.to_string() + ") disagree");
    }
  }

  StructureResult result{c, shift, q, true, {}};
  result.orbit.push_back({q, shift, c});
  return result;
}

QuadraticFormQZ base_refinement(const BilinearFormQZ& lk, const LatticeResolution* resolution) {
  const FinAbGroup& group = lk.group();
  const BilinearFormQZ target = -lk;

  if (resolution != nullptr) {
    const DiscriminantForm disc = discriminant_form(*resolution);
    const auto phi = find_isometry(disc.bilinear, target);
    if (!phi) throw RefinementMismatch("resolution does not present the linking form of the torsion");
    std::vector<QZ> values(group.checked_size());
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      const GroupElement u = disc.group.at(idx);
      values[(*phi)(u).index()] = disc.quadratic(u);
    }
    return QuadraticFormQZ(ResidueFunction(group, std::move(values)));
  }

  if (group.rank() == 1) {
    const std::int64_t p = group.invariant_factors()[0];
    const Rational a = Rational(p) * lk.gram(0, 0).representative();
    return cyclic_refinement(p, a.numerator().get_si(), -1);
  }
  return standard_refinement(target);
}

InvariantReport canonical_invariant(const ModZTorsion& xi, Verification mode, const LatticeResolution* resolution) {
  const BilinearFormQZ lk = extract_linking(xi);
  const QuadraticFormQZ base = base_refinement(lk, resolution);

  InvariantReport report{decompose(xi, base, mode), lk, true};
  StructureResult& s = report.structure;
  const auto orbit = refinement_orbit(base);
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    const StructureResult r = decompose(xi, orbit[i], mode);
    s.orbit.push_back(r.orbit.front());
    if (!(r.c == s.c)) s.c_stable = false;
  }

  const FinAbGroup& group = xi.values.group();
  for (const auto& entry : s.orbit) {
    for (std::size_t idx = 0; idx < xi.values.size() && report.symmetric; ++idx) {
      const GroupElement h = group.at(idx);
      report.symmetric = xi.values(entry.shift + h) == xi.values(entry.shift - h);
    }
  }
  return report;
}

Verdict distinguish(const ModZTorsion& a, const ModZTorsion& b, Verification mode,
                    const LatticeResolution* resolution_a, const LatticeResolution* resolution_b) {
  const QZ ca = canonical_invariant(a, mode, resolution_a).c();
  const QZ cb = canonical_invariant(b, mode, resolution_b).c();
  return Verdict{!(ca == cb), ca, cb};
}

}  // namespace lenstor
