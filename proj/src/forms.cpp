#include "lenstor/forms.hpp"

#include <functional>
#include <numeric>

namespace lenstor {

namespace {

Rational half() { return Rational(1, 2); }

// q(sum r_i g_i) = sum r_i^2 q_i + sum_{i<j} r_i r_j b_ij. A refinement of b
// provided 2 q_i = b_ii and n_i^2 q_i = 0 mod Z.
QuadraticFormQZ refinement_from_generators(const FinAbGroup& group, const std::vector<QZ>& diagonal,
                                           const BilinearFormQZ& b) {
  const std::size_t k = group.rank();
  return QuadraticFormQZ(ResidueFunction::tabulate(group, [&](const GroupElement& h) {
    Rational sum;
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t ri = h.residue(i);
      if (ri == 0) continue;
      sum += Rational(BigInt(ri) * ri) * diagonal[i].representative();
      for (std::size_t j = i + 1; j < k; ++j) {
        const std::int64_t rj = h.residue(j);
        if (rj != 0) sum += Rational(BigInt(ri) * rj) * b.gram(i, j).representative();
      }
    }
    return qz_reduce(sum);
  }));
}

// Fixes a candidate generator value of an odd-order factor by 1/2 when needed
// so that n^2 q = 0; for even n the candidate is kept.
QZ well_defined_diagonal(const Rational& candidate, std::int64_t n) {
  const Rational n2(BigInt(n) * n);
  if ((n2 * candidate).is_integer()) return qz_reduce(candidate);
  const Rational fixed = candidate + half();
  if (n % 2 == 0 || !(n2 * fixed).is_integer()) {
    throw NotQuadratic("no well-defined refinement value on a factor of order " + std::to_string(n));
  }
  return qz_reduce(fixed);
}

}  // namespace

BilinearFormQZ BilinearFormQZ::zero(FinAbGroup group) {
  const std::size_t k = group.rank();
  return BilinearFormQZ(std::move(group), std::vector<QZ>(k * k));
}

BilinearFormQZ::BilinearFormQZ(FinAbGroup group, std::vector<QZ> entries)
    : group_(std::move(group)), gram_(std::move(entries)) {
  const std::size_t k = group_.rank();
  if (gram_.size() != k * k) throw InvalidForm("gram matrix must be rank x rank");
  const auto factors = group_.invariant_factors();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!(gram(i, j) == gram(j, i))) throw InvalidForm("gram matrix is not symmetric");
      if (!(factors[i] * gram(i, j)).is_zero()) {
        throw InvalidForm("gram entry " + gram(i, j).to_string() + " is not killed by " +
                          std::to_string(factors[i]));
      }
    }
}

QZ BilinearFormQZ::operator()(const GroupElement& u, const GroupElement& v) const {
  if (!(u.group() == group_) || !(v.group() == group_)) throw GroupMismatch("form evaluated off its group");
  const std::size_t k = group_.rank();
  Rational sum;
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t ri = u.residue(i);
    if (ri == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t sj = v.residue(j);
      if (sj != 0) sum += Rational(BigInt(ri) * sj) * gram(i, j).representative();
    }
  }
  return qz_reduce(sum);
}

BilinearFormQZ BilinearFormQZ::operator-() const {
  std::vector<QZ> g;
  g.reserve(gram_.size());
  for (const auto& x : gram_) g.push_back(-x);
  return BilinearFormQZ(group_, std::move(g));
}

bool QuadraticFormQZ::satisfies_quadratic_axioms() const {
  const FinAbGroup& g = group();
  if (!values_[0].is_zero()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const GroupElement u = g.at(i);
    const std::int64_t ord = u.order();
    for (std::int64_t k = 2; k < ord; ++k) {
      if (!(values_[(k * u).index()] == (k * k) * values_[i])) return false;
    }
  }
  return true;
}

QuadraticFormQZ QuadraticFormQZ::shifted(const Character& mu) const {
  return QuadraticFormQZ(values_ + ResidueFunction::tabulate(group(), [&](const GroupElement& h) { return mu(h); }));
}

BilinearFormQZ delta_quadratic(const QuadraticFormQZ& q) {
  const FinAbGroup& group = q.group();
  const std::size_t k = group.rank();
  if (!q.values()[0].is_zero()) throw NotQuadratic("q(identity) is not zero");

  std::vector<QZ> gram(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const GroupElement gi = group.generator(i);
      const GroupElement gj = group.generator(j);
      gram[i * k + j] = q(gi + gj) - q(gi) - q(gj);
    }
  std::optional<BilinearFormQZ> b;
  try {
    b.emplace(group, std::move(gram));
  } catch (const InvalidForm& e) {
    throw NotQuadratic(std::string("Delta q is not a bilinear form: ") + e.what());
  }

  // With q(0) = 0, D(u, v + g) = D(u, v) + b(u, g) for generators g gives
  // D = b on all pairs by induction on v.
  for (std::size_t idx = 0; idx < q.values().size(); ++idx) {
    const GroupElement u = group.at(idx);
    for (std::size_t i = 0; i < k; ++i) {
      const GroupElement g = group.generator(i);
      if (!(q(u + g) - q(u) - q(g) == (*b)(u, g))) {
        throw NotQuadratic("Delta q is not biadditive at u = " + u.to_string());
      }
    }
  }
  return *b;
}

bool is_nonsingular(const BilinearFormQZ& b) {
  const FinAbGroup& group = b.group();
  const std::size_t n = group.checked_size();
  for (std::size_t idx = 1; idx < n; ++idx) {
    const GroupElement u = group.at(idx);
    bool in_radical = true;
    for (std::size_t i = 0; i < group.rank() && in_radical; ++i) {
      in_radical = b(u, group.generator(i)).is_zero();
    }
    if (in_radical) return false;
  }
  return true;
}

LatticeResolution::LatticeResolution(IntMatrix matrix, std::vector<std::int64_t> continued_fraction)
    : matrix_(std::move(matrix)), continued_fraction_(std::move(continued_fraction)) {
  if (!matrix_.is_symmetric()) throw BadParameters("resolution matrix must be square and symmetric");
  order_ = abs(determinant(matrix_));
  if (order_ == 0) throw SingularMatrix("resolution matrix is degenerate");
}

std::vector<std::int64_t> hirzebruch_jung_expansion(std::int64_t p, std::int64_t q) {
  if (p < 2 || q < 1 || q >= p || std::gcd(p, q) != 1) {
    throw BadParameters("need p >= 2, 1 <= q < p, gcd(p, q) = 1; got p=" + std::to_string(p) +
                        ", q=" + std::to_string(q));
  }
  std::vector<std::int64_t> a;
  while (q != 0) {
    const std::int64_t ai = (p + q - 1) / q;
    a.push_back(ai);
    const std::int64_t next = ai * q - p;
    p = q;
    q = next;
  }
  return a;
}

Rational evaluate_continued_fraction(std::span<const std::int64_t> a) {
  if (a.empty()) throw BadParameters("empty continued fraction");
  Rational value(a.back());
  for (std::size_t i = a.size() - 1; i-- > 0;) value = Rational(a[i]) - Rational(1) / value;
  return value;
}

LatticeResolution lens_resolution(std::int64_t p, std::int64_t q) {
  auto a = hirzebruch_jung_expansion(p, q);
  const std::size_t m = a.size();
  IntMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    b(i, i) = -a[i];
    if (i + 1 < m) {
      b(i, i + 1) = 1;
      b(i + 1, i) = 1;
    }
  }
  LatticeResolution r(std::move(b), std::move(a));
  if (r.order() != p) throw InternalError("plumbing determinant differs from p");
  return r;
}

GroupElement DiscriminantForm::project(std::span<const BigInt> dual_vector) const {
  if (dual_vector.size() != projection.cols()) throw BadParameters("dual vector has the wrong length");
  const auto factors = group.invariant_factors();
  std::vector<std::int64_t> residues(group.rank());
  for (std::size_t i = 0; i < group.rank(); ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < dual_vector.size(); ++j) s += projection(i, j) * dual_vector[j];
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(factors[i]));
    residues[i] = r.get_si();
  }
  return group.element(residues);
}

DiscriminantForm discriminant_form(const LatticeResolution& resolution) {
  const IntMatrix& B = resolution.matrix();
  const std::size_t m = B.rows();
  const SmithForm snf = smith_normal_form(B);
  const RatMatrix Binv = rational_inverse(B);
  const RatMatrix Uinv = rational_inverse(snf.U);

  // Coker(B) = Z^m / B Z^m is carried by y |-> U y onto the sum of Z/d_i.
  std::vector<std::size_t> kept;
  std::vector<std::int64_t> factors;
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt& d = snf.D(i, i);
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw TooLarge("invariant factor does not fit 64 bits");
    kept.push_back(i);
    factors.push_back(d.get_si());
  }
  const FinAbGroup group(factors);
  const std::size_t k = kept.size();

  IntMatrix projection(k, m);
  IntMatrix lifts(m, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < m; ++j) {
      projection(a, j) = snf.U(kept[a], j);
      const Rational lift = Uinv(j, kept[a]);
      if (!lift.is_integer()) throw InternalError("Smith transform is not unimodular");
      lifts(j, a) = lift.numerator();
    }

  // Pairing of lifts i and j through B^-1.
  auto pair = [&](std::size_t i, std::size_t j) {
    Rational s;
    for (std::size_t r = 0; r < m; ++r) {
      if (lifts(r, i) == 0) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (lifts(c, j) != 0) s += Rational(lifts(r, i) * lifts(c, j)) * Binv(r, c);
      }
    }
    return s;
  };

  std::vector<QZ> gram(k * k);
  std::vector<QZ> diagonal(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i * k + j] = qz_reduce(pair(i, j));
    // Half the self-pairing; on odd lattices this is only defined mod 1/2 and
    // odd-order factors need the 1/2 correction.
    diagonal[i] = well_defined_diagonal(half() * pair(i, i), factors[i]);
  }
  BilinearFormQZ bilinear(group, std::move(gram));
  QuadraticFormQZ quadratic = refinement_from_generators(group, diagonal, bilinear);
  return DiscriminantForm{group, std::move(quadratic), std::move(bilinear), std::move(projection), std::move(lifts)};
}

QuadraticFormQZ cyclic_refinement(std::int64_t p, std::int64_t a, int sign) {
  if (p < 2 || std::gcd(a, p) != 1 || (sign != 1 && sign != -1)) {
    throw BadParameters("cyclic_refinement needs p >= 2, gcd(a, p) = 1 and sign = +-1");
  }
  const BigInt numerator = BigInt(sign) * a * (p % 2 == 0 ? 1 : p + 1);
  const BigInt denominator = BigInt(2) * p;
  return QuadraticFormQZ(ResidueFunction::tabulate(FinAbGroup::cyclic(p), [&](const GroupElement& h) {
    const std::int64_t n = h.residue(0);
    return qz_reduce(Rational(numerator * n * n, denominator));
  }));
}

QuadraticFormQZ standard_refinement(const BilinearFormQZ& b) {
  const FinAbGroup& group = b.group();
  const auto factors = group.invariant_factors();
  std::vector<QZ> diagonal(group.rank());
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const std::int64_t n = factors[i];
    const Rational a = Rational(n) * b.gram(i, i).signed_representative();  // an integer
    const Rational multiplier(n % 2 == 0 ? 1 : n + 1);
    diagonal[i] = qz_reduce(a * multiplier / Rational(2 * n));
  }
  return refinement_from_generators(group, diagonal, b);
}

std::vector<QuadraticFormQZ> refinement_orbit(const QuadraticFormQZ& q) {
  std::vector<QuadraticFormQZ> orbit;
  for (const auto& mu : two_torsion_characters(q.group())) orbit.push_back(q.shifted(mu));
  return orbit;
}

namespace {

// Backtracking over generator images that respect orders and the pairing on
// generators; `accept` makes the final decision on a complete assignment.
std::optional<GroupHom> search_isometry(const BilinearFormQZ& from, const BilinearFormQZ& to,
                                        const std::function<bool(const GroupElement&, std::size_t)>& local,
                                        const std::function<bool(const GroupHom&)>& accept) {
  const FinAbGroup& src = from.group();
  const FinAbGroup& dst = to.group();
  if (src.order() != dst.order()) return std::nullopt;
  const auto targets = enumerate(dst);
  const auto factors = src.invariant_factors();
  std::vector<GroupElement> images;
  std::optional<GroupHom> found;

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (found) return;
    if (i == src.rank()) {
      GroupHom phi(src, dst, images);
      if (phi.is_bijective() && accept(phi)) found = std::move(phi);
      return;
    }
    const GroupElement gi = src.generator(i);
    for (const auto& t : targets) {
      if (!(factors[i] * t).is_identity()) continue;
      if (!local(t, i)) continue;
      bool ok = to(t, t) == from(gi, gi);
      for (std::size_t j = 0; j < i && ok; ++j) ok = to(t, images[j]) == from(gi, src.generator(j));
      if (!ok) continue;
      images.push_back(t);
      rec(i + 1);
      images.pop_back();
      if (found) return;
    }
  };
  rec(0);
  return found;
}

}  // namespace

std::optional<GroupHom> find_isometry(const BilinearFormQZ& from, const BilinearFormQZ& to) {
  return search_isometry(
      from, to, [](const GroupElement&, std::size_t) { return true; }, [](const GroupHom&) { return true; });
}

std::optional<GroupHom> find_isometry(const QuadraticFormQZ& from, const QuadraticFormQZ& to) {
  const BilinearFormQZ bf = delta_quadratic(from);
  const BilinearFormQZ bt = delta_quadratic(to);
  const FinAbGroup& src = from.group();
  return search_isometry(
      bf, bt, [&](const GroupElement& t, std::size_t i) { return to(t) == from(src.generator(i)); },
      [&](const GroupHom& phi) {
        for (std::size_t idx = 0; idx < from.values().size(); ++idx) {
          const GroupElement u = src.at(idx);
          if (!(to(phi(u)) == from(u))) return false;
        }
        return true;
      });
}

}  // namespace lenstor
