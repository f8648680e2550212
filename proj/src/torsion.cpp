#include "lenstor/torsion.hpp"

#include <numeric>

namespace lenstor {

TorsionFunction::TorsionFunction(RationalFunction values, std::optional<LensParameters> lens)
    : values_(std::move(values)), lens_(lens) {
  const Rational total = augment(values_);
  if (!total.is_zero()) throw NotTorsionLike("torsion values sum to " + total.to_string() + ", not 0");
}

std::int64_t torsion_exponent(std::int64_t /*p*/, std::int64_t q) { return q; }

TorsionFunction lens_torsion(std::int64_t p, std::int64_t q, std::int64_t e) {
  if (p < 2 || q < 1 || q >= p || std::gcd(p, q) != 1 || e < 0 || e >= p) {
    throw BadParameters("lens_torsion needs p >= 2, 1 <= q < p, gcd(p, q) = 1, 0 <= e < p; got p=" +
                        std::to_string(p) + ", q=" + std::to_string(q) + ", e=" + std::to_string(e));
  }
  const std::int64_t r = torsion_exponent(p, q);
  const auto n = static_cast<std::size_t>(p);

  // Multiplier (x - 1)(x^r - 1) = x^(r+1) - x^r - x + 1 as a coefficient vector.
  std::vector<long> multiplier(n, 0);
  multiplier[static_cast<std::size_t>((r + 1) % p)] += 1;
  multiplier[static_cast<std::size_t>(r % p)] -= 1;
  multiplier[1] -= 1;
  multiplier[0] += 1;

  // Circulant rows for the convolution, then the augmentation constraint.
  RatMatrix system(n + 1, n);
  std::vector<Rational> rhs(n + 1);
  const Rational mean(BigInt(1), BigInt(p));
  const std::size_t target = static_cast<std::size_t>((p - e) % p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) system(i, j) = Rational(multiplier[(i + n - j) % n]);
    rhs[i] = Rational(i == target ? 1 : 0) - mean;
  }
  for (std::size_t j = 0; j < n; ++j) system(n, j) = Rational(1);
  rhs[n] = Rational(0);

  std::vector<Rational> t = solve_rational_system(system, rhs);
  return TorsionFunction(RationalFunction(FinAbGroup::cyclic(p), std::move(t)), LensParameters{p, q, e});
}

std::optional<UnitMatch> match_up_to_unit(const RationalFunction& t, std::span<const Rational> table) {
  if (t.group().rank() > 1) throw BadParameters("unit matching is defined for cyclic groups");
  const std::size_t n = t.size();
  if (table.size() != n) return std::nullopt;
  for (const int sign : {1, -1}) {
    for (std::size_t k = 0; k < n; ++k) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const Rational& v = t[(i + n - k) % n];
        ok = table[i] == (sign == 1 ? v : -v);
      }
      if (ok) return UnitMatch{sign, static_cast<std::int64_t>(k)};
    }
  }
  return std::nullopt;
}

ModZTorsion reduce_mod_z(const TorsionFunction& t) { return ModZTorsion{mod_z(t.values())}; }

BilinearFormQZ extract_linking(const ModZTorsion& xi) {
  const FinAbGroup& group = xi.values.group();
  const std::size_t k = group.rank();
  std::vector<QZ> gram(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const ResidueFunction dd = delta(group.generator(i), delta(group.generator(j), xi.values));
      for (const auto& v : dd.values()) {
        if (!(v == dd[0])) {
          throw NotTorsionLike("second difference along generators " + std::to_string(i) + ", " +
                               std::to_string(j) + " is not constant");
        }
      }
      gram[i * k + j] = -dd[0];
    }
  }
  std::optional<BilinearFormQZ> lk;
  try {
    lk.emplace(group, std::move(gram));
  } catch (const InvalidForm& e) {
    throw NotTorsionLike(std::string("extracted pairing is not a form: ") + e.what());
  }
  if (!is_nonsingular(*lk)) throw NotTorsionLike("extracted linking form is singular");
  return *lk;
}

namespace {

inline constexpr std::size_t kTuraevCap = 4096;

std::vector<TuraevViolation> turaev_violations(const ResidueFunction& xi, const BilinearFormQZ& lk,
                                               const std::vector<std::size_t>& add, std::size_t n) {
  const FinAbGroup& group = xi.group();
  std::vector<QZ> rhs(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) rhs[a * n + b] = rhs[b * n + a] = -lk(group.at(a), group.at(b));

  std::vector<TuraevViolation> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = add[a * n + b];
      const QZ& expected = rhs[a * n + b];
      for (std::size_t h = 0; h < n; ++h) {
        const QZ lhs = xi[add[ab * n + h]] - xi[add[a * n + h]] - xi[add[b * n + h]] + xi[h];
        if (!(lhs == expected)) out.push_back({group.at(a), group.at(b), group.at(h), lhs, expected});
      }
    }
  return out;
}

}  // namespace

TuraevReport verify_turaev(const TorsionFunction& t, const BilinearFormQZ& lk) {
  const FinAbGroup& group = t.group();
  t.values().require_same_group(lk.group());
  const std::size_t n = group.checked_size(kTuraevCap);

  std::vector<std::size_t> add(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) add[a * n + b] = add[b * n + a] = (group.at(a) + group.at(b)).index();

  TuraevReport report;
  const ResidueFunction xi = mod_z(t.values());
  report.triples_checked = n * n * n;
  report.violations = turaev_violations(xi, lk, add, n);
  if (group.rank() > 0) {
    const ResidueFunction moved = translate(group.generator(0), xi);
    report.translation_invariant = turaev_violations(moved, lk, add, n).size() == report.violations.size();
  }
  return report;
}

}  // namespace lenstor
