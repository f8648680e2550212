#include "lenstor/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lenstor {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FinAbGroup::FinAbGroup() : FinAbGroup(std::vector<std::int64_t>{}) {}

FinAbGroup::FinAbGroup(std::vector<std::int64_t> invariant_factors) {
  auto data = std::make_shared<Data>();
  for (const auto n : invariant_factors) {
    if (n < 2) throw BadParameters("invariant factor " + std::to_string(n) + " is below 2");
  }
  data->factors = std::move(invariant_factors);
  data->strides.assign(data->factors.size(), 1);
  std::int64_t order = 1;
  for (std::size_t i = data->factors.size(); i-- > 0;) {
    data->strides[i] = order;
    if (__builtin_mul_overflow(order, data->factors[i], &order)) {
      data->overflow = true;
      break;
    }
  }
  data->order = order;
  data_ = std::move(data);
}

FinAbGroup FinAbGroup::cyclic(std::int64_t n) {
  if (n == 1) return FinAbGroup();
  return FinAbGroup(std::vector<std::int64_t>{n});
}

std::int64_t FinAbGroup::order() const {
  if (data_->overflow) throw TooLarge("group order overflows 64 bits");
  return data_->order;
}

std::size_t FinAbGroup::checked_size(std::size_t cap) const {
  if (data_->overflow || static_cast<std::uint64_t>(data_->order) > cap) {
    throw TooLarge("group " + to_string() + " exceeds the enumeration cap of " + std::to_string(cap));
  }
  return static_cast<std::size_t>(data_->order);
}

GroupElement FinAbGroup::identity() const { return GroupElement(*this, 0); }

GroupElement FinAbGroup::generator(std::size_t i) const {
  if (i >= rank()) throw BadParameters("generator index out of range");
  return GroupElement(*this, static_cast<std::size_t>(data_->strides[i]));
}

GroupElement FinAbGroup::element(std::span<const std::int64_t> residues) const {
  if (residues.size() != rank()) throw BadParameters("residue count does not match group rank");
  std::size_t index = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (residues[i] < 0 || residues[i] >= data_->factors[i]) {
      throw BadParameters("residue " + std::to_string(residues[i]) + " outside [0, " +
                          std::to_string(data_->factors[i]) + ")");
    }
    index += static_cast<std::size_t>(residues[i] * data_->strides[i]);
  }
  return GroupElement(*this, index);
}

GroupElement FinAbGroup::element(std::initializer_list<std::int64_t> residues) const {
  return element(std::span<const std::int64_t>(residues.begin(), residues.size()));
}

GroupElement FinAbGroup::reduce(std::span<const std::int64_t> residues) const {
  if (residues.size() != rank()) throw BadParameters("residue count does not match group rank");
  std::vector<std::int64_t> r(residues.begin(), residues.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(r[i], data_->factors[i]);
  return element(r);
}

GroupElement FinAbGroup::at(std::size_t index) const {
  if (data_->overflow || index >= static_cast<std::uint64_t>(data_->order)) {
    throw BadParameters("element index out of range");
  }
  return GroupElement(*this, index);
}

std::string FinAbGroup::to_string() const {
  if (rank() == 0) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < rank(); ++i) os << (i ? " + " : "") << "Z/" << data_->factors[i];
  return os.str();
}

std::int64_t GroupElement::residue(std::size_t i) const {
  const auto& d = *group_.data_;
  return static_cast<std::int64_t>(index_ / static_cast<std::size_t>(d.strides[i])) % d.factors[i];
}

std::vector<std::int64_t> GroupElement::residues() const {
  std::vector<std::int64_t> r(group_.rank());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = residue(i);
  return r;
}

std::int64_t GroupElement::order() const {
  std::int64_t ord = 1;
  const auto factors = group_.invariant_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::int64_t n = factors[i];
    const std::int64_t r = residue(i);
    ord = std::lcm(ord, n / std::gcd(n, r));
  }
  return ord;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (!(a.group_ == b.group_)) {
    throw GroupMismatch("adding elements of " + a.group_.to_string() + " and " + b.group_.to_string());
  }
  const auto& d = *a.group_.data_;
  std::size_t index = 0;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const std::int64_t s = (a.residue(i) + b.residue(i)) % d.factors[i];
    index += static_cast<std::size_t>(s * d.strides[i]);
  }
  return GroupElement(a.group_, index);
}

GroupElement GroupElement::operator-() const { return -1 * *this; }

GroupElement operator*(std::int64_t k, const GroupElement& g) {
  const auto& d = *g.group_.data_;
  std::size_t index = 0;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const std::int64_t n = d.factors[i];
    // (k mod n) * r < n^2 fits as long as factors stay below 2^31.
    const std::int64_t s = mod(mod(k, n) * g.residue(i), n);
    index += static_cast<std::size_t>(s * d.strides[i]);
  }
  return GroupElement(g.group_, index);
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  const auto r = residues();
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ')';
  return os.str();
}

std::vector<GroupElement> enumerate(const FinAbGroup& group, std::size_t cap) {
  const std::size_t n = group.checked_size(cap);
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(group.at(i));
  return out;
}

Character::Character(FinAbGroup group)
    : group_(std::move(group)), coefficients_(group_.rank(), 0) {}

Character::Character(FinAbGroup group, std::vector<std::int64_t> coefficients)
    : group_(std::move(group)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != group_.rank()) {
    throw BadParameters("character coefficient count does not match group rank");
  }
  const auto factors = group_.invariant_factors();
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] = mod(coefficients_[i], factors[i]);
}

bool Character::is_trivial() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](auto c) { return c == 0; });
}

QZ Character::operator()(const GroupElement& h) const {
  if (!(h.group() == group_)) throw GroupMismatch("character evaluated off its group");
  Rational sum;
  const auto factors = group_.invariant_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (coefficients_[i] == 0) continue;
    sum += Rational(BigInt(coefficients_[i]) * h.residue(i), BigInt(factors[i]));
  }
  return qz_reduce(sum);
}

std::vector<Character> two_torsion_characters(const FinAbGroup& group) {
  // Coefficient c_i with 2 c_i = 0 mod n_i: 0, or n_i / 2 when n_i is even.
  std::vector<std::vector<std::int64_t>> choices;
  for (const auto n : group.invariant_factors()) {
    choices.push_back(n % 2 == 0 ? std::vector<std::int64_t>{0, n / 2} : std::vector<std::int64_t>{0});
  }
  std::vector<Character> out;
  std::vector<std::int64_t> coeffs(group.rank(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      out.emplace_back(group, coeffs);
      return;
    }
    for (const auto c : choices[i]) {
      coeffs[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Rational augment(const RationalFunction& u) {
  Rational sum;
  for (const auto& v : u.values()) sum += v;
  return sum;
}

ResidueFunction mod_z(const RationalFunction& u) {
  std::vector<QZ> out;
  out.reserve(u.size());
  for (const auto& v : u.values()) out.push_back(qz_reduce(v));
  return ResidueFunction(u.group(), std::move(out));
}

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, std::vector<GroupElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.rank()) throw BadParameters("one image per generator required");
  const auto factors = source_.invariant_factors();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!(images_[i].group() == target_)) throw GroupMismatch("image outside the target group");
    if (!(factors[i] * images_[i]).is_identity()) {
      throw BadParameters("generator image order does not divide " + std::to_string(factors[i]));
    }
  }
}

GroupElement GroupHom::operator()(const GroupElement& h) const {
  if (!(h.group() == source_)) throw GroupMismatch("homomorphism applied off its source");
  GroupElement out = target_.identity();
  for (std::size_t i = 0; i < images_.size(); ++i) out = out + h.residue(i) * images_[i];
  return out;
}

bool GroupHom::is_bijective() const {
  if (source_.order() != target_.order()) return false;
  const std::size_t n = source_.checked_size();
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (*this)(source_.at(i)).index();
    if (hit[j]) return false;
    hit[j] = true;
  }
  return true;
}

}  // namespace lenstor
