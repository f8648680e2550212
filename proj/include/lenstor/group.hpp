#pragma once

// Finite abelian groups H = Z/n1 + ... + Z/nk, their elements, characters into
// Q/Z, and dense functions on them.
//
// Notation: the torsion literature writes H multiplicatively (gh, h^-1, x^n).
// Here the group law is componentwise addition of residues, so "gh" is g + h,
// "h^-1" is -h and "x^n" is n * x. In the cyclic case x is the generator with
// residue 1.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lenstor/errors.hpp"
#include "lenstor/exact_arith.hpp"

namespace lenstor {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

class GroupElement;

/// Value type; copies share the factor table.
class FinAbGroup {
 public:
  /// The trivial group.
  FinAbGroup();
  /// Each factor must be >= 2. Factors are taken as given (no SNF reduction).
  explicit FinAbGroup(std::vector<std::int64_t> invariant_factors);

  static FinAbGroup cyclic(std::int64_t n);

  std::span<const std::int64_t> invariant_factors() const { return data_->factors; }
  std::size_t rank() const { return data_->factors.size(); }
  /// Throws TooLarge if the order overflows 64 bits.
  std::int64_t order() const;

  GroupElement identity() const;
  /// i-th standard generator (residue 1 in slot i).
  GroupElement generator(std::size_t i) const;
  /// Residues must already lie in [0, n_i).
  GroupElement element(std::span<const std::int64_t> residues) const;
  GroupElement element(std::initializer_list<std::int64_t> residues) const;
  /// Residues are reduced into range first.
  GroupElement reduce(std::span<const std::int64_t> residues) const;
  /// The element at a position of the lexicographic enumeration.
  GroupElement at(std::size_t index) const;

  /// Enumeration size, guarded by a cap. Throws TooLarge.
  std::size_t checked_size(std::size_t cap = kDefaultEnumerationCap) const;

  std::string to_string() const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.data_ == b.data_ || a.data_->factors == b.data_->factors;
  }

 private:
  friend class GroupElement;
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator*(std::int64_t k, const GroupElement& g);
  struct Data {
    std::vector<std::int64_t> factors;
    std::vector<std::int64_t> strides;  // mixed radix, last factor fastest
    std::int64_t order = 1;
    bool overflow = false;
  };
  std::shared_ptr<const Data> data_;
};

/// An element of a FinAbGroup, identified by its lexicographic index.
class GroupElement {
 public:
  const FinAbGroup& group() const { return group_; }
  std::size_t index() const { return index_; }
  std::vector<std::int64_t> residues() const;
  std::int64_t residue(std::size_t i) const;
  bool is_identity() const { return index_ == 0; }

  /// Order of the element in its group.
  std::int64_t order() const;

  /// Group law; throws GroupMismatch across groups.
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }
  GroupElement operator-() const;
  /// k-fold sum (x^k in multiplicative notation); k may be negative.
  friend GroupElement operator*(std::int64_t k, const GroupElement& g);

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.index_ == b.index_ && a.group_ == b.group_;
  }

  std::string to_string() const;

 private:
  friend class FinAbGroup;
  GroupElement(FinAbGroup group, std::size_t index) : group_(std::move(group)), index_(index) {}
  FinAbGroup group_;
  std::size_t index_ = 0;
};

/// Every element once, lexicographic on residues. Throws TooLarge above cap.
std::vector<GroupElement> enumerate(const FinAbGroup& group, std::size_t cap = kDefaultEnumerationCap);

/// Homomorphism H -> Q/Z, h |-> sum_i coefficient_i * residue_i(h) / n_i.
class Character {
 public:
  /// The trivial character.
  explicit Character(FinAbGroup group);
  Character(FinAbGroup group, std::vector<std::int64_t> coefficients);

  const FinAbGroup& group() const { return group_; }
  std::span<const std::int64_t> coefficients() const { return coefficients_; }
  bool is_trivial() const;

  QZ operator()(const GroupElement& h) const;

  friend bool operator==(const Character&, const Character&) = default;

 private:
  FinAbGroup group_;
  std::vector<std::int64_t> coefficients_;
};

/// All characters killed by 2, i.e. with values in {0, 1/2}.
std::vector<Character> two_torsion_characters(const FinAbGroup& group);

/// A total function H -> V stored densely in enumeration order. V is Rational
/// (the torsion flavor) or QZ (its reduction mod Z); the two flavors are
/// distinct types.
template <class V>
class GroupFunction {
 public:
  using value_type = V;

  /// The zero function.
  explicit GroupFunction(FinAbGroup group) : group_(std::move(group)), values_(group_.checked_size()) {}
  GroupFunction(FinAbGroup group, std::vector<V> values)
      : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_.checked_size()) {
      throw BadParameters("function table size " + std::to_string(values_.size()) +
                          " does not match group order");
    }
  }

  template <class F>
  static GroupFunction tabulate(const FinAbGroup& group, F&& f) {
    std::vector<V> values;
    const std::size_t n = group.checked_size();
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) values.push_back(f(group.at(i)));
    return GroupFunction(group, std::move(values));
  }

  const FinAbGroup& group() const { return group_; }
  std::size_t size() const { return values_.size(); }
  std::span<const V> values() const { return values_; }

  const V& operator[](std::size_t index) const { return values_[index]; }
  V& operator[](std::size_t index) { return values_[index]; }

  const V& operator()(const GroupElement& h) const {
    require_same_group(h.group());
    return values_[h.index()];
  }

  GroupFunction& operator+=(const GroupFunction& o) {
    require_same_group(o.group_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GroupFunction& operator-=(const GroupFunction& o) {
    require_same_group(o.group_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
  GroupFunction operator-() const {
    GroupFunction r = *this;
    for (auto& v : r.values_) v = -v;
    return r;
  }

  friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
    return a.group_ == b.group_ && a.values_ == b.values_;
  }

  void require_same_group(const FinAbGroup& other) const {
    if (!(other == group_)) {
      throw GroupMismatch("group " + other.to_string() + " used with a function on " + group_.to_string());
    }
  }

 private:
  FinAbGroup group_;
  std::vector<V> values_;
};

using RationalFunction = GroupFunction<Rational>;
using ResidueFunction = GroupFunction<QZ>;

/// (delta_g u)(h) = u(g h) - u(h).
template <class V>
GroupFunction<V> delta(const GroupElement& g, const GroupFunction<V>& u) {
  u.require_same_group(g.group());
  const FinAbGroup& group = u.group();
  std::vector<V> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const GroupElement h = group.at(i);
    out.push_back(u[(g + h).index()] - u[i]);
  }
  return GroupFunction<V>(group, std::move(out));
}

/// translate(g, u)(h) = u(g h). A left action: translate(a, translate(b, u))
/// = translate(a b, u).
template <class V>
GroupFunction<V> translate(const GroupElement& g, const GroupFunction<V>& u) {
  u.require_same_group(g.group());
  const FinAbGroup& group = u.group();
  std::vector<V> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(u[(g + group.at(i)).index()]);
  return GroupFunction<V>(group, std::move(out));
}

/// Sum over the whole group. Only the rational flavor has one; the residue
/// flavor is rejected at compile time.
Rational augment(const RationalFunction& u);

/// Elementwise reduction mod Z.
ResidueFunction mod_z(const RationalFunction& u);

/// A homomorphism between finite abelian groups, given by generator images.
class GroupHom {
 public:
  /// Throws BadParameters unless n_i * image_i = 0 for every generator.
  GroupHom(FinAbGroup source, FinAbGroup target, std::vector<GroupElement> images);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  std::span<const GroupElement> images() const { return images_; }

  GroupElement operator()(const GroupElement& h) const;
  bool is_bijective() const;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  std::vector<GroupElement> images_;
};

}  // namespace lenstor
