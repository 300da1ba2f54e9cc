#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tamefiber/exactalg/finite_field.hpp"
#include "tamefiber/exactalg/matrix.hpp"
#include "tamefiber/symquot/symquot.hpp"

namespace tamefiber::params {

using symquot::Partition;

/// Root of unity j/m in Q/Z, stored reduced (gcd(j, m) = 1, 0 <= j < m); m is its order.
class RootOfUnityLabel {
public:
  RootOfUnityLabel() = default;
  RootOfUnityLabel(std::uint64_t j, std::uint64_t m);

  std::uint64_t num() const { return j_; }
  std::uint64_t order() const { return m_; }
  /// j/m + o in Q/Z.
  RootOfUnityLabel plus(const RootOfUnityLabel& o) const;
  /// k * (j/m).
  RootOfUnityLabel times(std::uint64_t k) const;
  /// Component of order prime to ell.
  RootOfUnityLabel prime_to_part(std::uint64_t ell) const;
  std::string str() const;

  auto operator<=>(const RootOfUnityLabel&) const = default;

private:
  std::uint64_t j_ = 0;
  std::uint64_t m_ = 1;
};

/// Orbit of a label under multiplication by q.  Identified by (order, least numerator).
class FrobOrbit {
public:
  FrobOrbit() = default;
  FrobOrbit(const RootOfUnityLabel& x, std::uint64_t q);

  std::uint64_t order() const { return m_; }
  std::uint64_t rep() const { return rep_; }
  std::uint64_t q() const { return q_; }
  unsigned size() const { return static_cast<unsigned>(elements_.size()); }
  /// rep, rep*q, rep*q^2, ... as labels.
  std::vector<RootOfUnityLabel> elements() const;
  bool contains(const RootOfUnityLabel& x) const;
  /// "m/j".
  std::string str() const;

  bool operator==(const FrobOrbit& o) const { return m_ == o.m_ && rep_ == o.rep_ && q_ == o.q_; }
  auto operator<=>(const FrobOrbit& o) const
  {
    if (auto c = m_ <=> o.m_; c != 0)
      return c;
    if (auto c = rep_ <=> o.rep_; c != 0)
      return c;
    return q_ <=> o.q_;
  }

private:
  std::uint64_t m_ = 1;
  std::uint64_t rep_ = 0;
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> elements_;
};

/// Multiset of Frobenius orbits with multiplicities; orbits distinct, sorted.
class SemisimpleParam {
public:
  SemisimpleParam() = default;
  SemisimpleParam(std::uint64_t q, std::vector<std::pair<FrobOrbit, unsigned>> parts);
  /// From an explicit multiset of eigenvalue labels; throws std::invalid_argument
  /// if the multiset is not stable under multiplication by q.
  static SemisimpleParam from_labels(std::uint64_t q, const std::vector<RootOfUnityLabel>& labels);

  std::uint64_t q() const { return q_; }
  const std::vector<std::pair<FrobOrbit, unsigned>>& parts() const { return parts_; }
  unsigned rank() const;
  /// All eigenvalue labels with multiplicity, orbit by orbit.
  std::vector<RootOfUnityLabel> labels() const;
  std::string str() const;

  bool operator==(const SemisimpleParam&) const = default;
  auto operator<=>(const SemisimpleParam& o) const { return str() <=> o.str(); }

private:
  std::uint64_t q_ = 2;
  std::vector<std::pair<FrobOrbit, unsigned>> parts_;
};

/// Multiset of (orbit, Jordan partition); orbits distinct, sorted.
class InertialParam {
public:
  InertialParam() = default;
  InertialParam(std::uint64_t q, std::vector<std::pair<FrobOrbit, Partition>> parts);
  /// Trivial Jordan data: partition 1^k for an orbit of multiplicity k.
  static InertialParam from_semisimple(const SemisimpleParam& s);

  std::uint64_t q() const { return q_; }
  const std::vector<std::pair<FrobOrbit, Partition>>& parts() const { return parts_; }
  unsigned rank() const;
  SemisimpleParam semisimple_part() const;
  /// Records "m/j:λ" sorted lexicographically and joined by ';'.
  std::string str() const;

  bool operator==(const InertialParam&) const = default;

private:
  std::uint64_t q_ = 2;
  std::vector<std::pair<FrobOrbit, Partition>> parts_;
};

/// Composition (n_1, ..., n_k) of n giving a block-diagonal Levi.
using LeviShape = std::vector<unsigned>;

bool is_discrete(const InertialParam& tau);

/// One block r * m per (orbit, Jordan part m), orbits in sorted order, parts in decreasing order.
LeviShape levi_of(const InertialParam& tau);
/// The discrete parameters of the blocks of levi_of(tau), in the same order.
std::vector<InertialParam> levi_components(const InertialParam& tau);

/// All q-stable semisimple parameters of rank n, sorted by canonical text.
std::vector<SemisimpleParam> enumerate_ss_params(unsigned n, std::uint64_t q);

SemisimpleParam reduce_mod_ell(const SemisimpleParam& s, std::uint64_t ell);
/// Jordan data of colliding orbits merged by multiset union of partitions.
InertialParam reduce_mod_ell(const InertialParam& tau, std::uint64_t ell);

/// Characteristic-zero semisimple parameters of rank n reducing to sbar.
std::vector<SemisimpleParam> fiber(const SemisimpleParam& sbar, unsigned n, std::uint64_t q, std::uint64_t ell);

/// Twist by a q-fixed root of unity t (t * q = t): every eigenvalue label is shifted by t.
SemisimpleParam twist_by(const SemisimpleParam& s, const RootOfUnityLabel& t);

/// Least f >= 1 with v_ell(q^f - 1) > v_ell(n!).
unsigned min_large_f(unsigned n, std::uint64_t q, std::uint64_t ell);

using FMat = exactalg::MatOf<exactalg::FiniteField>;

/// Label of a nonzero element z of F: log(z) / (|F| - 1), reduced.
RootOfUnityLabel label_of(const exactalg::FiniteField& field, exactalg::FiniteField::value_type z);
/// The element of F with label x (requires order | |F| - 1).
exactalg::FiniteField::value_type root_of(const exactalg::FiniteField& field, const RootOfUnityLabel& x);

/// Inertial parameter of sigma, whose characteristic polynomial must split over F.
InertialParam inertial_type(const exactalg::FiniteField& field, const FMat& sigma, std::uint64_t q);

/// Checks that sigma is block diagonal for levi, each block has discrete
/// inertial type, and the blocks of phi^f have pairwise coprime characteristic
/// polynomials.  Throws std::invalid_argument if phi sigma phi^{-1} != sigma^q.
bool is_f_distinguished(const exactalg::FiniteField& field, const FMat& sigma, const FMat& phi, std::uint64_t q,
                        unsigned f, const LeviShape& levi);

struct DistinguishedPoint {
  std::shared_ptr<const exactalg::FiniteField> field;
  FMat sigma;
  FMat phi;
  LeviShape levi;
  /// central twist applied to each block
  std::vector<exactalg::FiniteField::value_type> twists;
};

/// Deterministic construction of an f-distinguished (sigma, phi) with inertial
/// type taubar over F_{ell^e'}, e' the least admissible degree >= e.  Central
/// twists are searched lexicographically.  Throws std::runtime_error when no
/// twist works for any admissible degree up to max_e.
DistinguishedPoint make_f_distinguished(const InertialParam& taubar, unsigned f, std::uint64_t ell, unsigned e,
                                        unsigned max_e = 12);

} // namespace tamefiber::params
