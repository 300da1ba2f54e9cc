#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tamefiber/exactalg/finite_field.hpp"

namespace tamefiber::fingroup {

using exactalg::FiniteField;
using Elem = std::uint32_t;

/// Upper bounds for brute-force work.
inline constexpr std::uint64_t kMaxGroupOrder = 20000;
inline constexpr std::uint64_t kMaxMatrixCodes = std::uint64_t{1} << 22;

/// |GL_n(F_q)|.
std::uint64_t gl_order(unsigned n, std::uint64_t q);

/// GL_n(F_q) with every element enumerated.  Elements are indices into a list
/// sorted by matrix code (row-major entries as base-q digits), so the identity
/// is not index 0 in general; use identity().
class FqGroup {
public:
  FqGroup(unsigned n, std::uint64_t q);

  unsigned n() const { return n_; }
  std::uint64_t q() const { return q_; }
  const FiniteField& field() const { return *field_; }
  std::size_t order() const { return codes_.size(); }

  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const { return inverse_[a]; }
  /// a b a^{-1}
  Elem conj(Elem a, Elem b) const { return mul(mul(a, b), inverse_[a]); }
  FiniteField::value_type entry(Elem a, unsigned i, unsigned j) const { return entries_[a * n_ * n_ + i * n_ + j]; }
  std::vector<FiniteField::value_type> matrix(Elem a) const;
  /// Index of a matrix (row-major); throws if singular.
  Elem index_of(const std::vector<FiniteField::value_type>& m) const;
  std::uint32_t order_of(Elem a) const;

  /// diag(g, 1, ..., 1) for a primitive g, and elementary transvections
  /// 1 + x^k E_{ij} (x^k running over the F_p-basis of F_q); they generate G.
  const std::vector<Elem>& generators() const { return generators_; }

  /// Upper unitriangular, upper triangular, diagonal elements, each sorted.
  std::vector<Elem> unipotent_radical() const;
  std::vector<Elem> borel() const;
  std::vector<Elem> torus() const;
  std::vector<Elem> center() const;

private:
  unsigned n_;
  std::uint64_t q_;
  std::shared_ptr<const FiniteField> field_;
  std::vector<std::uint32_t> codes_;
  std::vector<std::int32_t> index_of_code_;
  std::vector<FiniteField::value_type> entries_;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  Elem identity_ = 0;
};

struct ClassData {
  std::vector<Elem> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> centralizer_orders;
  std::vector<std::uint32_t> element_orders;
  /// class index of every element
  std::vector<std::uint32_t> class_of;
};

/// Conjugacy classes as orbits of conjugation by the generators; classes are
/// numbered by their least element.
ClassData conjugacy_classes(const FqGroup& g);

/// Number of classes of elements of order prime to p.
std::uint64_t semisimple_class_count(const FqGroup& g, const ClassData& c);

/// Left cosets x H: representatives (least element of each coset) and the coset of every element.
struct CosetDecomposition {
  std::vector<Elem> reps;
  std::vector<std::uint32_t> coset_of;
};

CosetDecomposition left_cosets(const FqGroup& g, const std::vector<Elem>& subgroup);

namespace reference {

/// Same element list by a serial scan.
std::vector<std::uint32_t> enumerate_codes(unsigned n, std::uint64_t q);

} // namespace reference

std::vector<std::uint32_t> enumerate_codes(unsigned n, std::uint64_t q);

} // namespace tamefiber::fingroup
