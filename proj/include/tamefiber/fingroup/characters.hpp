#pragma once

#include <cstdint>
#include <vector>

#include "tamefiber/exactalg/cyclotomic.hpp"
#include "tamefiber/fingroup/group.hpp"

namespace tamefiber::fingroup {

using exactalg::CyclotomicNumber;
using exactalg::Integer;
using exactalg::Rational;

/// One value per conjugacy class of G (indexed like ClassData::reps).
using CharacterVector = std::vector<CyclotomicNumber>;

/// A class function on a subgroup H, given on its sorted element list.
struct SubgroupCharacter {
  std::vector<Elem> elements;
  std::vector<CyclotomicNumber> values;
};

/// Exponent c(u) in [0, p) with psi(u) = zeta_p^{c(u)}: the absolute trace of
/// the sum of the superdiagonal entries.  Defined on U only.
std::uint32_t psi_exponent(const FqGroup& g, Elem u);
SubgroupCharacter psi_character(const FqGroup& g);

/// Throws std::logic_error unless the torus elements fixing psi under
/// conjugation are exactly the scalars.
void check_general_position(const FqGroup& g);

/// theta(b) = prod_i zeta_{q-1}^{j_i log b_ii}, inflated from T to B.
SubgroupCharacter borel_character(const FqGroup& g, const std::vector<std::uint32_t>& j);
/// All exponent vectors j in [0, q-2]^n, lexicographic.
std::vector<std::vector<std::uint32_t>> torus_exponents(const FqGroup& g);

/// Ind_H^G chi by summing chi over H cap C and scaling by |C_G(c)| / |H|.
CharacterVector induced_character(const FqGroup& g, const ClassData& c, const SubgroupCharacter& chi);

/// (1/|G|) sum_c |c| a(c) conj(b(c)); throws if the result is not rational.
Rational inner_product(const FqGroup& g, const ClassData& c, const CharacterVector& a, const CharacterVector& b);

struct GGSelfPairing {
  Integer mackey;
  Integer character;
  std::size_t double_cosets = 0;
};

/// <Gamma, Gamma> by the Mackey formula over U\G/U (parallel over double
/// cosets) and by the character inner product of Ind_U psi.
GGSelfPairing gelfand_graev_selfpairing(const FqGroup& g, const ClassData& c);
Integer mackey_selfpairing(const FqGroup& g);

namespace reference {

/// Literal |H|^{-1} sum_{x in G} [x g x^{-1} in H] chi(x g x^{-1}).
CharacterVector induced_character(const FqGroup& g, const ClassData& c, const SubgroupCharacter& chi);
/// sum over all g of [psi = psi^g on U cap gUg^{-1}] |U cap gUg^{-1}| / |U|^2.
Integer mackey_selfpairing(const FqGroup& g);

} // namespace reference

} // namespace tamefiber::fingroup
