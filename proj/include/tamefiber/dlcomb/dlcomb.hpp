#pragma once

#include <cstdint>
#include <vector>

#include "tamefiber/exactalg/integer.hpp"
#include "tamefiber/params/params.hpp"

namespace tamefiber::dlcomb {

using exactalg::Integer;
using exactalg::Rational;
using params::InertialParam;
using params::LeviShape;
using params::RootOfUnityLabel;
using params::SemisimpleParam;

/// Permutation of {0..n-1}: p[i] is the image of i.
using Perm = std::vector<unsigned>;
/// s_i as roots of unity, additive notation.
using TorusTuple = std::vector<RootOfUnityLabel>;

Perm identity_perm(unsigned n);
/// (v w)(i) = v(w(i)).
Perm compose(const Perm& v, const Perm& w);
Perm inverse(const Perm& p);
int sign(const Perm& p);
unsigned cycle_count(const Perm& p);
/// Determinant of the permutation matrix restricted to its (-1)-eigenspace: (-1)^{#even cycles}.
int reflection_sign(const Perm& p);

/// All of S_n in lexicographic order (cached).
const std::vector<Perm>& symmetric_group(unsigned n);
/// Permutations preserving the consecutive blocks of shape.
std::vector<Perm> young_subgroup(const LeviShape& shape);

/// (^v s)_i = s_{v^{-1}(i)}.
TorusTuple act(const Perm& v, const TorusTuple& s);
/// q * s entrywise.
TorusTuple frob(const TorusTuple& s, std::uint64_t q);

/// A pair (w, s) with ^w s = s^q, i.e. s_{w^{-1}(i)} = q s_i.
struct DLPair {
  Perm w;
  TorusTuple s;
};

bool is_compatible(const DLPair& a, std::uint64_t q);

/// W(s) inside `group`.
std::vector<Perm> stabilizer(const TorusTuple& s, const std::vector<Perm>& group);
/// W(s, s^q) = {w : ^w s = s^q} inside `group`.
std::vector<Perm> coset(const TorusTuple& s, std::uint64_t q, const std::vector<Perm>& group);

/// #{v in S_n : v w v^{-1} = w', ^v s = s'}.
Integer dl_pairing(const DLPair& a, const DLPair& b);

/// Canonical representative of a W-orbit of tuples: the sorted tuple.
TorusTuple canonical_tuple(TorusTuple s);

/// Bilinear pairing of pi_G(s) and pi_G(t) through dl_pairing.
Rational pi_pairing(const TorusTuple& s, const TorusTuple& t, std::uint64_t q);
Rational pi_norm(const TorusTuple& s, std::uint64_t q);

/// Semisimple tuple of tau laid out along levi_of(tau): each block of size r*m is
/// the orbit sequence (a, qa, ..., q^{r-1}a) repeated m times.
TorusTuple levi_tuple(const InertialParam& tau);

/// m(sigma, tau) = <Ind_L pi_L(s_tau), pi_G(sigma)> as an exact rational.
Rational multiplicity_exact(const TorusTuple& sigma, const InertialParam& tau);
/// Same, required to be a nonnegative integer (std::logic_error otherwise).
Integer multiplicity(const TorusTuple& sigma, const InertialParam& tau);

/// Rows sigma, columns tau (parallel over entries).
std::vector<std::vector<Integer>> multiplicity_table(const std::vector<TorusTuple>& sigmas,
                                                     const std::vector<InertialParam>& taus);

/// One canonical tuple per q-stable orbit, ordered as enumerate_ss_params.
std::vector<TorusTuple> gg_constituent_labels(unsigned n, std::uint64_t q);
TorusTuple tuple_of(const SemisimpleParam& s);

/// <pi_G(s), eps(w0) R(w0, s)> with s laid out orbit by orbit as in levi_tuple
/// and w0 the product of one cycle per orbit block (w0^{-1}(i) = i + 1 inside a block).
Rational cuspidal_support_pairing(const SemisimpleParam& s);

/// <Gamma, eps(w) R(w, s)>, with Gamma the sum of pi_G over all q-stable orbits.
Rational gg_dl_pairing(const DLPair& a, std::uint64_t q);

namespace reference {

std::vector<std::vector<Integer>> multiplicity_table(const std::vector<TorusTuple>& sigmas,
                                                     const std::vector<InertialParam>& taus);

} // namespace reference

} // namespace tamefiber::dlcomb
