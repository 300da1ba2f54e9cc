#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tamefiber/dlcomb/dlcomb.hpp"
#include "tamefiber/fingroup/modules.hpp"
#include "tamefiber/params/params.hpp"

namespace tamefiber::bmcheck {

using dlcomb::Integer;
using dlcomb::TorusTuple;
using params::InertialParam;
using params::SemisimpleParam;

/// Generic irreducible pi_G(s), named by its canonical torus tuple.
using GenericLabel = TorusTuple;

/// Component of the generic fiber (tau) or of the special fiber (s-bar).
struct ComponentLabel {
  std::variant<InertialParam, SemisimpleParam> value;

  std::string str() const;
  bool operator==(const ComponentLabel& o) const { return str() == o.str(); }
};

struct CycleVector {
  std::vector<ComponentLabel> index;
  std::vector<Integer> coeffs;
};

struct LocalModel {
  unsigned n = 0;
  std::uint64_t q = 0;
  std::uint64_t ell = 0;
  unsigned f = 0;
  InertialParam taubar;
  params::DistinguishedPoint rho;
  SemisimpleParam sbar;
  std::vector<SemisimpleParam> fiber;
  std::vector<InertialParam> taus;  ///< tau_[s] for each fiber member, same order
};

/// s with one Jordan block of size k for each orbit of multiplicity k.
InertialParam tau_of(const SemisimpleParam& s);

/// Residual point from make_f_distinguished(taubar, f, ell, e); f = 0 means min_large_f.
LocalModel make_local_model(const InertialParam& taubar, std::uint64_t ell, unsigned f = 0, unsigned e = 1);

/// Labels of all generic irreducibles of GL_n(F_q).
std::vector<GenericLabel> generic_labels(const LocalModel& model);
/// l'-part of the semisimple label equals s-bar.
bool in_block(const GenericLabel& sigma, const LocalModel& model);

/// Coefficients m(sigma, tau_[s]) over the model's fiber.
CycleVector cyc(const GenericLabel& sigma, const LocalModel& model);
/// Sum of coefficients: the special fiber of the model has one component.
Integer red_cycles(const CycleVector& v);
/// Sum over the fiber of m(sigma, tau_[s]), through the serial multiplicity table.
Integer bar_cyc_fiber(const GenericLabel& sigma, const LocalModel& model);

/// An explicit integral G-module with the label of its generic constituent.
struct ExplicitModule {
  std::string name;
  GenericLabel label;
  fingroup::IntModule lattice;
};

/// Ind_B theta with theta of order dividing 2; label (j_i / (q-1)).
ExplicitModule principal_series_module(const fingroup::FqGroup& g, const std::vector<std::uint32_t>& j);
/// GL_2(F_2) only: the sign of the action on the three nonzero vectors, the cuspidal of label {1/3, 2/3}.
ExplicitModule cuspidal_sign_module(const fingroup::FqGroup& g);

struct OracleResult {
  std::uint64_t char0 = 0;                  ///< dim_Q Hom(Gamma, sigma)
  std::uint64_t residue_l1 = 0;             ///< dim_{F_l} on the standard lattice
  std::optional<std::uint64_t> residue_l2;  ///< same on Z[G]x + l L1, if rank > 1
  std::uint64_t truncation_rank = 0;        ///< free rank over Z/l^a
  bool truncation_free = false;
  bool lattice_independent = false;
  bool consistent = false;                  ///< all available values equal
  std::uint64_t value = 0;
};

/// dim Hom(Gamma, sigma) with Gamma the Gelfand-Graev lattice divided by its
/// multiplicity p - 1, computed over Q, F_l on two lattices, and Z/l^a.
/// The Levi of the model must be all of GL_n.  Throws std::invalid_argument
/// if the group does not match the model.
OracleResult theta_dim_oracle(const fingroup::FqGroup& g, const ExplicitModule& sigma, const LocalModel& model,
                              unsigned a = 2);

struct LabelRow {
  GenericLabel label;
  bool in_block = false;
  CycleVector cyc;
  Integer red = 0;
  Integer bar = 0;
  bool nonnegative = false;
  bool consistent = false;
};

struct ModelReport {
  std::vector<LabelRow> rows;  ///< in generic_labels order
  bool fiber_partition = false;
  bool pass = false;
};

/// sum over s-bar of |fiber(s-bar)| = q^{n-1}(q-1).
bool fiber_partition_holds(unsigned n, std::uint64_t q, std::uint64_t ell);

/// Rows computed in parallel over labels.
ModelReport check_model(const LocalModel& model);

std::string label_str(const GenericLabel& s);

} // namespace tamefiber::bmcheck
