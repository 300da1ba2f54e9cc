#pragma once

#include "tamefiber/cli/cli.hpp"
#include "tamefiber/defmod/defmod.hpp"

namespace tamefiber::cli::checks {

/// Companion normalization, mirabolic round trip and Phi reconstruction,
/// exhaustive over the lifts of rbar to F[t]/t^a.
void normalization_roundtrip(Report& rep, const RunConfig& cfg, const defmod::ResidualPoint& rbar);
/// Hensel diagonalization of every lift of diag(C, 1), C an irreducible quadratic companion.
void hensel_exhaustive(Report& rep, const RunConfig& cfg, const defmod::ResidualPoint& rbar);
/// Sigma-bar = I, Phi-bar = diag(1, c, ..., c) with c^f != 1, Levi (1, n-1).
void sigma_in_levi(Report& rep, const RunConfig& cfg);

} // namespace tamefiber::cli::checks
