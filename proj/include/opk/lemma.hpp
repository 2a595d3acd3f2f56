#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "opk/bilanczos.hpp"
#include "opk/common.hpp"
#include "opk/observables.hpp"

namespace opk {

/// One orthonormal trial basis, given as columns spanning the operator's
/// parity sector, whose first m columns coincide (up to phase) with the
/// first m Krylov elements.
struct TrialBasis {
  std::string label;
  Matrix vectors;
};

struct LemmaOptions {
  double slope_rel_tol = 0.05;   // |slope - 2m| <= tol * 2m
  double entropy_slack = 1e-9;   // F_K <= F_G + slack
  double noise_floor = 1e-12;    // populations below this are fit noise
  int min_fit_points = 4;
  KrylovWeight krylov_weight = KrylovWeight::modulus;
};

struct TrialBasisReport {
  std::string label;
  double aggregate_slope = 0.0;  // fit of sum_{n>=m} P(n,t)
  double worst_slope = 0.0;      // per-element slope farthest from 2m
  int n_fitted = 0;              // elements with enough signal to fit
  bool taylor_ok = false;
  double max_entropy_excess = 0.0;  // max_t [F_K(t) - F_G(t)]
  bool minimality_ok = false;
};

struct LemmaReport {
  int m = 0;
  double mu = 0.0;
  std::vector<TrialBasisReport> bases;
  bool taylor_ok() const;
  bool minimality_ok() const;
};

/// Log-spaced small-time grid inside the Taylor convergence window.
std::vector<double> lemma_time_grid(double t_min = 1e-3, double t_max = 1e-1, int n = 9);

/// The odd-sector string basis as a trial basis (valid prefix for m = 1
/// when the seed is the first string element).
TrialBasis string_trial_basis(const StringBasis& odd_basis);

/// Orthonormal Hermitian basis of the seed's parity sector that keeps the
/// first m Krylov elements and completes them with a Haar-random
/// orthogonal complement (rotation in the Hermitian-string coordinates).
TrialBasis random_trial_basis(const StringBasis& sector_basis, const KrylovData& krylov, int m,
                              std::uint64_t seed);

/// Verifies, on a small-time grid, that (i) populations of trial-basis
/// elements beyond the shared prefix vanish to order t^{2m} (log-log
/// slope 2m) and (ii) the Krylov-basis spread entropy is minimal among
/// the supplied bases.
LemmaReport lemma_check(const Superoperator& superop, const OperatorVector& x0,
                        const KrylovData& krylov, int m, const std::vector<TrialBasis>& bases,
                        const std::vector<double>& t_grid, LemmaOptions opts = {});

}  // namespace opk
