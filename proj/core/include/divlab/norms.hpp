#pragma once

#include <vector>

#include "divlab/tables.hpp"

namespace divlab {

struct NormWeights {
  double eps1 = 0.5;
  double eps2 = 0.5;
  /// Total-order truncation: sums run over i + j <= m_total.
  int m_total = 6;
};

/// rho(u) = sum_{i+j<=M} eps1^i eps2^j / (i+j)! ||d^i T^j u||, split over the
/// index sets B = {i+j >= 3} and its complement. order_sums[m] collects the
/// i+j = m shell, so tail decay is readable off the breakdown.
struct RhoBreakdown {
  double total = 0.0;
  double b_part = 0.0;
  double bc_part = 0.0;
  std::vector<double> order_sums;
};

RhoBreakdown rho_norm(const DerivativeTable& table, const NormWeights& w);

/// psi(v, q): the velocity double sum plus the three pressure sums
/// (d^{i-1} q for i >= 2; eps1 eps2^j/(1+j)! T^j q; eps2^j/j! T^{j-1} q for
/// j >= 1), truncated at i + j <= M.
struct PsiBreakdown {
  double total = 0.0;
  double velocity = 0.0;
  double pressure_high = 0.0;  // i >= 2 rows
  double pressure_mid = 0.0;   // i = 1 row
  double pressure_low = 0.0;   // i = 0 row
};

PsiBreakdown psi_norm(const DerivativeTable& v_table, const DerivativeTable& q_table,
                      const NormWeights& w);

struct CertifyOptions {
  std::vector<double> eps2_grid = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                   0.0078125, 0.00390625};
  /// eps1 = eps2 / (tie_ratio * fitted_product); fitted_product stands for
  /// (C+1)(K+1) and defaults to 1 when no fit is available.
  double tie_ratio = 100.0;
  double fitted_product = 1.0;
  /// Ratios checked for m in [3, m_total - 1].
  double decay_threshold = 0.9;
  int m_total = 6;
};

struct CertifyGridPoint {
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::vector<double> ratios;  // a_{m+1}/a_m for m = 3 .. M-1
  bool certified = false;
};

struct CertifyResult {
  std::vector<CertifyGridPoint> grid;
  bool any_certified = false;
  /// Largest certified eps2 (with its tied eps1); meaningful only when
  /// any_certified.
  double best_eps1 = 0.0;
  double best_eps2 = 0.0;
};

/// Sweeps the eps grid and certifies points whose tail ratios all stay at or
/// below the decay threshold.
CertifyResult certify_radius(const DerivativeTable& table, const CertifyOptions& opts);

}  // namespace divlab
