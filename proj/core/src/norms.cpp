#include "divlab/norms.hpp"

#include <cmath>
#include <limits>

#include "divlab/errors.hpp"

namespace divlab {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_coverage(const DerivativeTable& table, int m_total) {
  if (table.empty()) fail(ErrorKind::TruncationTooSmall, "empty table");
  if (table.i_max() < m_total || table.j_max() < m_total)
    fail(ErrorKind::TruncationTooSmall,
         "table covers (" + std::to_string(table.i_max()) + "," +
             std::to_string(table.j_max()) + ") but truncation needs order " +
             std::to_string(m_total));
}

}  // namespace

RhoBreakdown rho_norm(const DerivativeTable& table, const NormWeights& w) {
  require_coverage(table, w.m_total);
  RhoBreakdown out;
  out.order_sums.assign(w.m_total + 1, 0.0);
  for (int i = 0; i <= w.m_total; ++i)
    for (int j = 0; i + j <= w.m_total; ++j) {
      const double term = std::pow(w.eps1, i) * std::pow(w.eps2, j) / factorial(i + j) *
                          table.tensor_norm(i, j);
      out.order_sums[i + j] += term;
      (i + j >= 3 ? out.b_part : out.bc_part) += term;
    }
  out.total = out.b_part + out.bc_part;
  return out;
}

PsiBreakdown psi_norm(const DerivativeTable& v_table, const DerivativeTable& q_table,
                      const NormWeights& w) {
  require_coverage(v_table, w.m_total);
  require_coverage(q_table, w.m_total);
  PsiBreakdown out;
  const int m = w.m_total;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j)
      out.velocity += std::pow(w.eps1, i) * std::pow(w.eps2, j) / factorial(i + j) *
                      v_table.tensor_norm(i, j);
  for (int i = 2; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j)
      out.pressure_high += std::pow(w.eps1, i) * std::pow(w.eps2, j) / factorial(i + j) *
                           q_table.tensor_norm(i - 1, j);
  for (int j = 0; j <= m - 1; ++j)
    out.pressure_mid +=
        w.eps1 * std::pow(w.eps2, j) / factorial(1 + j) * q_table.tensor_norm(0, j);
  for (int j = 1; j <= m; ++j)
    out.pressure_low += std::pow(w.eps2, j) / factorial(j) * q_table.tensor_norm(0, j - 1);
  out.total = out.velocity + out.pressure_high + out.pressure_mid + out.pressure_low;
  return out;
}

CertifyResult certify_radius(const DerivativeTable& table, const CertifyOptions& opts) {
  if (table.empty()) fail(ErrorKind::InsufficientOrders, "empty table");
  if (opts.m_total < 5)
    fail(ErrorKind::InsufficientOrders, "certification needs truncation order >= 5");
  require_coverage(table, opts.m_total);

  CertifyResult result;
  for (double eps2 : opts.eps2_grid) {
    CertifyGridPoint pt;
    pt.eps2 = eps2;
    pt.eps1 = eps2 / (opts.tie_ratio * opts.fitted_product);
    const RhoBreakdown rho =
        rho_norm(table, NormWeights{pt.eps1, pt.eps2, opts.m_total});
    pt.certified = true;
    for (int m = 3; m <= opts.m_total - 1; ++m) {
      const double am = rho.order_sums[m];
      const double am1 = rho.order_sums[m + 1];
      double ratio;
      if (am <= std::numeric_limits<double>::min())
        ratio = (am1 <= std::numeric_limits<double>::min())
                    ? 0.0
                    : std::numeric_limits<double>::infinity();
      else
        ratio = am1 / am;
      pt.ratios.push_back(ratio);
      if (!(ratio <= opts.decay_threshold)) pt.certified = false;
    }
    if (pt.certified && (!result.any_certified || pt.eps2 > result.best_eps2)) {
      result.any_certified = true;
      result.best_eps1 = pt.eps1;
      result.best_eps2 = pt.eps2;
    }
    result.grid.push_back(std::move(pt));
  }
  return result;
}

}  // namespace divlab
