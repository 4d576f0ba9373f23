#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divlab/norms.hpp"
#include "divlab/tables.hpp"

namespace divlab {

/// Numeric audit of one displayed inequality at fixed orders: both sides
/// evaluated from derivative tables, the implicit constant read off as the
/// ratio. For the Leibniz family the right side carries K powers; `rhs` is
/// reported at K = 1 and `fitted_k` is the minimal K with lhs <= rhs(K).
struct InequalityReport {
  std::string lemma;  // eq19, eq20, eq22, eq26, eq27, eq28, eq29, eq30
  std::string tag;    // case label (domain, manufactured case, ...)
  int i = 0;
  int j = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;        // lhs / rhs; meaningless when degenerate
  bool degenerate = false;   // lhs == 0 and rhs == 0 (never counted as a pass)
  std::optional<double> fitted_k;
};

/// H2 regularity audit: lhs = ||v||_{H^2} + ||grad q||, rhs = ||g|| +
/// ||T v||_{H^1} + ||v||, full Sobolev norms, T summed over the family.
InequalityReport check_h2_stokes(const DerivativeTable& v, const DerivativeTable& q,
                                 const DerivativeTable& g, const std::string& tag);

/// Normal derivative reduction. i >= 2 audits the i-reduction (commutator
/// tables supply the exact commutator norms); i == 1 audits the first-order
/// reduction whose right side ends in ||T^j f||.
InequalityReport check_normal_reduction(const DerivativeTable& v, const DerivativeTable& q,
                                        const DerivativeTable& comm_lap_v,
                                        const DerivativeTable& comm_grad_q,
                                        const DerivativeTable& f, int i, int j,
                                        const std::string& tag);

/// Tangential derivative reduction, j >= 2.
InequalityReport check_tangential_reduction(const DerivativeTable& v,
                                            const DerivativeTable& q,
                                            const DerivativeTable& comm_lap_v,
                                            const DerivativeTable& comm_grad_q,
                                            const DerivativeTable& f, int j,
                                            const std::string& tag);

enum class LeibnizKind { Laplacian, Gradient };

/// Leibniz commutator bounds. i == 0 uses the single-sum displays; i >= 1
/// the double sums with binomial and factorial weights. base is the table
/// of the commuted subject (v for Laplacian, q for Gradient).
InequalityReport check_leibniz(LeibnizKind kind, const DerivativeTable& comm,
                               const DerivativeTable& base, int i, int j,
                               const std::string& tag);

struct BootstrapPoint {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double psi = 0.0;
  double rho_f = 0.0;
  bool pass_s1 = false, pass_s2 = false, pass_s3 = false;
  bool pass = false;
};

struct BootstrapResult {
  int m_total = 0;
  double c_star = 0.0;
  double k_star = 0.0;
  double tie_ratio = 0.0;
  std::vector<BootstrapPoint> grid;
  bool any_pass = false;
  double max_passing_eps2 = 0.0;
};

/// Absorption audit: the three reduced sums against psi/10 and
/// psi/25 + rho(f), swept over the eps2 grid with eps1 tied through the
/// fitted constants.
BootstrapResult check_bootstrap(const DerivativeTable& v, const DerivativeTable& q,
                                const DerivativeTable& f,
                                const std::vector<double>& eps2_grid, double tie_ratio,
                                double c_star, double k_star, int m_total);

/// Aggregates over a sweep: max finite nondegenerate ratio and max fitted K.
struct FittedConstants {
  double c_star = 0.0;
  double k_star = 0.0;
  int counted = 0;     // nondegenerate reports
  int degenerate = 0;  // flagged, never counted
};

FittedConstants fit_constants(const std::vector<InequalityReport>& reports);

}  // namespace divlab
