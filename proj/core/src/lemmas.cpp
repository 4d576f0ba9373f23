#include "divlab/lemmas.hpp"

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

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int t = 1; t <= k; ++t) b = b * (n - k + t) / t;
  return b;
}

InequalityReport make_report(std::string lemma, std::string tag, int i, int j, double lhs,
                             double rhs) {
  InequalityReport r;
  r.lemma = std::move(lemma);
  r.tag = std::move(tag);
  r.i = i;
  r.j = j;
  r.lhs = lhs;
  r.rhs = rhs;
  r.degenerate = (lhs == 0.0 && rhs == 0.0);
  r.ratio = r.degenerate ? 0.0 : lhs / rhs;
  return r;
}

}  // namespace

InequalityReport check_h2_stokes(const DerivativeTable& v, const DerivativeTable& q,
                                 const DerivativeTable& g, const std::string& tag) {
  const double lhs = v.tensor_norm(0, 0) + v.tensor_norm(1, 0) + v.tensor_norm(2, 0) +
                     q.tensor_norm(1, 0);
  const double rhs = g.tensor_norm(0, 0) + v.tensor_norm(0, 1) + v.tensor_norm(1, 1) +
                     v.tensor_norm(0, 0);
  return make_report("eq22", tag, 0, 0, lhs, rhs);
}

InequalityReport check_normal_reduction(const DerivativeTable& v, const DerivativeTable& q,
                                        const DerivativeTable& comm_lap_v,
                                        const DerivativeTable& comm_grad_q,
                                        const DerivativeTable& f, int i, int j,
                                        const std::string& tag) {
  if (i == 1) {
    if (j < 1) fail(ErrorKind::InsufficientOrders, "first-order reduction needs j >= 1");
    const double lhs = v.tensor_norm(1, j) + q.tensor_norm(0, j);
    const double rhs = comm_lap_v.tensor_norm(0, j - 1) + comm_grad_q.tensor_norm(0, j - 1) +
                       f.tensor_norm(0, j);
    return make_report("eq20", tag, i, j, lhs, rhs);
  }
  if (i < 2) fail(ErrorKind::InsufficientOrders, "normal reduction needs i >= 1");
  const double lhs = v.tensor_norm(i, j) + q.tensor_norm(i - 1, j);
  // The H^1 term follows the homogeneous symbol convention: one extra
  // full-space derivative.
  const double rhs = v.tensor_norm(i - 1, j + 1) + v.tensor_norm(i - 2, j) +
                     comm_lap_v.tensor_norm(i - 2, j) + comm_grad_q.tensor_norm(i - 2, j);
  return make_report("eq19", tag, i, j, lhs, rhs);
}

InequalityReport check_tangential_reduction(const DerivativeTable& v,
                                            const DerivativeTable& q,
                                            const DerivativeTable& comm_lap_v,
                                            const DerivativeTable& comm_grad_q,
                                            const DerivativeTable& f, int j,
                                            const std::string& tag) {
  if (j < 2) fail(ErrorKind::InsufficientOrders, "tangential reduction needs j >= 2");
  const double lhs = v.tensor_norm(0, j) + q.tensor_norm(0, j - 1);
  const double rhs = comm_lap_v.tensor_norm(0, j - 2) + comm_grad_q.tensor_norm(0, j - 2) +
                     f.tensor_norm(0, j - 1);
  return make_report("eq26", tag, 0, j, lhs, rhs);
}

namespace {

// Right side of the Leibniz displays as a function of K.
double leibniz_rhs(LeibnizKind kind, const DerivativeTable& base, int i, int j, double k_const) {
  double rhs = 0.0;
  if (kind == LeibnizKind::Laplacian) {
    if (i == 0) {
      for (int jp = 1; jp <= j; ++jp) {
        const double w = factorial(j) / factorial(j - jp) * std::pow(k_const, jp);
        rhs += w * base.tensor_norm(2, j - jp);
        rhs += w * jp * base.tensor_norm(1, j - jp);
      }
    } else {
      for (int jp = 0; jp <= j - 1; ++jp)
        for (int ip = 0; ip <= i; ++ip) {
          const int i3 = i - ip;
          rhs += binomial(ip + j - jp, ip) * factorial(i) * factorial(j) /
                 (factorial(i3) * factorial(jp)) * std::pow(k_const, ip + j - jp) *
                 base.tensor_norm(i3 + 2, jp);
        }
    }
  } else {
    if (i == 0) {
      for (int jp = 1; jp <= j; ++jp)
        rhs += factorial(j) / factorial(j - jp) * std::pow(k_const, jp) *
               base.tensor_norm(1, j - jp);
    } else {
      for (int jp = 0; jp <= j - 1; ++jp)
        for (int ip = 0; ip <= i; ++ip)
          rhs += binomial(ip + j - jp, ip) * factorial(i) * factorial(j) /
                 (factorial(i - ip) * factorial(jp)) * std::pow(k_const, ip + j - jp) *
                 base.tensor_norm(i - ip + 1, jp);
    }
  }
  return rhs;
}

}  // namespace

InequalityReport check_leibniz(LeibnizKind kind, const DerivativeTable& comm,
                               const DerivativeTable& base, int i, int j,
                               const std::string& tag) {
  if (j < 1) fail(ErrorKind::InsufficientOrders, "leibniz bounds need j >= 1");
  const char* lemma = (kind == LeibnizKind::Laplacian) ? (i == 0 ? "eq27" : "eq28")
                                                       : (i == 0 ? "eq29" : "eq30");
  const double lhs = comm.tensor_norm(i, j);
  const double rhs1 = leibniz_rhs(kind, base, i, j, 1.0);
  InequalityReport r = make_report(lemma, tag, i, j, lhs, rhs1);
  // Minimal K with lhs <= rhs(K): rhs is increasing in K >= 0 and vanishes
  // at K = 0, so bisection after doubling brackets the crossing.
  double fitted = 0.0;
  if (lhs > 0.0) {
    if (rhs1 <= 0.0) {
      fitted = std::numeric_limits<double>::infinity();
    } else {
      double hi = 1.0;
      int guard = 0;
      while (leibniz_rhs(kind, base, i, j, hi) < lhs && guard++ < 200) hi *= 2.0;
      double lo = 0.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (leibniz_rhs(kind, base, i, j, mid) < lhs ? lo : hi) = mid;
      }
      fitted = hi;
    }
  }
  r.fitted_k = fitted;
  return r;
}

BootstrapResult check_bootstrap(const DerivativeTable& v, const DerivativeTable& q,
                                const DerivativeTable& f,
                                const std::vector<double>& eps2_grid, double tie_ratio,
                                double c_star, double k_star, int m_total) {
  BootstrapResult out;
  out.m_total = m_total;
  out.c_star = c_star;
  out.k_star = k_star;
  out.tie_ratio = tie_ratio;
  for (double eps2 : eps2_grid) {
    BootstrapPoint pt;
    pt.eps2 = eps2;
    pt.eps1 = eps2 / (tie_ratio * (c_star + 1.0) * (k_star + 1.0));
    const NormWeights w{pt.eps1, pt.eps2, m_total};
    // S1: at least two normal derivatives; the pressure row carries
    // eps1^{i-1} with the i-th derivative of q.
    for (int i = 2; i <= m_total; ++i)
      for (int j = 1; i + j <= m_total; ++j) {
        const double c = 1.0 / factorial(i + j);
        pt.s1 += c * std::pow(pt.eps1, i) * std::pow(pt.eps2, j) * v.tensor_norm(i, j);
        pt.s1 += c * std::pow(pt.eps1, i - 1) * std::pow(pt.eps2, j) * q.tensor_norm(i, j);
      }
    // S2: exactly one normal derivative.
    for (int j = 2; j + 1 <= m_total; ++j)
      pt.s2 += pt.eps1 * std::pow(pt.eps2, j) / factorial(j + 1) *
               (v.tensor_norm(1, j) + q.tensor_norm(0, j));
    // S3: tangential only.
    for (int j = 3; j <= m_total; ++j)
      pt.s3 += std::pow(pt.eps2, j) / factorial(j) *
               (v.tensor_norm(0, j) + q.tensor_norm(0, j - 1));
    pt.psi = psi_norm(v, q, w).total;
    pt.rho_f = rho_norm(f, w).total;
    pt.pass_s1 = pt.s1 <= pt.psi / 10.0;
    pt.pass_s2 = pt.s2 <= pt.psi / 25.0 + pt.rho_f;
    pt.pass_s3 = pt.s3 <= pt.psi / 25.0 + pt.rho_f;
    pt.pass = pt.pass_s1 && pt.pass_s2 && pt.pass_s3;
    if (pt.pass && (!out.any_pass || pt.eps2 > out.max_passing_eps2)) {
      out.any_pass = true;
      out.max_passing_eps2 = pt.eps2;
    }
    out.grid.push_back(pt);
  }
  return out;
}

FittedConstants fit_constants(const std::vector<InequalityReport>& reports) {
  FittedConstants fc;
  for (const auto& r : reports) {
    if (r.degenerate) {
      ++fc.degenerate;
      continue;
    }
    ++fc.counted;
    if (std::isfinite(r.ratio)) fc.c_star = std::max(fc.c_star, r.ratio);
    if (r.fitted_k && std::isfinite(*r.fitted_k)) fc.k_star = std::max(fc.k_star, *r.fitted_k);
  }
  return fc;
}

}  // namespace divlab
