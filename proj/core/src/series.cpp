#include "sseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sseries/errors.hpp"
#include "sseries/oracle.hpp"

namespace sseries {

namespace {

std::size_t base_index(const Grid& grid, double x0) {
  const auto k0 = grid.index_of(x0);
  if (!k0) throw ShapeError("series: base point x0 is not a grid node");
  return *k0;
}

// Second-order node derivatives of the samples, one-sided at the ends.
std::vector<Vector> node_derivatives(std::span<const Vector> f, double h) {
  const std::size_t n = f.size();
  std::vector<Vector> d(n);
  const double inv2h = 1.0 / (2.0 * h);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = inv2h * (f[k + 1] - f[k - 1]);
  d[0] = inv2h * (4.0 * f[1] - 3.0 * f[0] - f[2]);
  d[n - 1] = inv2h * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
  return d;
}

GridVectorFunction apply_M(const FundamentalMatrixTable& table, const std::vector<Vector>& coeffs) {
  GridVectorFunction out{table.grid, {}};
  out.values.reserve(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out.values.push_back(table.M[k] * coeffs[k]);
  return out;
}

}  // namespace

double GridVectorFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, norm_inf(v));
  return m;
}

void SeriesOptions::check() const {
  if (max_terms < 1) throw std::invalid_argument("SeriesOptions: max_terms must be at least 1");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("SeriesOptions: tolerances must be positive");
  }
  if (grid_nodes < 3 || grid_nodes % 2 == 0) {
    throw std::invalid_argument("SeriesOptions: grid_nodes must be odd and at least 3");
  }
}

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::ToleranceMet: return "ToleranceMet";
    case StopReason::MaxTermsReached: return "MaxTermsReached";
    case StopReason::Diverging: return "Diverging";
  }
  return "?";
}

std::vector<Vector> cum_integrate(std::span<const Vector> samples, const Grid& grid, double x0,
                                  QuadratureRule rule) {
  if (samples.size() != grid.size()) throw ShapeError("cum_integrate: samples not on the grid");
  const std::size_t k0 = base_index(grid, x0);
  const std::size_t n = samples.size();
  const std::size_t dim = samples[k0].size();
  const double h = grid.step();

  std::vector<Vector> out(n);
  out[k0] = Vector(dim);
  for (std::size_t k = k0 + 1; k < n; ++k) {
    out[k] = out[k - 1];
    for (std::size_t i = 0; i < dim; ++i) out[k][i] += 0.5 * h * (samples[k - 1][i] + samples[k][i]);
  }
  for (std::size_t k = k0; k-- > 0;) {
    out[k] = out[k + 1];
    for (std::size_t i = 0; i < dim; ++i) out[k][i] -= 0.5 * h * (samples[k][i] + samples[k + 1][i]);
  }

  if (rule == QuadratureRule::EndCorrectedTrapezoid) {
    const std::vector<Vector> d = node_derivatives(samples, h);
    const double w = h * h / 12.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == k0) continue;
      for (std::size_t i = 0; i < dim; ++i) out[k][i] -= w * (d[k][i] - d[k0][i]);
    }
  }
  return out;
}

GridVectorFunction term0_homogeneous(const FundamentalMatrixTable& table, const Vector& c) {
  if (c.size() != table.dim()) throw ShapeError("term0_homogeneous: c has the wrong dimension");
  GridVectorFunction out{table.grid, {}};
  out.values.reserve(table.M.size());
  for (const auto& m : table.M) out.values.push_back(m * c);
  return out;
}

GridVectorFunction term0_nonhomogeneous(const FundamentalMatrixTable& table, const VectorExpr& F,
                                        double x0, const Vector& c, QuadratureRule rule) {
  if (c.size() != table.dim() || F.size() != table.dim()) {
    throw ShapeError("term0_nonhomogeneous: dimension mismatch");
  }
  const Grid& g = table.grid;
  (void)base_index(g, x0);
  std::vector<Vector> integrand;
  integrand.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    integrand.push_back(table.M_inv[k] * eval_vector(F, g[k]));
  }
  std::vector<Vector> coeffs = cum_integrate(integrand, g, x0, rule);
  for (auto& v : coeffs) v += c;
  return apply_M(table, coeffs);
}

std::vector<Matrix> transformed_remainder(const FundamentalMatrixTable& table, const MatrixExpr& Z) {
  const Grid& g = table.grid;
  std::vector<Matrix> out;
  out.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    out.push_back(table.M_inv[k] * (eval_matrix(Z, g[k]) * table.M[k]));
  }
  return out;
}

GridVectorFunction next_term(const FundamentalMatrixTable& table, std::span<const Matrix> Z_nodes,
                             const GridVectorFunction& prev, double x0, QuadratureRule rule) {
  const Grid& g = table.grid;
  if (!(prev.grid == g) || prev.values.size() != g.size() || Z_nodes.size() != g.size()) {
    throw ShapeError("next_term: grid mismatch");
  }
  std::vector<Vector> integrand;
  integrand.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    integrand.push_back(table.M_inv[k] * (Z_nodes[k] * prev.values[k]));
  }
  return apply_M(table, cum_integrate(integrand, g, x0, rule));
}

GridVectorFunction next_term(const FundamentalMatrixTable& table, const MatrixExpr& Z,
                             const GridVectorFunction& prev, double x0, QuadratureRule rule) {
  std::vector<Matrix> z;
  z.reserve(table.grid.size());
  for (double x : table.grid.nodes()) z.push_back(eval_matrix(Z, x));
  return next_term(table, z, prev, x0, rule);
}

GridVectorFunction partial_sum(std::span<const GridVectorFunction> terms, std::size_t l) {
  if (l >= terms.size()) {
    throw std::out_of_range("partial_sum: index " + std::to_string(l) + " with " +
                            std::to_string(terms.size()) + " terms");
  }
  GridVectorFunction out = terms[0];
  for (std::size_t j = 1; j <= l; ++j) {
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += terms[j].values[k];
  }
  return out;
}

SeriesSolution solve_series(const Problem& p, const FundamentalMatrixTable& table,
                            const SeriesOptions& opts) {
  opts.check();
  const Grid& g = table.grid;
  if (g.size() != opts.grid_nodes) throw ShapeError("solve_series: table grid size != grid_nodes");
  if (g.a() != p.interval().a || g.b() != p.interval().b) {
    throw ShapeError("solve_series: table grid does not span the problem interval");
  }
  if (table.dim() != p.dim()) throw ShapeError("solve_series: table dimension != problem dimension");
  const SplitCoefficient& split = p.split();

  std::vector<Matrix> z;
  z.reserve(g.size());
  for (double x : g.nodes()) z.push_back(eval_matrix(split.Z, x));

  GridVectorFunction t0 = p.homogeneous()
                              ? term0_homogeneous(table, p.c())
                              : term0_nonhomogeneous(table, *p.forcing(), p.x0(), p.c(),
                                                     opts.quadrature);
  const double n0 = t0.sup_norm();
  SeriesSolution sol{.terms = {}, .partial_sum = t0, .term_sup_norms = {}};
  auto accept = [&](GridVectorFunction t, double norm) {
    if (!sol.terms.empty()) {
      for (std::size_t k = 0; k < t.values.size(); ++k) sol.partial_sum.values[k] += t.values[k];
    }
    sol.terms.push_back(std::move(t));
    sol.term_sup_norms.push_back(norm);
  };
  auto small = [&](double norm) {
    return norm <= opts.abs_tol + opts.rel_tol * sol.partial_sum.sup_norm();
  };
  auto diverging = [&] {
    const auto& s = sol.term_sup_norms;
    const std::size_t j = s.size() - 1;
    if (!std::isfinite(s[j])) return true;
    if (j < 3) return false;
    return s[j] > s[j - 1] && s[j - 1] > s[j - 2] && s[j - 2] > s[j - 3] && s[j] > 2.0 * s[j - 1];
  };

  accept(std::move(t0), n0);

  if (small(n0)) {
    sol.stop_reason = StopReason::ToleranceMet;
  } else {
    for (;;) {
      if (sol.terms.size() >= opts.max_terms) {
        sol.stop_reason = StopReason::MaxTermsReached;
        break;
      }
      GridVectorFunction t = next_term(table, z, sol.terms.back(), p.x0(), opts.quadrature);
      const double norm = t.sup_norm();
      if (norm == 0.0) {
        sol.stop_reason = StopReason::ToleranceMet;
        break;
      }
      accept(std::move(t), norm);
      if (small(norm)) {
        sol.stop_reason = StopReason::ToleranceMet;
        break;
      }
      if (diverging()) {
        sol.stop_reason = StopReason::Diverging;
        break;
      }
    }
  }
  sol.converged = sol.stop_reason == StopReason::ToleranceMet;
  const bool finite = std::all_of(sol.partial_sum.values.begin(), sol.partial_sum.values.end(),
                                  [](const Vector& v) { return all_finite(v); });
  sol.residual_sup = finite ? oracle::residual(sol.partial_sum.values, p, g)
                            : std::numeric_limits<double>::infinity();
  return sol;
}

}  // namespace sseries
