#include "sseries/problem.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sseries/errors.hpp"

namespace sseries {

namespace {

constexpr double kSplitTol = 1e-12;

std::size_t coefficient_dim(const Problem::Coefficient& coeff) {
  if (const auto* w = std::get_if<WholeCoefficient>(&coeff)) return w->A.size();
  const auto& s = std::get<SplitCoefficient>(coeff);
  if (s.H.size() != s.Z.size()) throw ShapeError("Problem: H and Z differ in size");
  return s.H.size();
}

std::string at_x(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "x = %.17g", x);
  return buf;
}

bool split_matches(const Matrix& h, const Matrix& z, const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = std::abs(h(i, j) + z(i, j) - a(i, j));
      if (!(d <= kSplitTol * std::max(1.0, std::abs(a(i, j))))) return false;
    }
  }
  return true;
}

}  // namespace

Problem::Problem(Coefficient coeff, std::optional<VectorExpr> forcing, Interval interval,
                 double x0, Vector c)
    : n_(coefficient_dim(coeff)),
      coeff_(std::move(coeff)),
      forcing_(std::move(forcing)),
      interval_(interval),
      x0_(x0),
      c_(std::move(c)) {
  if (n_ == 0) throw ShapeError("Problem: empty coefficient matrix");
  if (forcing_ && forcing_->size() != n_) {
    throw ShapeError("Problem: forcing has " + std::to_string(forcing_->size()) +
                     " entries, system has " + std::to_string(n_));
  }
  if (c_.size() != n_) {
    throw ShapeError("Problem: c has " + std::to_string(c_.size()) + " entries, system has " +
                     std::to_string(n_));
  }
  if (!std::isfinite(interval.a) || !std::isfinite(interval.b) || !(interval.a < interval.b)) {
    throw ShapeError("Problem: interval must satisfy a < b");
  }
  if (!std::isfinite(x0)) throw ShapeError("Problem: x0 must be finite");
}

const SplitCoefficient& Problem::split() const {
  if (const auto* s = std::get_if<SplitCoefficient>(&coeff_)) return *s;
  throw std::logic_error("Problem: coefficient has not been split into H + Z");
}

MatrixExpr Problem::system_matrix() const {
  if (const auto* w = std::get_if<WholeCoefficient>(&coeff_)) return w->A;
  const auto& s = std::get<SplitCoefficient>(coeff_);
  return s.H + s.Z;
}

Problem Problem::with_coefficient(Coefficient coeff) const {
  return Problem(std::move(coeff), forcing_, interval_, x0_, c_);
}

// ---------------------------------------------------------------------------

SplitCoefficient split_coefficient(const MatrixExpr& A, const SplitStrategy& strategy,
                                   const Grid& grid) {
  const std::size_t n = A.size();
  if (n == 0) throw ShapeError("split_coefficient: empty matrix");

  SplitCoefficient out = std::visit(
      [&](const auto& s) -> SplitCoefficient {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, UserGiven>) {
          if (s.H.size() != n || s.Z.size() != n) {
            throw ShapeError("split_coefficient: user H/Z do not match A's size");
          }
          return {s.H, s.Z};
        } else if constexpr (std::is_same_v<S, ConstantMean>) {
          Matrix h(n, n);
          std::vector<double> samples(grid.size());
          const double width = grid.b() - grid.a();
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              for (std::size_t k = 0; k < grid.size(); ++k) samples[k] = eval(A(i, j), grid[k]);
              h(i, j) = simpson(samples, grid) / width;
            }
          }
          return {MatrixExpr::constant(h), A - MatrixExpr::constant(h)};
        } else if constexpr (std::is_same_v<S, ConstantAtPoint>) {
          if (!grid.contains(s.point)) {
            throw ShapeError("split_coefficient: point " + at_x(s.point) +
                             " lies outside the interval");
          }
          const Matrix h = eval_matrix(A, s.point);
          return {MatrixExpr::constant(h), A - MatrixExpr::constant(h)};
        } else {
          MatrixExpr h(n);
          MatrixExpr z(n);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) (i == j ? h : z)(i, j) = A(i, j);
          }
          return {h, z};
        }
      },
      strategy);

  for (double x : grid.nodes()) {
    if (!split_matches(eval_matrix(out.H, x), eval_matrix(out.Z, x), eval_matrix(A, x))) {
      throw ShapeError("split_coefficient: H + Z differs from A at " + at_x(x));
    }
  }
  return out;
}

Problem apply_split(const Problem& p, const SplitStrategy& strategy, const Grid& grid) {
  return p.with_coefficient(split_coefficient(p.system_matrix(), strategy, grid));
}

// ---------------------------------------------------------------------------

Problem companion_reduce(const CompanionSpec& spec) {
  const std::size_t n = spec.order;
  if (n == 0) throw ShapeError("companion_reduce: order must be at least 1");
  if (spec.coefficients.size() != n) {
    throw ShapeError("companion_reduce: expected " + std::to_string(n) +
                     " coefficients, got " + std::to_string(spec.coefficients.size()));
  }
  MatrixExpr a(n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = ScalarExpr::constant(1.0);
  // column j multiplies y^(j), whose coefficient in the scalar equation is a_{n-j}
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = negated(spec.coefficients[n - 1 - j]);

  std::vector<ScalarExpr> f(n);
  f[n - 1] = spec.forcing;
  return Problem(WholeCoefficient{a}, VectorExpr(std::move(f)), spec.interval, spec.x0,
                 spec.initial);
}

// ---------------------------------------------------------------------------

bool ValidationReport::ok() const noexcept {
  for (const auto& f : findings) {
    if (f.severity == Finding::Severity::Error) return false;
  }
  return true;
}

std::vector<Finding> ValidationReport::errors() const {
  std::vector<Finding> out;
  for (const auto& f : findings) {
    if (f.severity == Finding::Severity::Error) out.push_back(f);
  }
  return out;
}

ValidationReport validate(const Problem& p, const Grid& grid) {
  using Kind = Finding::Kind;
  using Severity = Finding::Severity;
  ValidationReport report;
  auto add = [&](Severity s, Kind k, std::string msg, std::optional<double> x = std::nullopt,
                 std::optional<std::size_t> row = std::nullopt,
                 std::optional<std::size_t> col = std::nullopt) {
    report.findings.push_back({s, k, std::move(msg), x, row, col});
  };

  const Interval iv = p.interval();
  if (p.x0() < iv.a || p.x0() > iv.b) {
    add(Severity::Error, Kind::BaseOutOfInterval,
        "base point " + at_x(p.x0()) + " lies outside the interval", p.x0());
  }
  if (grid.a() != iv.a || grid.b() != iv.b) {
    add(Severity::Error, Kind::GridIntervalMismatch, "grid does not span the problem interval");
  } else if (!grid.index_of(p.x0())) {
    add(Severity::Error, Kind::BaseNotOnGrid, "base point " + at_x(p.x0()) + " is not a grid node",
        p.x0());
  }

  // Sample each matrix; stop at the first failing node per matrix so a pole
  // does not flood the report.
  auto scan = [&](const MatrixExpr& m, const char* name) {
    for (double x : grid.nodes()) {
      try {
        (void)eval_matrix(m, x);
      } catch (const DomainError& e) {
        add(Severity::Error, Kind::NonFiniteCoefficient,
            std::string(name) + " is not finite: " + e.what(), x, e.row(), e.col());
        return false;
      }
    }
    return true;
  };

  bool finite = true;
  if (const auto* w = std::get_if<WholeCoefficient>(&p.coefficient())) {
    finite = scan(w->A, "A");
  } else {
    const auto& s = p.split();
    finite = scan(s.H, "H");
    finite = scan(s.Z, "Z") && finite;
    if (finite) {
      bool singular_seen = false;
      for (double x : grid.nodes()) {
        const Matrix h = eval_matrix(s.H, x);
        const Matrix z = eval_matrix(s.Z, x);
        // A is stored only as H + Z here, so reconstruction is exact; the
        // remainder's singularity is informational.
        if (!split_matches(h, z, h + z)) {
          add(Severity::Error, Kind::SplitMismatch, "H + Z differs from A at " + at_x(x), x);
          break;
        }
        const double scale = std::pow(max_abs(z), static_cast<double>(z.rows()));
        if (!singular_seen && !(std::abs(mat_det(z)) > 1e-12 * scale && scale > 0.0)) {
          add(Severity::Info, Kind::SingularRemainder,
              "Z is singular at " + at_x(x) + " (not required by the method)", x);
          singular_seen = true;
        }
      }
    }
  }

  if (const auto& f = p.forcing()) {
    for (double x : grid.nodes()) {
      try {
        (void)eval_vector(*f, x);
      } catch (const DomainError& e) {
        add(Severity::Error, Kind::NonFiniteForcing, std::string("F is not finite: ") + e.what(),
            x, e.row());
        break;
      }
    }
  }
  return report;
}

}  // namespace sseries
