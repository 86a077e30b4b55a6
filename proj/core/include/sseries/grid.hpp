#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sseries {

/// Uniform grid x_k = a + k (b - a) / (n - 1) on [a, b].
///
/// The node count must be odd (an even number of intervals) so that
/// composite Simpson can pair intervals; the last node is exactly b.
class Grid {
 public:
  /// Throws ShapeError for a >= b, n < 3, even n, or non-finite ends.
  Grid(double a, double b, std::size_t n_nodes);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double step() const noexcept { return h_; }
  double operator[](std::size_t k) const noexcept { return nodes_[k]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  /// Index of the node equal to x (within 1e-9 of a step), if any.
  std::optional<std::size_t> index_of(double x) const noexcept;
  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

  bool operator==(const Grid& other) const noexcept {
    return a_ == other.a_ && b_ == other.b_ && nodes_.size() == other.nodes_.size();
  }

 private:
  double a_;
  double b_;
  double h_;
  std::vector<double> nodes_;
};

/// Composite Simpson integral of node samples over the whole grid.
double simpson(std::span<const double> samples, const Grid& grid);

}  // namespace sseries
