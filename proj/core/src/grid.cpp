#include "sseries/grid.hpp"

#include <cmath>
#include <string>

#include "sseries/errors.hpp"

namespace sseries {

Grid::Grid(double a, double b, std::size_t n_nodes) : a_(a), b_(b), h_(0.0) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ShapeError("Grid: interval must satisfy a < b with finite ends");
  }
  if (n_nodes < 3 || n_nodes % 2 == 0) {
    throw ShapeError("Grid: node count must be odd and at least 3, got " +
                     std::to_string(n_nodes));
  }
  h_ = (b - a) / static_cast<double>(n_nodes - 1);
  nodes_.resize(n_nodes);
  for (std::size_t k = 0; k + 1 < n_nodes; ++k) nodes_[k] = a + static_cast<double>(k) * h_;
  nodes_.back() = b;
}

std::optional<std::size_t> Grid::index_of(double x) const noexcept {
  if (!std::isfinite(x)) return std::nullopt;
  const double k = std::round((x - a_) / h_);
  if (k < 0.0 || k > static_cast<double>(nodes_.size() - 1)) return std::nullopt;
  const auto idx = static_cast<std::size_t>(k);
  if (std::abs(nodes_[idx] - x) > 1e-9 * h_) return std::nullopt;
  return idx;
}

double simpson(std::span<const double> samples, const Grid& grid) {
  if (samples.size() != grid.size()) throw ShapeError("simpson: sample count != grid size");
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
    (k % 2 == 1 ? odd : even) += samples[k];
  }
  return grid.step() / 3.0 * (samples.front() + 4.0 * odd + 2.0 * even + samples.back());
}

}  // namespace sseries
