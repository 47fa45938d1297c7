#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "brodylab/lattice.hpp"

namespace brodylab {

/// Real samples on a uniform grid, either over a torus cell (periodic, no
/// duplicated boundary row or column) or over a plane rectangle.
/// Values are row-major: index j * nx + i, i along w1 (or x).
class ScalarField {
 public:
  /// Samples at origin + (i/nx) w1 + (j/ny) w2.
  static ScalarField torus(const PlaneLattice& lattice, int nx, int ny);
  /// Samples at corner + (i h, j h).
  static ScalarField rectangle(Complex corner, double spacing, int nx, int ny);

  bool is_torus() const { return torus_; }
  const PlaneLattice& lattice() const { return lattice_; }
  Complex corner() const { return corner_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  /// Grid step along the first axis.
  double spacing() const;
  Complex point(int i, int j) const;
  /// Area represented by one sample.
  double sample_area() const;

  double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  void fill(const std::function<double(Complex)>& g);
  double min() const;
  double max() const;
  double max_abs() const;
  double mean() const;
  /// Sum of values times sample_area.
  double integral() const;

  /// Header line then ny rows of nx values (%.17g).
  void write_text(std::ostream& out) const;
  static ScalarField read_text(std::istream& in);
  /// Columns x, y, value.
  void write_csv(std::ostream& out) const;

 private:
  ScalarField() = default;
  bool torus_ = false;
  PlaneLattice lattice_;
  Complex corner_{};
  double h_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> values_;
};

}  // namespace brodylab
