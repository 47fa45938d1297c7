#pragma once

#include <string>
#include <vector>

#include "brodylab/lattice.hpp"

namespace brodylab {

struct Box {
  Box grown(double r) const { return {x0 - r, y0 - r, x1 + r, y1 + r}; }
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

enum class DomainKind { disk, square, rect, cell, thickened, points };

/// Bounded planar region used for quadrature, sup estimates and windows.
class Domain {
 public:
  /// Unit disk at the origin.
  Domain() : r_(1.0) {}
  static Domain disk(Complex center, double radius);
  static Domain square(Complex corner, double side);
  static Domain rect(Complex corner, double width, double height);
  /// One fundamental parallelogram {origin + s w1 + t w2 : s, t in [0,1)}.
  static Domain cell(const PlaneLattice& lattice, Complex origin = 0.0);
  /// D_r(centers): union of closed r-disks.
  static Domain thickened(std::vector<Complex> centers, double r);
  /// Finite point set (zero area), e.g. Omega = {0}.
  static Domain points(std::vector<Complex> pts);

  DomainKind kind() const { return kind_; }
  Complex center() const { return a_; }
  Complex corner() const { return a_; }
  double radius() const { return r_; }
  double side() const { return w_; }
  double width() const { return w_; }
  double height() const { return h_; }
  const PlaneLattice& lattice() const { return lattice_; }
  const std::vector<Complex>& centers() const { return pts_; }

  bool contains(Complex z) const;
  Box bbox() const;
  /// Exact for every kind except thickened, which is estimated on a fine grid.
  double area() const;
  /// Negative inside, positive outside; exact Euclidean distance to the boundary.
  double signed_distance(Complex z) const;
  /// Nodes of the aligned grid h Z^2 lying in the domain (lattice coordinates
  /// i/n for cells, the points themselves for point sets). Never empty for a
  /// nonempty domain: falls back to a representative point.
  std::vector<Complex> grid_points(double h) const;
  Domain translated(Complex a) const;
  std::string describe() const;

 private:
  DomainKind kind_ = DomainKind::disk;
  Complex a_{};
  double r_ = 0.0;
  double w_ = 0.0;
  double h_ = 0.0;
  PlaneLattice lattice_;
  std::vector<Complex> pts_;
};

}  // namespace brodylab
