#pragma once

#include <string>

#include "brodylab/types.hpp"

namespace brodylab {

/// A point of CP^N in homogeneous coordinates, normalized so that the
/// largest-modulus coordinate equals exactly 1.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  /// Throws std::invalid_argument on the zero vector or fewer than two coordinates.
  explicit ProjectivePoint(const HomogVec& homog);
  ProjectivePoint(std::initializer_list<Complex> homog) : ProjectivePoint(HomogVec(homog)) {}

  int dim() const { return homog_.size() - 1; }
  const HomogVec& homog() const { return homog_; }
  const Complex& operator[](int i) const { return homog_[i]; }

  std::string to_string() const;

 private:
  HomogVec homog_;
};

/// d([u],[v]) = |u ^ v| / (|u| |v|), in [0, 1].
double chordal_distance(const ProjectivePoint& u, const ProjectivePoint& v);
double chordal_distance(const HomogVec& u, const HomogVec& v);

/// Fubini-Study distance (1/sqrt(pi)) * angle([u],[v]), in [0, sqrt(pi)/2].
/// The angle is computed as atan2(|u ^ v|, |<u,v>|), which equals
/// arccos(|<u,v>| / (|u||v|)) and stays accurate for nearby points.
double fs_distance(const ProjectivePoint& u, const ProjectivePoint& v);

/// Chordal distance in the affine chart: d([1:z],[1:w]) for z, w in C^N.
double affine_chordal_distance(std::span<const Complex> z, std::span<const Complex> w);

}  // namespace brodylab
