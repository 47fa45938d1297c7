#include "brodylab/projective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace brodylab {

ProjectivePoint::ProjectivePoint(const HomogVec& homog) : homog_(homog) {
  if (homog.size() < 2) throw std::invalid_argument("ProjectivePoint: need at least two coordinates");
  const int k = homog.argmax_modulus();
  if (homog[k] == Complex(0.0, 0.0)) throw std::invalid_argument("ProjectivePoint: zero vector");
  const Complex pivot = homog[k];
  for (int i = 0; i < homog_.size(); ++i) homog_[i] /= pivot;
  homog_[k] = 1.0;
}

std::string ProjectivePoint::to_string() const {
  std::ostringstream out;
  out.precision(6);
  out << '[';
  for (int i = 0; i < homog_.size(); ++i) {
    if (i) out << " : ";
    out << homog_[i].real();
    if (homog_[i].imag() != 0.0) out << (homog_[i].imag() < 0 ? "-" : "+") << std::abs(homog_[i].imag()) << 'i';
  }
  out << ']';
  return out.str();
}

double chordal_distance(const HomogVec& u, const HomogVec& v) {
  const double num = std::sqrt(wedge_norm2(u, v));
  return std::min(1.0, num / (u.norm() * v.norm()));
}

double chordal_distance(const ProjectivePoint& u, const ProjectivePoint& v) {
  return chordal_distance(u.homog(), v.homog());
}

double fs_distance(const ProjectivePoint& u, const ProjectivePoint& v) {
  const double w = std::sqrt(wedge_norm2(u.homog(), v.homog()));
  const double c = std::abs(inner(u.homog(), v.homog()));
  return std::atan2(w, c) / kSqrtPi;
}

double affine_chordal_distance(std::span<const Complex> z, std::span<const Complex> w) {
  double diff2 = 0.0;
  double z2 = 0.0;
  double w2 = 0.0;
  double wedge2 = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    diff2 += std::norm(z[i] - w[i]);
    z2 += std::norm(z[i]);
    w2 += std::norm(w[i]);
    for (std::size_t j = i + 1; j < z.size(); ++j) wedge2 += std::norm(z[i] * w[j] - z[j] * w[i]);
  }
  return std::sqrt(diff2 + wedge2) / (std::sqrt(1.0 + z2) * std::sqrt(1.0 + w2));
}

}  // namespace brodylab
