#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace brodylab {

/// Finite metric space with a dense distance matrix.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  /// All distances zero; labels default to "0", "1", ...
  explicit FiniteMetricSpace(std::size_t n);
  /// Row-major n x n matrix. Throws std::invalid_argument unless symmetric,
  /// nonnegative and zero on the diagonal.
  static FiniteMetricSpace from_matrix(std::vector<double> dist, std::size_t n);
  /// Build from a pairwise distance function; d(i, i) is not called.
  static FiniteMetricSpace from_function(std::size_t n, const std::function<double(std::size_t, std::size_t)>& d);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double d);
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  struct TriangleCheck {
    bool ok = true;
    double worst_violation = 0.0;
    std::size_t i = 0, j = 0, k = 0;
    std::size_t triples = 0;
  };
  /// Every triple when size() <= full_limit, otherwise `samples` seeded triples.
  TriangleCheck check_triangle(double slack = 1e-12, std::size_t full_limit = 200, std::size_t samples = 100000,
                               std::uint64_t seed = 1) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
  std::vector<std::string> labels_;
};

/// Maximal subset with pairwise distances > eps, scanning in label order, or
/// in a seeded shuffled order when order_seed is given.
std::vector<std::size_t> greedy_separated(const FiniteMetricSpace& space, double eps,
                                          std::optional<std::uint64_t> order_seed = std::nullopt);
bool is_separated(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double eps);
bool is_maximal_separated(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double eps);

/// Radius used for covers at scale eps: the largest double below eps / 2.
double cover_radius(double eps);

/// Point-centred closed balls of radius cover_radius(eps) (diameter < eps)
/// chosen by max-coverage greedy. Returns the ball centres.
std::vector<std::size_t> greedy_cover_centers(const FiniteMetricSpace& space, double eps);
/// Size of the smaller of two valid covers: the max-coverage greedy one and the
/// label-order maximal cover_radius(eps)-separated set.
std::size_t greedy_cover(const FiniteMetricSpace& space, double eps);
bool is_cover(const FiniteMetricSpace& space, const std::vector<std::size_t>& centers, double eps);

/// Exhaustive #_sep and minimal point-centred cover; spaces of at most 20 points.
std::size_t exact_separated_count(const FiniteMetricSpace& space, double eps);
std::size_t exact_cover_count(const FiniteMetricSpace& space, double eps);

/// ((eps + 2r) / eps)^n.
double banach_ball_bound(int n, double r, double eps);

enum class Norm { sup, euclidean };

/// Greedy maximal eps-separated subset (row order) of a point cloud in R^dim,
/// bucketed so large samples stay cheap. Points are stored row-major.
std::size_t point_cloud_separated_count(const std::vector<double>& points, int dim, double eps, Norm norm);

/// Row-major grid of the r-ball of (R^n, |.|_sup) with `per_axis` points per axis.
std::vector<double> sup_ball_grid(int n, double r, int per_axis);

struct MonotonicityResult {
  bool hypothesis = false;  ///< d(x, y) > eps implies d'(f x, f y) > delta on every pair
  std::size_t violating_i = 0, violating_j = 0;
  std::size_t greedy_x = 0;  ///< greedy #_sep(X, eps)
  std::optional<std::size_t> exact_y;  ///< exact #_sep(Y, delta) when |Y| <= 15
  bool conclusion = true;  ///< greedy_x <= exact_y when both are known
};
MonotonicityResult check_map_monotonicity(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                          const std::vector<std::size_t>& map, double eps, double delta);

struct CountReport {
  double eps = 0.0;
  std::size_t sep_count = 0;
  std::size_t cover_count = 0;
  std::string window;
  double window_area = 0.0;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  /// log(cover_count) / window_area.
  double entropy = 0.0;
};
nlohmann::json to_json(const CountReport& report);
std::string count_reports_csv(const std::vector<CountReport>& reports);

struct MmdimEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  std::map<double, double> ratios;  ///< eps -> S / |log eps|
  double min_ratio = 0.0;           ///< liminf proxy
};
/// Least-squares slope of S against |log eps|. Needs >= 3 scales spanning a decade.
MmdimEstimate mmdim_slope(const std::map<double, double>& entropy_by_eps);

}  // namespace brodylab
