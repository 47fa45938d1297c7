#include "brodylab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "brodylab/rng.hpp"

namespace brodylab {

FiniteMetricSpace::FiniteMetricSpace(std::size_t n) : n_(n), d_(n * n, 0.0) {
  labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<double> dist, std::size_t n) {
  if (dist.size() != n * n) throw std::invalid_argument("FiniteMetricSpace: matrix is not n x n");
  FiniteMetricSpace s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i * n + i] != 0.0) throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i * n + j];
      if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("FiniteMetricSpace: negative or non-finite distance");
      if (d != dist[j * n + i]) throw std::invalid_argument("FiniteMetricSpace: matrix not symmetric");
    }
  }
  s.d_ = std::move(dist);
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_function(std::size_t n,
                                                   const std::function<double(std::size_t, std::size_t)>& d) {
  FiniteMetricSpace s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, d(i, j));
  }
  return s;
}

void FiniteMetricSpace::set(std::size_t i, std::size_t j, double d) {
  if (i == j) {
    if (d != 0.0) throw std::invalid_argument("FiniteMetricSpace: diagonal must be zero");
    return;
  }
  if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("FiniteMetricSpace: negative or non-finite distance");
  d_[i * n_ + j] = d;
  d_[j * n_ + i] = d;
}

void FiniteMetricSpace::set_labels(std::vector<std::string> labels) {
  if (labels.size() != n_) throw std::invalid_argument("FiniteMetricSpace: label count mismatch");
  labels_ = std::move(labels);
}

FiniteMetricSpace::TriangleCheck FiniteMetricSpace::check_triangle(double slack, std::size_t full_limit,
                                                                   std::size_t samples, std::uint64_t seed) const {
  TriangleCheck out;
  auto test = [&](std::size_t i, std::size_t j, std::size_t k) {
    ++out.triples;
    const double v = (*this)(i, k) - (*this)(i, j) - (*this)(j, k);
    if (v > out.worst_violation) {
      out.worst_violation = v;
      out.i = i;
      out.j = j;
      out.k = k;
    }
  };
  if (n_ <= full_limit) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) test(i, j, k);
      }
    }
  } else {
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) test(rng.below(n_), rng.below(n_), rng.below(n_));
  }
  out.ok = out.worst_violation <= slack;
  return out;
}

std::vector<std::size_t> greedy_separated(const FiniteMetricSpace& space, double eps,
                                          std::optional<std::uint64_t> order_seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("greedy_separated: eps must be positive");
  std::vector<std::size_t> order(space.size());
  std::iota(order.begin(), order.end(), 0);
  if (order_seed) {
    Rng rng(*order_seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  }
  std::vector<std::size_t> out;
  for (std::size_t i : order) {
    bool far = true;
    for (std::size_t j : out) {
      if (space(i, j) <= eps) {
        far = false;
        break;
      }
    }
    if (far) out.push_back(i);
  }
  return out;
}

bool is_separated(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double eps) {
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      if (space(subset[a], subset[b]) <= eps) return false;
    }
  }
  return true;
}

bool is_maximal_separated(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double eps) {
  if (!is_separated(space, subset, eps)) return false;
  std::vector<bool> in(space.size(), false);
  for (std::size_t i : subset) in[i] = true;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (in[i]) continue;
    bool blocked = false;
    for (std::size_t j : subset) {
      if (space(i, j) <= eps) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return false;
  }
  return true;
}

double cover_radius(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("cover_radius: eps must be positive");
  return std::nextafter(0.5 * eps, 0.0);
}

std::vector<std::size_t> greedy_cover_centers(const FiniteMetricSpace& space, double eps) {
  const double r = cover_radius(eps);
  const std::size_t n = space.size();
  std::vector<bool> covered(n, false);
  std::size_t remaining = n;
  std::vector<std::size_t> centers;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!covered[i] && space(c, i) <= r) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    centers.push_back(best);
    for (std::size_t i = 0; i < n; ++i) {
      if (!covered[i] && space(best, i) <= r) {
        covered[i] = true;
        --remaining;
      }
    }
  }
  return centers;
}

std::size_t greedy_cover(const FiniteMetricSpace& space, double eps) {
  if (space.size() == 0) return 0;
  const std::size_t by_coverage = greedy_cover_centers(space, eps).size();
  // A maximal r-separated set is itself an r-cover.
  const std::size_t by_packing = greedy_separated(space, cover_radius(eps)).size();
  return std::min(by_coverage, by_packing);
}

bool is_cover(const FiniteMetricSpace& space, const std::vector<std::size_t>& centers, double eps) {
  const double r = cover_radius(eps);
  for (std::size_t i = 0; i < space.size(); ++i) {
    bool hit = false;
    for (std::size_t c : centers) {
      if (space(c, i) <= r) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kExactLimit = 20;

void require_small(const FiniteMetricSpace& space, const char* what) {
  if (space.size() > kExactLimit) {
    throw std::invalid_argument(std::string(what) + ": exhaustive search limited to " + std::to_string(kExactLimit) +
                                " points");
  }
}

// Largest independent set of the "too close" graph, by branching on the lowest free vertex.
std::size_t max_independent(std::uint32_t free, const std::vector<std::uint32_t>& conflict) {
  if (free == 0) return 0;
  const int v = __builtin_ctz(free);
  const std::uint32_t rest = free & ~(1u << v);
  const std::size_t skip = max_independent(rest, conflict);
  const std::size_t take = 1 + max_independent(rest & ~conflict[v], conflict);
  return std::max(skip, take);
}

bool cover_search(std::uint32_t uncovered, int k, const std::vector<std::uint32_t>& ball) {
  if (uncovered == 0) return true;
  if (k == 0) return false;
  // Some chosen ball must contain the lowest uncovered point.
  const int v = __builtin_ctz(uncovered);
  for (std::size_t c = 0; c < ball.size(); ++c) {
    if ((ball[c] >> v) & 1u) {
      if (cover_search(uncovered & ~ball[c], k - 1, ball)) return true;
    }
  }
  return false;
}

}  // namespace

std::size_t exact_separated_count(const FiniteMetricSpace& space, double eps) {
  require_small(space, "exact_separated_count");
  const std::size_t n = space.size();
  std::vector<std::uint32_t> conflict(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && space(i, j) <= eps) conflict[i] |= 1u << j;
    }
  }
  return max_independent(n == 0 ? 0u : static_cast<std::uint32_t>((1ull << n) - 1), conflict);
}

std::size_t exact_cover_count(const FiniteMetricSpace& space, double eps) {
  require_small(space, "exact_cover_count");
  const std::size_t n = space.size();
  if (n == 0) return 0;
  const double r = cover_radius(eps);
  std::vector<std::uint32_t> ball(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (space(c, i) <= r) ball[c] |= 1u << i;
    }
  }
  const auto all = static_cast<std::uint32_t>((1ull << n) - 1);
  for (int k = 1;; ++k) {
    if (cover_search(all, k, ball)) return static_cast<std::size_t>(k);
  }
}

double banach_ball_bound(int n, double r, double eps) {
  if (n < 1) throw std::invalid_argument("banach_ball_bound: n must be >= 1");
  if (!(r > 0.0) || !(eps > 0.0)) throw std::invalid_argument("banach_ball_bound: r and eps must be positive");
  return std::pow((eps + 2.0 * r) / eps, n);
}

std::size_t point_cloud_separated_count(const std::vector<double>& points, int dim, double eps, Norm norm) {
  if (dim < 1) throw std::invalid_argument("point_cloud_separated_count: dim must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("point_cloud_separated_count: eps must be positive");
  const std::size_t n = points.size() / static_cast<std::size_t>(dim);
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = std::abs(points[a * dim + k] - points[b * dim + k]);
      s = norm == Norm::sup ? std::max(s, d) : s + d * d;
    }
    return norm == Norm::sup ? s : std::sqrt(s);
  };
  // Buckets of side eps: any conflicting point lies in an adjacent bucket.
  std::map<std::vector<long>, std::vector<std::size_t>> buckets;
  std::vector<long> key(dim);
  std::vector<long> probe(dim);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) key[k] = static_cast<long>(std::floor(points[i * dim + k] / eps));
    bool far = true;
    long neighbours = 1;
    for (int k = 0; k < dim; ++k) neighbours *= 3;
    for (long m = 0; m < neighbours && far; ++m) {
      long code = m;
      for (int k = 0; k < dim; ++k) {
        probe[k] = key[k] + code % 3 - 1;
        code /= 3;
      }
      const auto it = buckets.find(probe);
      if (it == buckets.end()) continue;
      for (std::size_t j : it->second) {
        if (dist(i, j) <= eps) {
          far = false;
          break;
        }
      }
    }
    if (far) {
      buckets[key].push_back(i);
      ++count;
    }
  }
  return count;
}

std::vector<double> sup_ball_grid(int n, double r, int per_axis) {
  if (n < 1 || per_axis < 2) throw std::invalid_argument("sup_ball_grid: need n >= 1 and per_axis >= 2");
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(per_axis);
  std::vector<double> out;
  out.reserve(total * n);
  const double h = 2.0 * r / (per_axis - 1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t code = idx;
    for (int k = 0; k < n; ++k) {
      out.push_back(-r + h * static_cast<double>(code % per_axis));
      code /= per_axis;
    }
  }
  return out;
}

MonotonicityResult check_map_monotonicity(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                          const std::vector<std::size_t>& map, double eps, double delta) {
  if (map.size() != X.size()) throw std::invalid_argument("check_map_monotonicity: map must be total on X");
  for (std::size_t y : map) {
    if (y >= Y.size()) throw std::invalid_argument("check_map_monotonicity: map leaves Y");
  }
  MonotonicityResult out;
  out.hypothesis = true;
  for (std::size_t i = 0; i < X.size() && out.hypothesis; ++i) {
    for (std::size_t j = i + 1; j < X.size(); ++j) {
      if (X(i, j) > eps && !(Y(map[i], map[j]) > delta)) {
        out.hypothesis = false;
        out.violating_i = i;
        out.violating_j = j;
        break;
      }
    }
  }
  out.greedy_x = greedy_separated(X, eps).size();
  if (Y.size() <= 15) {
    out.exact_y = exact_separated_count(Y, delta);
    if (out.hypothesis) out.conclusion = out.greedy_x <= *out.exact_y;
  }
  return out;
}

nlohmann::json to_json(const CountReport& r) {
  return {{"eps", r.eps},
          {"sep_count", r.sep_count},
          {"cover_count", r.cover_count},
          {"window", r.window},
          {"window_area", r.window_area},
          {"sample_size", r.sample_size},
          {"seed", r.seed},
          {"entropy", r.entropy}};
}

std::string count_reports_csv(const std::vector<CountReport>& reports) {
  std::ostringstream out;
  out.precision(17);
  out << "eps,window_area,sep,cover,S\n";
  for (const CountReport& r : reports) {
    out << r.eps << ',' << r.window_area << ',' << r.sep_count << ',' << r.cover_count << ',' << r.entropy << '\n';
  }
  return out.str();
}

MmdimEstimate mmdim_slope(const std::map<double, double>& entropy_by_eps) {
  if (entropy_by_eps.size() < 3) throw std::invalid_argument("mmdim_slope: need at least 3 scales");
  const double lo = entropy_by_eps.begin()->first;
  const double hi = entropy_by_eps.rbegin()->first;
  if (!(lo > 0.0) || hi >= 1.0) throw std::invalid_argument("mmdim_slope: scales must lie in (0, 1)");
  if (hi / lo < 10.0 * (1.0 - 1e-12)) throw std::invalid_argument("mmdim_slope: scales must span a decade");
  MmdimEstimate out;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(entropy_by_eps.size());
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [eps, S] : entropy_by_eps) {
    const double x = std::abs(std::log(eps));
    sx += x;
    sy += S;
    sxx += x * x;
    sxy += x * S;
    out.ratios[eps] = S / x;
    out.min_ratio = std::min(out.min_ratio, S / x);
  }
  const double den = n * sxx - sx * sx;
  out.slope = (n * sxy - sx * sy) / den;
  out.intercept = (sy - out.slope * sx) / n;
  return out;
}

}  // namespace brodylab
