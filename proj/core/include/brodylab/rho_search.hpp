#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brodylab/curve.hpp"

namespace brodylab {

/// Parameter box and constructor of a doubly periodic curve family.
///
/// elliptic-n1: [1 + c1 wp + c2 wp' : d1 wp + d2 wp'] over the lattice
/// scale (Z + i aspect Z); parameters (aspect, scale, c1, c2, d1, d2) with
/// complex coefficients split into real and imaginary parts (10 reals).
/// elliptic-n2 appends a third coordinate e0 + e1 wp + e2 wp' (16 reals);
/// e = 0 recovers elliptic-n1 through the totally geodesic CP^1 in CP^2.
struct RhoFamily {
  std::string id;
  int N = 1;
  std::vector<std::string> names;
  std::vector<std::pair<double, double>> box;
  std::vector<double> start;

  HoloCurve make(const std::vector<double>& params) const;
  PlaneLattice lattice(const std::vector<double>& params) const;
  bool contains(const std::vector<double>& params) const;
};

/// Throws std::invalid_argument for unknown ids.
RhoFamily rho_family(const std::string& id);
/// N=1 parameters padded with zeros for the N=2 family.
std::vector<double> embed_n1_in_n2(const std::vector<double>& params);

struct RhoResolution {
  int quadrature_grid = 64;  ///< points per cell axis (Richardson doubles it)
  int sup_grid = 64;         ///< sup grid points across the cell's bounding box
  int refine_passes = 2;
  RhoResolution doubled() const { return {2 * quadrature_grid, 2 * sup_grid, refine_passes}; }
};

struct RhoCandidate {
  std::string family;
  std::vector<double> params;
  HoloCurve curve;
  PlaneLattice lattice;
  double rho_raw = 0.0;
  double lipschitz = 0.0;
  double rho_normalized = 0.0;
  RhoResolution resolution;
};

/// rho_raw from the exact (cell) energy density, lipschitz from brody_normalize
/// over one cell. Throws PreconditionError for constant curves and
/// NumericalError when the values are not finite.
RhoCandidate evaluate_candidate(const RhoFamily& family, const std::vector<double>& params,
                                const RhoResolution& resolution = {});

struct RhoSearchOptions {
  int budget = 60;  ///< evaluations per restart
  int restarts = 2;
  std::uint64_t seed = 1;
  RhoResolution resolution;
  /// Restart 0 begins here instead of the family's start point.
  std::optional<std::vector<double>> warm_start;
  double max_delta = 0.01;
};

struct RhoTraceRow {
  int restart = 0;
  int evaluation = 0;
  double rho_normalized = 0.0;
  double best = 0.0;
  std::vector<double> params;
};

struct RhoSearchResult {
  RhoCandidate best;         ///< at search resolution
  RhoCandidate reevaluated;  ///< at doubled resolution
  double delta = 0.0;        ///< relative change under re-evaluation
  double rho_hat = 0.0;      ///< reevaluated.rho_normalized * (1 - |delta|)
  double max_delta = 0.01;
  int N = 1;
  int evaluations = 0;
  std::vector<RhoTraceRow> trace;
};

/// Deterministic coordinate search with halving steps, restart 0 from the
/// start (or warm start) point and further restarts from seeded random points.
/// Each restart's best, plus the start point, is re-evaluated at doubled
/// resolution; the highest certified value whose delta is within max_delta
/// wins. Throws NumericalError("resolution-unstable maximum") if none qualifies.
RhoSearchResult maximize_rho(const RhoFamily& family, const RhoSearchOptions& options = {});

struct LSweepRow {
  double L = 0.0;
  double value = 0.0;
};

/// (1/L^2) max over a translate_grid^2 grid of shifts a (snapped to the
/// quadrature grid) of int_{a+[0,L]^2} |dg|^2 for the normalized curve g.
std::vector<LSweepRow> l_sweep(const RhoCandidate& candidate, const std::vector<double>& L_values,
                               int translate_grid = 4);

/// 2 (N + 1) rho_hat. Throws std::invalid_argument unless 0 <= rho_hat < 1.
double mean_dimension_estimate(int N, double rho_hat);

nlohmann::json to_json(const RhoCandidate& candidate);
nlohmann::json to_json(const RhoSearchResult& result);
std::string trace_csv(const RhoSearchResult& result);

}  // namespace brodylab
