#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/acquisition.hpp"
#include "core/format.hpp"
#include "core/noisy.hpp"

namespace chainstore {

template <typename S>
struct RegionRow {
  S p0;
  S pi;
  Regime regime;
  S qA;
  S ex_ante_entry_B;
  S fight_prob;
};

/// Classification and light statistics for one grid point, extended by
/// continuity to the degenerate priors p0 in {0, 1} so that full-unit-square
/// grids classify every cell (the solvers themselves reject degenerate
/// priors).
template <typename S>
RegionRow<S> region_point(const S& p0, const S& pi, const PayoffsT<S>& pay, const Cmp<S>& cmp,
                          double boundary_selection = 0.5);

/// One row per grid point of the (p0, pi) unit square, lexicographic in
/// (p0, pi). Grid nodes are i/(n-1), exact in rational mode.
template <typename S>
std::vector<RegionRow<S>> region_sweep(const PayoffsT<S>& pay, int p0_count, int pi_count,
                                       const Cmp<S>& cmp, double boundary_selection = 0.5);

CsvTable region_table(const std::vector<RegionRow<double>>& rows);
CsvTable region_table(const std::vector<RegionRow<Rational>>& rows);

enum class SweepAxis { Pi, P0, EpsF, EpsA, K };

SweepAxis parse_axis(const std::string& name);
const char* to_string(SweepAxis axis);

struct SweepPointInputs {
  double p0;
  double pi;
  std::optional<Noise> noise;
  std::optional<double> k;
};

struct SweepRow {
  double value;
  std::string regime;
  double qA = 0.0;
  double lambda_A = 0.0;
  double lambda_F = 0.0;
  double delta_lambda = 0.0;
  double ex_ante_entry_B = 0.0;
  double fight_prob = 0.0;
  double kstar = 0.0;
  double pi_eff = 0.0;
  std::string acquires;  // "1" / "0" / "none"; empty off the k axis
};

struct SweepResult {
  SweepAxis axis;
  std::vector<SweepRow> rows;
  /// Weak-monotonicity verdict per numeric column:
  /// increasing | decreasing | constant | none.
  std::map<std::string, std::string> monotonicity;

  CsvTable table() const;
};

/// 1-D comparative static along one axis, all other inputs held at `base`.
SweepResult sweep_1d(SweepAxis axis, double lo, double hi, int count, const SweepPointInputs& base,
                     const Payoffs& pay, const Cmp<double>& cmp, double boundary_selection = 0.5);

}  // namespace chainstore
