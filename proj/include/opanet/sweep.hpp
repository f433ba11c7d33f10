#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opanet::sweep {

// One linearly spaced axis: steps points from min to max inclusive.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
};

// One value of a series parameter. Numeric series carry the number and a
// display label; text series (fiber presets) carry only the label.
struct SeriesValue {
  std::string label;
  std::optional<double> number;
};

struct SweepSeries {
  std::string name;
  std::vector<SeriesValue> values;
};

// Everything needed to regenerate one curve family: a target quantity, the
// swept axis, an optional series parameter, and fixed parameters by name.
struct SweepSpec {
  std::string target;
  SweepAxis swept;
  std::optional<SweepSeries> series;
  std::map<std::string, double> fixed;
  std::map<std::string, std::string> fixed_text;
  std::string preset;  // preset id when built by figure_preset, else empty

  // Structural checks: known target, steps >= 2, min < max, series disjoint
  // from the swept axis, series values homogeneous. Required parameters are
  // checked at evaluation time so the error can name the missing one;
  // access-sharing parameters fall back to the PonConfig defaults instead.
  void validate() const;
};

// Result table. Rows are ordered series-major: for each series value in
// declaration order, the swept axis ascending. When the series is text
// valued, labels carries one label per row and the numeric cells start at
// the swept axis; numeric series appear as the first numeric column.
struct CurveSet {
  SweepSpec spec;
  std::vector<std::string> columns;
  bool text_series = false;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::string fiber_used;  // fiber preset name when one was involved
};

std::vector<std::string> target_names();

// Evaluates the target over the grid. threads = 0 picks a worker count
// automatically; any thread count produces identical rows. The first failing
// grid point aborts the sweep with its coordinates in the message, and a
// non-finite output is treated as a failure.
CurveSet run_sweep(const SweepSpec& spec, int threads = 0);

// Built-in curve families, ids "fig2" through "fig18".
SweepSpec figure_preset(const std::string& id);
std::vector<std::string> preset_names();

}  // namespace opanet::sweep
