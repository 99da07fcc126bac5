#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qpiston::sweep {

using ParamValue = std::variant<double, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

struct Axis {
  std::string name;
  std::vector<ParamValue> values;
};

struct SweepSpec {
  std::string name;    ///< preset name or empty
  std::string target;
  std::vector<Axis> axes;
  ParamMap fixed;
  std::string output;  ///< file path, "-" or empty for stdout
  std::uint64_t seed = 0;
  int threads = 1;     ///< 0 = hardware concurrency; never changes the rows

  /// Throws InvalidParameter: unknown target, empty axes or grids, names
  /// not accepted by the target, or a name both swept and fixed.
  void validate() const;
  std::size_t size() const;
};

struct SweepRow {
  std::vector<ParamValue> point;             ///< one entry per axis
  std::string status;                        ///< "ok", "divergent-moment" or an error kind
  std::vector<std::optional<double>> values; ///< one entry per output column
  std::string message;                       ///< error text, not written to CSV
};

struct SweepTable {
  std::vector<std::string> axis_columns;
  std::vector<std::string> output_columns;
  std::vector<SweepRow> rows;
};

struct PointResult {
  std::string status;
  std::vector<std::optional<double>> values;
  std::string message;  ///< error text when status is not ok
};

const std::vector<std::string>& target_names();
/// Accepted parameter names (state: state, alpha0, epsilon, nbar, n, r, tau).
const std::vector<std::string>& parameter_names(const std::string& target);
const std::vector<std::string>& output_columns(const std::string& target);

/// Evaluates one grid point. Library errors become a status; outputs are
/// empty unless the status is ok or divergent-moment. `seed` feeds the
/// Monte Carlo and Langevin targets only.
PointResult evaluate(const std::string& target, const ParamMap& params, std::uint64_t seed = 0);

/// Rows in lexicographic grid order (first axis slowest). Grid point i of a
/// stochastic target uses rng::derive_seed(spec.seed, i).
SweepTable run_sweep(const SweepSpec& spec);

/// `#` metadata lines, header, one line per row; floats as %.12g.
void write_csv(std::ostream& out, const SweepSpec& spec, const SweepTable& table);

std::string format_value(const ParamValue& v);

/// Named figure datasets: fig2 ... fig12.
const std::vector<std::string>& figure_names();
SweepSpec figure_preset(const std::string& name);

std::vector<ParamValue> linspace(double lo, double hi, int points);

}  // namespace qpiston::sweep
