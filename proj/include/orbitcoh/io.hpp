#pragma once

// Problem input, pipeline orchestration and report rendering.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orbitcoh/cohomology.hpp"
#include "orbitcoh/errors.hpp"
#include "orbitcoh/parabolic.hpp"
#include "orbitcoh/realform.hpp"

namespace orbitcoh {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "1.0.0";

struct RealFormSpec {
  enum class Kind { named, satake, sigma };
  Kind kind = Kind::named;
  std::string family;
  std::vector<int> params;
  NodeSet black;
  std::map<std::size_t, std::size_t> arrows;
  /// Row-major: entry (i, j) is the coefficient of alpha_i in sigma(alpha_j).
  IntMatrix sigma_rows;
};

struct ProblemSpec {
  DynkinDiagram diagram;
  RealFormSpec real_form;
  NodeSet crossed;
  BundleSpec bundle;
  int p_max = 3;
  int q_max = 3;
  TableMode mode = TableMode::fiber;
  /// Normalized copy of the input document, echoed into reports.
  nlohmann::json source;
};

/// All validation errors found in an input document.
class InputErrors : public InvalidInput {
 public:
  explicit InputErrors(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Fields: schema_version, diagram, real_form, crossed, bundle, p_max, q_max,
/// mode. Throws InputErrors listing every problem found.
ProblemSpec parse_input(const nlohmann::json& doc);
ProblemSpec parse_input_text(std::string_view text);

/// Built-in configurations: "su13-flag", "split-borel", "compact-borel".
nlohmann::json builtin_example(std::string_view name);
std::vector<std::string> builtin_example_names();

/// Re-applies overrides (as given on the command line) to a parsed spec.
void apply_overrides(ProblemSpec& spec, std::optional<TableMode> mode, std::optional<int> p_max,
                     std::optional<int> q_max);

struct Report {
  nlohmann::json input;
  std::vector<std::string> node_labels;
  std::string real_form;
  /// Row-major sigma matrix.
  IntMatrix sigma;
  int fixed_rank = 0;
  OrbitClassification classification;
  std::optional<FibrationData> fibration;
  std::vector<std::uint64_t> fiber_coset_lengths;
  std::optional<CohomologyTable> minimal_table;
  std::optional<CohomologyTable> open_table;
  std::optional<RestrictionReport> restriction;
  std::vector<std::string> warnings;
  std::vector<std::string> annotations;
  /// 0 success, 3 unsupported (generic orbit).
  int exit_status = 0;

  bool operator==(const Report&) const = default;
};

/// Classification always; fibration and tables only for totally real or
/// Levi-flat orbits. `classify_only` skips the fibration and tables.
Report run_pipeline(const ProblemSpec& spec, bool classify_only = false);

enum class Format { table, machine };

std::string render_report(const Report& report, Format format);

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& doc);

}  // namespace orbitcoh
