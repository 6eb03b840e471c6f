// orbitcoh: minimal orbits in flag manifolds and their cohomology tables.
//
//   orbitcoh classify --input FILE
//   orbitcoh cohomology --input FILE [--mode fiber|graded] [--pmax N] [--qmax N] [--format table|machine]
//   orbitcoh example su13-flag
//
// Exit codes: 0 success, 2 invalid input, 3 unsupported, 4 internal invariant failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "orbitcoh/io.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw orbitcoh::InvalidInput("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal orbits in complex flag manifolds: classification, Levi foliation and cohomology tables"};
  app.require_subcommand(1);

  std::string input;
  std::string example;
  std::string format = "table";
  std::optional<std::string> mode;
  std::optional<int> pmax;
  std::optional<int> qmax;

  auto* classify = app.add_subcommand("classify", "Classify the minimal orbit (totally real / Levi-flat / generic)");
  classify->add_option("--input,-i", input, "Problem file (JSON)")->required();
  classify->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "machine"}));

  auto* cohomology = app.add_subcommand("cohomology", "Run the full pipeline and print cohomology tables");
  auto* examples = app.add_subcommand("example", "Run a built-in configuration");
  cohomology->add_option("--input,-i", input, "Problem file (JSON)")->required();
  examples->add_option("name", example, "su13-flag, split-borel or compact-borel")->required();
  for (auto* sub : {cohomology, examples}) {
    sub->add_option("--mode", mode, "Table mode")->check(CLI::IsMember({"fiber", "graded"}));
    sub->add_option("--pmax", pmax, "Largest form degree p");
    sub->add_option("--qmax", qmax, "Largest cohomological degree q");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "machine"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    orbitcoh::ProblemSpec spec = examples->parsed() ? orbitcoh::parse_input(orbitcoh::builtin_example(example))
                                                    : orbitcoh::parse_input_text(read_file(input));
    std::optional<orbitcoh::TableMode> table_mode;
    if (mode) table_mode = orbitcoh::table_mode_from_string(*mode);
    orbitcoh::apply_overrides(spec, table_mode, pmax, qmax);

    const auto report = orbitcoh::run_pipeline(spec, classify->parsed());
    const auto fmt = format == "machine" ? orbitcoh::Format::machine : orbitcoh::Format::table;
    std::cout << orbitcoh::render_report(report, fmt);
    return report.exit_status;
  } catch (const orbitcoh::InputErrors& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
    return kExitInvalid;
  } catch (const orbitcoh::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const orbitcoh::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const orbitcoh::InvariantFailure& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return kExitInternal;
  }
}
