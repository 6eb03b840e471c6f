#include <algorithm>
#include <regex>

#include "orbitcoh/io.hpp"

namespace orbitcoh {

using nlohmann::json;

namespace {

constexpr int kMaxTableBound = 32;

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::size_t node_ref(const DynkinDiagram& d, const json& ref, const std::string& field) {
  if (ref.is_number_integer()) {
    const auto k = ref.get<long long>();
    if (k < 1 || static_cast<std::size_t>(k) > d.rank())
      throw InvalidInput(field + ": node index " + std::to_string(k) + " out of range 1.." + std::to_string(d.rank()));
    return static_cast<std::size_t>(k - 1);
  }
  if (ref.is_string()) {
    const auto label = ref.get<std::string>();
    if (auto idx = d.index_of(label)) return *idx;
    throw InvalidInput(field + ": unknown node '" + label + "'");
  }
  throw InvalidInput(field + ": node references must be 1-based integers or labels");
}

DynkinDiagram parse_diagram(const json& j) {
  if (j.is_string()) return DynkinDiagram::from_type(j.get<std::string>());
  if (!j.is_object() || !j.contains("nodes"))
    throw InvalidInput("diagram: expected a type string such as \"A3\" or an object {nodes, edges}");
  std::vector<std::string> nodes;
  for (const auto& n : j.at("nodes")) {
    if (!n.is_string()) throw InvalidInput("diagram.nodes: labels must be strings");
    nodes.push_back(n.get<std::string>());
  }
  const DynkinDiagram bare(nodes, {});
  std::vector<DynkinEdge> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3)
        throw InvalidInput("diagram.edges: each edge is [from, to] or [long, short, multiplicity]");
      const int mult = e.size() == 3 ? e[2].get<int>() : 1;
      edges.push_back({node_ref(bare, e[0], "diagram.edges"), node_ref(bare, e[1], "diagram.edges"), mult});
    }
  }
  return DynkinDiagram(std::move(nodes), std::move(edges));
}

RealFormSpec parse_named(const std::string& name, const json* params) {
  RealFormSpec rf;
  rf.kind = RealFormSpec::Kind::named;
  static const std::regex su_re(R"(^su\(\s*(\d+)\s*,\s*(\d+)\s*\)$)");
  static const std::regex sl_re(R"(^sl\(\s*(\d+)\s*,\s*(R|r|real)\s*\)$)");
  std::smatch m;
  if (std::regex_match(name, m, su_re)) {
    rf.family = "su";
    rf.params = {std::stoi(m[1]), std::stoi(m[2])};
  } else if (std::regex_match(name, m, sl_re)) {
    rf.family = "sl_R";
    rf.params = {std::stoi(m[1])};
  } else {
    rf.family = name == "sl" ? "sl_R" : name;
    if (params) rf.params = params->get<std::vector<int>>();
  }
  return rf;
}

RealFormSpec parse_real_form(const json& j, const DynkinDiagram* d) {
  if (j.is_string()) return parse_named(j.get<std::string>(), nullptr);
  if (!j.is_object()) throw InvalidInput("real_form: expected a name or an object");
  if (j.contains("name")) return parse_named(j.at("name").get<std::string>(), j.contains("params") ? &j.at("params") : nullptr);
  RealFormSpec rf;
  if (j.contains("satake")) {
    if (!d) throw InvalidInput("real_form.satake: needs a valid diagram");
    rf.kind = RealFormSpec::Kind::satake;
    const auto& s = j.at("satake");
    if (s.contains("black"))
      for (const auto& b : s.at("black")) rf.black.set(node_ref(*d, b, "real_form.satake.black"));
    if (s.contains("arrows"))
      for (const auto& a : s.at("arrows")) {
        if (!a.is_array() || a.size() != 2) throw InvalidInput("real_form.satake.arrows: each arrow is [node, node]");
        const auto x = node_ref(*d, a[0], "real_form.satake.arrows");
        const auto y = node_ref(*d, a[1], "real_form.satake.arrows");
        rf.arrows[x] = y;
        rf.arrows[y] = x;
      }
    return rf;
  }
  if (j.contains("sigma")) {
    rf.kind = RealFormSpec::Kind::sigma;
    rf.sigma_rows = j.at("sigma").get<IntMatrix>();
    return rf;
  }
  throw InvalidInput("real_form: expected one of name, satake, sigma");
}

// Checks the real form against the diagram, building sigma once.
void check_real_form(const RealFormSpec& rf, const RootSystem& sys) {
  switch (rf.kind) {
    case RealFormSpec::Kind::named:
      sigma_from_satake(named_form(sys.diagram(), rf.family, rf.params), sys);
      break;
    case RealFormSpec::Kind::satake: {
      SatakeDiagram s{sys.diagram(), rf.black, rf.arrows, "", std::nullopt};
      sigma_from_satake(s, sys);
      break;
    }
    case RealFormSpec::Kind::sigma: {
      const auto r = sys.rank();
      if (rf.sigma_rows.size() != r ||
          std::any_of(rf.sigma_rows.begin(), rf.sigma_rows.end(), [&](const IntVec& row) { return row.size() != r; }))
        throw InvalidInput("real_form.sigma: matrix must be " + std::to_string(r) + "x" + std::to_string(r) +
                           " to match the diagram rank");
      IntMatrix cols(r, IntVec(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) cols[j][i] = rf.sigma_rows[i][j];
      const auto rep = validate_involution(RootInvolution(cols), sys);
      if (!rep.ok) throw InvalidInput("real_form.sigma: failed involution check: " + rep.failure);
      break;
    }
  }
}

BundleSpec parse_bundle(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "trivial") return BundleSpec::trivial();
    throw InvalidInput("bundle: unknown bundle '" + j.get<std::string>() + "'");
  }
  if (j.is_object() && j.contains("line")) return BundleSpec::line(j.at("line").get<IntVec>());
  if (j.is_object() && j.contains("fiber_table")) {
    auto t = j.at("fiber_table").get<std::vector<std::vector<long long>>>();
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& row : t) {
      std::vector<std::uint64_t> r;
      for (auto v : row) {
        if (v < 0) throw InvalidInput("bundle.fiber_table: dimensions must be non-negative");
        r.push_back(static_cast<std::uint64_t>(v));
      }
      out.push_back(std::move(r));
    }
    return BundleSpec::table(std::move(out));
  }
  throw InvalidInput("bundle: expected \"trivial\", {\"line\": [...]} or {\"fiber_table\": [[...]]}");
}

json bundle_to_json(const BundleSpec& b) {
  switch (b.kind) {
    case BundleSpec::Kind::trivial:
      return "trivial";
    case BundleSpec::Kind::line:
      return json{{"line", b.weight}};
    case BundleSpec::Kind::fiber_table:
      return json{{"fiber_table", b.fiber_table}};
  }
  return "trivial";
}

int parse_bound(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw InvalidInput(field + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < 0 || v > kMaxTableBound)
    throw InvalidInput(field + ": must be between 0 and " + std::to_string(kMaxTableBound));
  return static_cast<int>(v);
}

}  // namespace

InputErrors::InputErrors(std::vector<std::string> errors)
    : InvalidInput("invalid input: " + join(errors, "; ")), errors_(std::move(errors)) {}

ProblemSpec parse_input(const json& doc) {
  std::vector<std::string> errors;
  ProblemSpec spec;
  if (!doc.is_object()) throw InputErrors({"document: expected a JSON object"});

  auto attempt = [&](auto&& fn) {
    try {
      fn();
      return true;
    } catch (const json::exception& e) {
      errors.push_back(std::string("malformed value: ") + e.what());
    } catch (const InvalidInput& e) {
      errors.push_back(e.what());
    }
    return false;
  };

  static const std::vector<std::string> known = {"schema_version", "diagram", "real_form", "crossed",
                                                 "bundle",         "p_max",   "q_max",     "mode"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) errors.push_back("unknown field '" + key + "'");

  attempt([&] {
    if (!doc.contains("schema_version")) throw InvalidInput("schema_version: missing");
    if (doc.at("schema_version") != kSchemaVersion)
      throw InvalidInput("schema_version: expected " + std::to_string(kSchemaVersion));
  });

  std::optional<RootSystem> sys;
  if (!doc.contains("diagram")) {
    errors.push_back("diagram: missing");
  } else {
    attempt([&] {
      spec.diagram = parse_diagram(doc.at("diagram"));
      sys.emplace(spec.diagram);
    });
  }

  if (!doc.contains("real_form")) {
    errors.push_back("real_form: missing");
  } else {
    attempt([&] {
      spec.real_form = parse_real_form(doc.at("real_form"), sys ? &spec.diagram : nullptr);
      if (sys) check_real_form(spec.real_form, *sys);
    });
  }

  std::vector<std::string> crossed_labels;
  if (!doc.contains("crossed")) {
    errors.push_back("crossed: missing");
  } else if (sys) {
    attempt([&] {
      const auto& c = doc.at("crossed");
      if (c.is_string() && c.get<std::string>() == "all") {
        for (std::size_t i = 0; i < sys->rank(); ++i) spec.crossed.set(i);
      } else {
        if (!c.is_array()) throw InvalidInput("crossed: expected a list of nodes or \"all\"");
        for (const auto& n : c) spec.crossed.set(node_ref(spec.diagram, n, "crossed"));
      }
      for (std::size_t i = 0; i < sys->rank(); ++i)
        if (spec.crossed.test(i)) crossed_labels.push_back(spec.diagram.nodes()[i]);
    });
  }

  attempt([&] { spec.bundle = doc.contains("bundle") ? parse_bundle(doc.at("bundle")) : BundleSpec::trivial(); });
  attempt([&] {
    if (doc.contains("p_max")) spec.p_max = parse_bound(doc.at("p_max"), "p_max");
  });
  attempt([&] {
    if (doc.contains("q_max")) spec.q_max = parse_bound(doc.at("q_max"), "q_max");
  });
  attempt([&] {
    if (!doc.contains("mode")) return;
    const auto m = table_mode_from_string(doc.at("mode").get<std::string>());
    if (!m) throw InvalidInput("mode: expected \"fiber\" or \"graded\"");
    spec.mode = *m;
  });

  if (!errors.empty()) throw InputErrors(std::move(errors));

  spec.source = json{{"schema_version", kSchemaVersion},
                     {"diagram", doc.at("diagram")},
                     {"real_form", doc.at("real_form")},
                     {"crossed", crossed_labels},
                     {"bundle", bundle_to_json(spec.bundle)},
                     {"p_max", spec.p_max},
                     {"q_max", spec.q_max},
                     {"mode", to_string(spec.mode)}};
  return spec;
}

ProblemSpec parse_input_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputErrors({std::string("document is not valid JSON: ") + e.what()});
  }
  return parse_input(doc);
}

void apply_overrides(ProblemSpec& spec, std::optional<TableMode> mode, std::optional<int> p_max,
                     std::optional<int> q_max) {
  if (mode) spec.mode = *mode;
  if (p_max) spec.p_max = parse_bound(*p_max, "--pmax");
  if (q_max) spec.q_max = parse_bound(*q_max, "--qmax");
  spec.source["mode"] = to_string(spec.mode);
  spec.source["p_max"] = spec.p_max;
  spec.source["q_max"] = spec.q_max;
}

json builtin_example(std::string_view name) {
  if (name == "su13-flag")
    return json{{"schema_version", kSchemaVersion}, {"diagram", "A3"}, {"real_form", "su(1,3)"},
                {"crossed", {1, 2, 3}},             {"bundle", "trivial"}, {"p_max", 3},
                {"q_max", 3},                       {"mode", "fiber"}};
  if (name == "split-borel")
    return json{{"schema_version", kSchemaVersion}, {"diagram", "A3"}, {"real_form", "split"},
                {"crossed", {1, 2, 3}},             {"bundle", "trivial"}, {"p_max", 3},
                {"q_max", 3},                       {"mode", "fiber"}};
  if (name == "compact-borel")
    return json{{"schema_version", kSchemaVersion}, {"diagram", "A3"}, {"real_form", "compact"},
                {"crossed", {1, 2, 3}},             {"bundle", "trivial"}, {"p_max", 6},
                {"q_max", 6},                       {"mode", "fiber"}};
  throw InvalidInput("example: unknown example '" + std::string(name) + "' (known: " +
                     join(builtin_example_names(), ", ") + ")");
}

std::vector<std::string> builtin_example_names() { return {"su13-flag", "split-borel", "compact-borel"}; }

}  // namespace orbitcoh
