#include <iomanip>
#include <memory>
#include <sstream>

#include "orbitcoh/io.hpp"

namespace orbitcoh {

using nlohmann::json;

namespace {

RootInvolution build_sigma(const RealFormSpec& rf, const RootSystem& sys, std::string& name,
                           std::vector<std::string>& notes) {
  switch (rf.kind) {
    case RealFormSpec::Kind::named: {
      const auto satake = named_form(sys.diagram(), rf.family, rf.params);
      name = satake.name;
      return sigma_from_satake(satake, sys);
    }
    case RealFormSpec::Kind::satake: {
      SatakeDiagram s{sys.diagram(), rf.black, rf.arrows, "", std::nullopt};
      name = "satake";
      notes.push_back("sigma built from user Satake data; no catalog signature was available to check it against");
      return sigma_from_satake(s, sys);
    }
    case RealFormSpec::Kind::sigma: {
      const auto r = sys.rank();
      IntMatrix cols(r, IntVec(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) cols[j][i] = rf.sigma_rows[i][j];
      RootInvolution sigma(std::move(cols));
      const auto rep = validate_involution(sigma, sys);
      if (!rep.ok) throw InvalidInput("real_form.sigma: failed involution check: " + rep.failure);
      name = "sigma";
      notes.push_back("sigma supplied directly; involution, root permutation and form checks passed");
      return sigma;
    }
  }
  throw InvariantFailure("unknown real form kind");
}

std::vector<std::string> node_set_labels(const NodeSet& s, const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (s.test(i)) out.push_back(labels[i]);
  return out;
}

NodeSet node_set_from_labels(const json& j, const std::vector<std::string>& labels) {
  NodeSet s;
  for (const auto& l : j) {
    const auto it = std::find(labels.begin(), labels.end(), l.get<std::string>());
    if (it == labels.end()) throw InvalidInput("report: unknown node label " + l.get<std::string>());
    s.set(static_cast<std::size_t>(it - labels.begin()));
  }
  return s;
}

json diagram_to_json(const DynkinDiagram& d) {
  json edges = json::array();
  for (const auto& e : d.edges()) edges.push_back({d.nodes()[e.from], d.nodes()[e.to], e.multiplicity});
  return json{{"nodes", d.nodes()}, {"edges", edges}};
}

DynkinDiagram diagram_from_json(const json& j) {
  const auto nodes = j.at("nodes").get<std::vector<std::string>>();
  const DynkinDiagram bare(nodes, {});
  std::vector<DynkinEdge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({*bare.index_of(e[0].get<std::string>()), *bare.index_of(e[1].get<std::string>()), e[2].get<int>()});
  return DynkinDiagram(nodes, std::move(edges));
}

json table_to_json(const CohomologyTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries)
    entries.push_back({{"p", e.p}, {"q", e.q}, {"rank", e.rank}, {"structure", e.structure}});
  return json{{"side", t.side == OrbitSide::minimal ? "minimal" : "open"},
              {"mode", to_string(t.mode)},
              {"p_max", t.p_max},
              {"q_max", t.q_max},
              {"entries", entries},
              {"annotations", t.annotations}};
}

CohomologyTable table_from_json(const json& j) {
  CohomologyTable t;
  t.side = j.at("side") == "minimal" ? OrbitSide::minimal : OrbitSide::open;
  t.mode = table_mode_from_string(j.at("mode").get<std::string>()).value();
  t.p_max = j.at("p_max");
  t.q_max = j.at("q_max");
  for (const auto& e : j.at("entries"))
    t.entries.push_back({e.at("p"), e.at("q"), e.at("rank"), e.at("structure")});
  t.annotations = j.at("annotations").get<std::vector<std::string>>();
  return t;
}

std::string braces(const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? "," : "") + labels[k];
  return out + "}";
}

std::string describe_fiber(const FibrationData& fib) {
  if (fib.fiber.diagram.rank() == 0) return "point";
  const RootSystem sys(fib.fiber.diagram);
  std::vector<std::string> factors;
  for (const auto& t : sys.component_types()) {
    std::size_t ncross = 0;
    for (auto n : t.nodes)
      if (fib.fiber.crossed.test(n)) ++ncross;
    const bool projective = t.letter == 'A' && ncross == 1 &&
                            (fib.fiber.crossed.test(t.nodes.front()) || fib.fiber.crossed.test(t.nodes.back()));
    if (projective) factors.push_back("CP^" + std::to_string(t.rank));
    else if (ncross == t.rank) factors.push_back("full flag manifold of " + t.name());
    else factors.push_back("flag manifold of " + t.name());
  }
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? " × " : "") + factors[k];
  return out;
}

void render_grid(std::ostream& os, const CohomologyTable& t) {
  std::size_t width = 1;
  for (const auto& e : t.entries) width = std::max(width, std::to_string(e.rank).size());
  width = std::max<std::size_t>(width, std::to_string(t.q_max).size()) + 2;
  os << "  " << std::left << std::setw(5) << "p\\q";
  for (int q = 0; q <= t.q_max; ++q) os << std::right << std::setw(static_cast<int>(width)) << q;
  os << "\n";
  for (int p = 0; p <= t.p_max; ++p) {
    os << "  " << std::left << std::setw(5) << p;
    for (int q = 0; q <= t.q_max; ++q) os << std::right << std::setw(static_cast<int>(width)) << t.at(p, q).rank;
    os << "\n";
  }
}

}  // namespace

Report run_pipeline(const ProblemSpec& spec, bool classify_only) {
  Report report;
  report.input = spec.source;
  report.node_labels = spec.diagram.nodes();

  auto sys = std::make_shared<const RootSystem>(spec.diagram);
  std::vector<std::string> sigma_notes;
  const RootInvolution sigma = build_sigma(spec.real_form, *sys, report.real_form, sigma_notes);
  report.sigma = sigma.matrix();
  report.fixed_rank = fixed_sublattice_rank(sigma);
  report.warnings = sigma_notes;

  const CrossedDiagram q(sys, spec.crossed);
  for (auto& w : effectiveness_check(q)) report.warnings.push_back(std::move(w));
  report.classification = classify_orbit(q, sigma);

  switch (report.classification.kind) {
    case OrbitKind::totally_real:
      report.annotations.push_back(
          "M is totally real: conj(q) = q, so X is Stein, M' = M, X' = X and the fiber F is a point");
      report.annotations.push_back(
          "O_M(M) = C^∞(M) and restrictions of holomorphic functions on X are dense in it");
      break;
    case OrbitKind::levi_flat:
      report.annotations.push_back(
          "M is Levi-flat: q' = q + conj(q) is a parabolic subalgebra; the Levi foliation M → M', X → X' has "
          "compact fiber F = Q'/Q over a totally real M' and a Stein X'");
      break;
    case OrbitKind::generic: {
      const auto& w = *report.classification.witness;
      report.annotations.push_back("M is neither totally real nor Levi-flat: " + format_root(w.first) + " + " +
                                   format_root(w.second) + " is a root outside R(q) ∪ R(conj q)");
      if (!classify_only) {
        report.annotations.push_back(
            "fundamental reduction and cohomology tables are only available for Levi-flat or totally real orbits");
        report.exit_status = 3;
      }
      return report;
    }
  }
  if (classify_only) return report;

  FibrationData fib = fundamental_reduction(q, sigma);
  for (const auto& n : fib.notes) report.annotations.push_back(n);
  report.fiber_coset_lengths = minimal_coset_lengths(fib.fiber);
  auto tm = minimal_orbit_table(fib, spec.bundle, spec.p_max, spec.q_max, spec.mode);
  auto tx = open_orbit_table(fib, spec.bundle, spec.p_max, spec.q_max, spec.mode);
  auto rr = restriction_report(tm, tx, fib);
  if (!rr.ranks_agree) throw InvariantFailure("restriction: minimal-orbit and open-orbit ranks disagree");
  report.fibration = std::move(fib);
  report.minimal_table = std::move(tm);
  report.open_table = std::move(tx);
  report.restriction = std::move(rr);
  return report;
}

json report_to_json(const Report& r) {
  const auto& labels = r.node_labels;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["engine"] = {{"name", "orbitcoh"}, {"version", kEngineVersion}};
  j["input"] = r.input;
  j["node_labels"] = labels;
  j["real_form"] = {{"name", r.real_form}, {"sigma", r.sigma}, {"fixed_rank", r.fixed_rank}};
  json cls = {{"kind", to_string(r.classification.kind)}, {"witness", nullptr}};
  if (r.classification.witness) cls["witness"] = {r.classification.witness->first, r.classification.witness->second};
  j["classification"] = cls;

  if (r.fibration) {
    const auto& f = *r.fibration;
    std::vector<std::string> fiber_node_labels;
    for (auto i : f.fiber_nodes) fiber_node_labels.push_back(labels[i]);
    j["fibration"] = {{"q_prime_crossed", node_set_labels(f.q_prime_crossed, labels)},
                      {"base_dim", f.base_dim},
                      {"fiber_dim", f.fiber_dim},
                      {"totally_real", f.totally_real},
                      {"fiber", {{"diagram", diagram_to_json(f.fiber.diagram)},
                                 {"crossed", node_set_labels(f.fiber.crossed, f.fiber.diagram.nodes())},
                                 {"nodes_in_g", fiber_node_labels},
                                 {"description", describe_fiber(f)}}},
                      {"coset_lengths", r.fiber_coset_lengths},
                      {"notes", f.notes}};
  } else {
    j["fibration"] = nullptr;
  }
  j["tables"] = {{"minimal_orbit", r.minimal_table ? table_to_json(*r.minimal_table) : json(nullptr)},
                 {"open_orbit", r.open_table ? table_to_json(*r.open_table) : json(nullptr)}};
  if (r.restriction) {
    const auto& rr = *r.restriction;
    j["restriction"] = {{"ranks_agree", rr.ranks_agree},
                        {"base_dim", rr.base_dim},
                        {"dimension_identity", rr.dimension_identity},
                        {"identities", rr.identities},
                        {"annotations", rr.annotations}};
  } else {
    j["restriction"] = nullptr;
  }
  j["warnings"] = r.warnings;
  j["annotations"] = r.annotations;
  j["exit_status"] = r.exit_status;
  return j;
}

namespace {

Report report_from_json_unchecked(const json& j) {
  if (j.at("schema_version") != kSchemaVersion) throw InvalidInput("report: unsupported schema_version");
  Report r;
  r.input = j.at("input");
  r.node_labels = j.at("node_labels").get<std::vector<std::string>>();
  r.real_form = j.at("real_form").at("name");
  r.sigma = j.at("real_form").at("sigma").get<IntMatrix>();
  r.fixed_rank = j.at("real_form").at("fixed_rank");
  const auto kind = orbit_kind_from_string(j.at("classification").at("kind").get<std::string>());
  if (!kind) throw InvalidInput("report: unknown classification kind");
  r.classification.kind = *kind;
  if (const auto& w = j.at("classification").at("witness"); !w.is_null())
    r.classification.witness = std::make_pair(w[0].get<IntVec>(), w[1].get<IntVec>());

  if (const auto& f = j.at("fibration"); !f.is_null()) {
    FibrationData fib;
    fib.q_prime_crossed = node_set_from_labels(f.at("q_prime_crossed"), r.node_labels);
    fib.base_dim = f.at("base_dim");
    fib.fiber_dim = f.at("fiber_dim");
    fib.totally_real = f.at("totally_real");
    fib.fiber.diagram = diagram_from_json(f.at("fiber").at("diagram"));
    fib.fiber.crossed = node_set_from_labels(f.at("fiber").at("crossed"), fib.fiber.diagram.nodes());
    for (const auto& l : f.at("fiber").at("nodes_in_g")) {
      const auto it = std::find(r.node_labels.begin(), r.node_labels.end(), l.get<std::string>());
      fib.fiber_nodes.push_back(static_cast<std::size_t>(it - r.node_labels.begin()));
    }
    fib.notes = f.at("notes").get<std::vector<std::string>>();
    r.fiber_coset_lengths = f.at("coset_lengths").get<std::vector<std::uint64_t>>();
    r.fibration = std::move(fib);
  }
  const auto& tables = j.at("tables");
  if (!tables.at("minimal_orbit").is_null()) r.minimal_table = table_from_json(tables.at("minimal_orbit"));
  if (!tables.at("open_orbit").is_null()) r.open_table = table_from_json(tables.at("open_orbit"));
  if (const auto& rr = j.at("restriction"); !rr.is_null()) {
    RestrictionReport rep;
    rep.ranks_agree = rr.at("ranks_agree");
    rep.base_dim = rr.at("base_dim");
    rep.dimension_identity = rr.at("dimension_identity");
    rep.identities = rr.at("identities").get<std::vector<std::string>>();
    rep.annotations = rr.at("annotations").get<std::vector<std::string>>();
    r.restriction = std::move(rep);
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.annotations = j.at("annotations").get<std::vector<std::string>>();
  r.exit_status = j.at("exit_status");
  return r;
}

}  // namespace

Report report_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("report: expected a JSON object");
  try {
    return report_from_json_unchecked(j);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("report: malformed document: ") + e.what());
  }
}

std::string render_report(const Report& r, Format format) {
  if (format == Format::machine) return report_to_json(r).dump(2) + "\n";

  std::ostringstream os;
  const auto& labels = r.node_labels;
  os << "orbitcoh " << kEngineVersion << "\n";
  os << "input: diagram " << r.input.value("diagram", json()).dump() << ", real form " << r.real_form
     << ", q crossed " << braces(r.input.value("crossed", std::vector<std::string>{})) << ", bundle "
     << r.input.value("bundle", json()).dump() << ", mode " << r.input.value("mode", std::string("fiber")) << "\n";
  os << "sigma:";
  for (std::size_t j = 0; j < labels.size(); ++j) {
    IntVec col(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) col[i] = r.sigma[i][j];
    IntVec e(labels.size(), 0);
    e[j] = 1;
    os << (j ? ", " : " ") << format_root(e) << " -> " << format_root(col);
  }
  os << "  (fixed sublattice rank " << r.fixed_rank << ")\n";
  os << "classification: " << to_string(r.classification.kind);
  if (r.classification.witness)
    os << "  (witness: " << format_root(r.classification.witness->first) << " + "
       << format_root(r.classification.witness->second) << ")";
  os << "\n";

  if (r.fibration) {
    const auto& f = *r.fibration;
    std::vector<std::string> fiber_labels;
    for (auto i : f.fiber_nodes) fiber_labels.push_back(labels[i]);
    os << "fundamental reduction:\n";
    os << "  q' crossed: " << braces(node_set_labels(f.q_prime_crossed, labels)) << "\n";
    os << "  base: dim_C X' = dim_R M' = " << f.base_dim << "\n";
    os << "  fiber F: " << describe_fiber(f) << ", nodes " << braces(fiber_labels) << ", crossed "
       << braces(node_set_labels(f.fiber.crossed, f.fiber.diagram.nodes())) << ", dim_C F = " << f.fiber_dim
       << "\n";
    os << "  minimal coset representatives by length:";
    for (auto c : r.fiber_coset_lengths) os << " " << c;
    os << "\n";
  }

  auto table = [&](const char* title, const std::optional<CohomologyTable>& t) {
    if (!t) return;
    os << "\n" << title << "  [" << to_string(t->mode) << " mode; ranks of bundles over the base]\n";
    render_grid(os, *t);
    for (const auto& a : t->annotations) os << "  * " << a << "\n";
  };
  table("H^{p,q}(M, E|_M)", r.minimal_table);
  table("H^{p,q}(X, E)", r.open_table);

  if (r.restriction) {
    const auto& rr = *r.restriction;
    os << "\nrestriction j*: H^{p,q}(X, E) -> H^{p,q}(M, E|_M)\n";
    os << "  " << rr.dimension_identity << "\n";
    os << "  ranks agree entrywise: " << (rr.ranks_agree ? "yes" : "no") << "\n";
    for (const auto& id : rr.identities) os << "  " << id << "\n";
    for (const auto& a : rr.annotations) os << "  * " << a << "\n";
  }
  if (!r.annotations.empty()) {
    os << "\nnotes:\n";
    for (const auto& a : r.annotations) os << "  * " << a << "\n";
  }
  if (!r.warnings.empty()) {
    os << "\nwarnings:\n";
    for (const auto& w : r.warnings) os << "  ! " << w << "\n";
  }
  return os.str();
}

}  // namespace orbitcoh
