#include <doctest.h>

#include "orbitcoh/io.hpp"

using namespace orbitcoh;
using nlohmann::json;

namespace {

json base_doc() {
  return json::parse(R"J({"schema_version": 1, "diagram": "A3", "real_form": "su(1,3)", "crossed": [1, 2, 3]})J");
}

std::vector<std::string> errors_of(const json& doc) {
  try {
    parse_input(doc);
  } catch (const InputErrors& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errs, const std::string& needle) {
  for (const auto& e : errs)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("parse_input: minimal document and defaults") {
  const auto spec = parse_input(base_doc());
  CHECK(spec.diagram == DynkinDiagram::from_type("A3"));
  CHECK(spec.crossed.count() == 3);
  CHECK(spec.p_max == 3);
  CHECK(spec.q_max == 3);
  CHECK(spec.mode == TableMode::fiber);
  CHECK(spec.bundle == BundleSpec::trivial());
  CHECK(spec.real_form.family == "su");
  CHECK(spec.real_form.params == std::vector<int>{1, 3});
}

TEST_CASE("parse_input: alternative spellings") {
  auto doc = base_doc();
  doc["crossed"] = "all";
  CHECK(parse_input(doc).crossed.count() == 3);
  doc["crossed"] = json::array({"1", "3"});
  CHECK(parse_input(doc).crossed == NodeSet(0b101));

  doc["real_form"] = json{{"name", "su"}, {"params", {1, 3}}};
  CHECK(parse_input(doc).real_form.params == std::vector<int>{1, 3});
  doc["real_form"] = json{{"satake", {{"black", {2}}, {"arrows", {{1, 3}}}}}};
  CHECK(parse_input(doc).real_form.kind == RealFormSpec::Kind::satake);
  doc["real_form"] = json{{"sigma", {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}};
  CHECK(parse_input(doc).real_form.kind == RealFormSpec::Kind::sigma);
  doc["real_form"] = "sl(4,R)";
  CHECK(parse_input(doc).real_form.family == "sl_R");

  doc["diagram"] = json{{"nodes", {"a", "b"}}, {"edges", {{"a", "b", 2}}}};
  doc["real_form"] = "split";
  doc["crossed"] = json::array({"b"});
  const auto spec = parse_input(doc);
  CHECK(spec.diagram.rank() == 2);
  CHECK(spec.crossed == NodeSet(0b10));
}

TEST_CASE("parse_input: errors are collected") {
  auto doc = base_doc();
  doc["diagram"] = "A2";
  auto errs = errors_of(doc);
  CHECK(mentions(errs, "su(1,3)"));
  CHECK(mentions(errs, "rank 2"));

  doc = base_doc();
  doc["p_max"] = -1;
  doc["mode"] = "sideways";
  doc["extra"] = true;
  errs = errors_of(doc);
  CHECK(errs.size() == 3);
  CHECK(mentions(errs, "p_max"));
  CHECK(mentions(errs, "mode"));
  CHECK(mentions(errs, "unknown field 'extra'"));

  doc = base_doc();
  doc["crossed"] = json::array({4});
  CHECK(mentions(errors_of(doc), "out of range"));

  doc = base_doc();
  doc["real_form"] = json{{"sigma", {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}};
  CHECK(mentions(errors_of(doc), "sigma"));

  doc = base_doc();
  doc["schema_version"] = 2;
  CHECK(mentions(errors_of(doc), "schema_version"));

  doc = base_doc();
  doc["diagram"] = json{{"nodes", {"1", "2", "3"}}, {"edges", {{1, 2}, {2, 3}, {3, 1}}}};
  CHECK(mentions(errors_of(doc), "diagram"));

  CHECK_THROWS_AS(parse_input_text("{not json"), InvalidInput);
  CHECK_THROWS_AS(parse_input_text("[1, 2]"), InvalidInput);
}

TEST_CASE("builtin examples parse") {
  for (const auto& name : builtin_example_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_input(builtin_example(name)));
  }
  CHECK_THROWS_AS(builtin_example("nope"), InvalidInput);
}

TEST_CASE("apply_overrides") {
  auto spec = parse_input(base_doc());
  apply_overrides(spec, TableMode::graded, 2, std::nullopt);
  CHECK(spec.mode == TableMode::graded);
  CHECK(spec.p_max == 2);
  CHECK(spec.q_max == 3);
  CHECK(spec.source.at("mode") == "graded");
  CHECK_THROWS_AS(apply_overrides(spec, std::nullopt, 100, std::nullopt), InvalidInput);
}

TEST_CASE("pipeline exit statuses") {
  CHECK(run_pipeline(parse_input(base_doc())).exit_status == 0);

  auto doc = base_doc();
  doc["real_form"] = "su(2,2)";
  doc["crossed"] = json::array({1});
  const auto generic = run_pipeline(parse_input(doc));
  CHECK(generic.exit_status == 3);
  CHECK(generic.classification.kind == OrbitKind::generic);
  CHECK_FALSE(generic.minimal_table.has_value());
  CHECK_FALSE(generic.open_table.has_value());
  CHECK_FALSE(generic.fibration.has_value());
  CHECK(run_pipeline(parse_input(doc), true).exit_status == 0);

  doc = base_doc();
  doc["bundle"] = json{{"line", {1}}};
  CHECK_THROWS_AS(run_pipeline(parse_input(doc)), Unsupported);
  doc["p_max"] = 0;
  CHECK(run_pipeline(parse_input(doc)).minimal_table->at(0, 0).rank == 2);
}

TEST_CASE("machine output is deterministic and round-trips") {
  for (const auto& name : builtin_example_names()) {
    CAPTURE(name);
    for (auto mode : {TableMode::fiber, TableMode::graded}) {
      auto spec = parse_input(builtin_example(name));
      apply_overrides(spec, mode, std::nullopt, std::nullopt);
      const auto report = run_pipeline(spec);
      const auto text = render_report(report, Format::machine);
      CHECK(text == render_report(run_pipeline(spec), Format::machine));
      const auto back = report_from_json(json::parse(text));
      CHECK(back == report);
      CHECK(render_report(back, Format::machine) == text);
    }
  }

  auto doc = base_doc();
  doc["real_form"] = "su(2,2)";
  doc["crossed"] = json::array({1});
  const auto generic = run_pipeline(parse_input(doc));
  const auto j = report_to_json(generic);
  CHECK(j.at("tables").at("minimal_orbit").is_null());
  CHECK(j.at("classification").at("witness").size() == 2);
  CHECK(report_from_json(j) == generic);
}

TEST_CASE("report_from_json rejects foreign documents") {
  CHECK_THROWS_AS(report_from_json(json{{"schema_version", 99}}), InvalidInput);
  CHECK_THROWS_AS(report_from_json(json::array()), InvalidInput);
}

TEST_CASE("table format renders the grid and annotations") {
  const auto report = run_pipeline(parse_input(builtin_example("su13-flag")));
  const auto text = render_report(report, Format::table);
  CHECK(text.find("levi_flat") != std::string::npos);
  CHECK(text.find("CP^1") != std::string::npos);
  CHECK(text.find("O_M(M) ⊗_{O_X(X)}") != std::string::npos);
  CHECK(text.find("p\\q") != std::string::npos);
}
