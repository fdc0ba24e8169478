#include "doctest.h"

#include "sfg/error.hpp"
#include "sfg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace sfg;
using namespace sfg::harness;

namespace {

const donor::PresetCatalog& catalog() {
  static const auto c = donor::load_presets();
  return c;
}

std::string minimal(const std::string& extra) {
  return R"({
  "schema_version": 1,
  "species": [{"preset": "P-control"}, {"preset": "N-qubit"}])" +
         extra + "\n}\n";
}

}  // namespace

TEST_CASE("table1 geometry and separations") {
  const auto s = preset("table1", catalog());
  REQUIRE(s.placements.size() == 5);
  std::vector<double> d;
  for (const auto& c : s.placements)
    if (c.species == "P-control")
      for (const auto& q : s.placements)
        if (q.species == "N-qubit") d.push_back((c.position - q.position).norm());
  std::sort(d.begin(), d.end());
  const std::vector<double> expected{9.0, 10.1, 14.1, 16.0, 25.6, 33.3};
  REQUIRE(d.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(d[i] - expected[i]) < 0.1);
}

TEST_CASE("every preset validates and round-trips") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto s = preset(name, catalog());
    CHECK_FALSE(preset_description(name).empty());
    const auto text = dump_scenario(s);
    const auto again = parse_scenario(text, catalog());
    CHECK(dump_scenario(again) == text);
    CHECK(scenario_to_json(again) == scenario_to_json(s));
  }
  CHECK_THROWS_AS(preset("nope", catalog()), ScenarioError);
}

TEST_CASE("save(load(f)) is semantically identical to f") {
  const std::string text = minimal(R"(,
  "name": "rt",
  "placements": [{"label": "C1", "species": "P-control", "position": [0, 0, 0]},
                 {"label": "Q1", "species": "N-qubit", "position": [9, 0]}],
  "seed": 18446744073709551615,
  "spectral": {"homogeneous_width": 1.1, "disorder": [{"name": "strain", "width": 15}]})");
  const auto s = parse_scenario(text, catalog());
  CHECK(s.seed == 18446744073709551615ULL);
  const auto out = scenario_to_json(parse_scenario(dump_scenario(s), catalog()));
  CHECK(out == scenario_to_json(s));
  const auto original = json::Json::parse(text);
  CHECK(out["placements"] == json::Json::parse(R"([{"label": "C1", "species": "P-control", "position": [0.0, 0.0, 0.0]},
    {"label": "Q1", "species": "N-qubit", "position": [9.0, 0.0, 0.0]}])"));
  CHECK(out["species"] == original["species"]);
  CHECK(out["spectral"]["disorder"] == original["spectral"]["disorder"]);
}

TEST_CASE("species overrides are kept and re-derived") {
  const std::string text = R"({
  "schema_version": 1,
  "species": [{"preset": "P-control", "central_cell_split": 0.2},
              {"species_name": "X", "role": "qubit", "binding_energy": 0.6, "dielectric_constant": 5.7,
               "radius_scale_factor": 0.5}]
})";
  const auto s = parse_scenario(text, catalog());
  CHECK(s.species[0].model.effective_bohr_radius ==
        doctest::Approx(1.5 * catalog().find("P-control").effective_bohr_radius));
  CHECK_FALSE(s.species[1].preset.has_value());
  const auto out = scenario_to_json(s);
  CHECK(out["species"][0].contains("central_cell_split"));
  CHECK_FALSE(out["species"][0].contains("role"));
}

TEST_CASE("scenario errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_scenario(text, catalog());
    } catch (const ScenarioError& e) {
      CHECK(e.stage() == "scenario");
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(minimal(",\n  \"colour\": 1")) == 4);
  CHECK(line_of(minimal(",\n  \"placements\": [\n    {\"label\": \"A\", \"species\": \"Zz\", \"position\": [0,0,0]}]")) == 5);
  CHECK(line_of("{\n \"schema_version\": 2,\n \"species\": []\n}") == 2);
  CHECK(line_of("{\n \"schema_version\": 1,\n \"species\": [\n") > 0);
  CHECK(line_of(minimal(",\n  \"placements\": [],\n  \"random_placement\": {\"concentration\": 0.01, \"mix\": {\"P-control\": 1}}")) == 5);
  CHECK(line_of(minimal(",\n  \"random_placement\": {\"concentration\": 0.01,\n   \"mix\": {\"P-control\": 0.5}}")) == 5);
  CHECK(line_of(minimal(",\n  \"exchange\": {\"p_axis\": \"sideways\"}")) == 4);
}

TEST_CASE("empty placements give an empty, valid report") {
  const auto s = parse_scenario(minimal(",\n  \"placements\": []"), catalog());
  const auto r = run_feasibility(s);
  CHECK(r.dopants.empty());
  CHECK(r.gates.empty());
  CHECK(r.resolvable_gate_count == 0);
  CHECK(r.usable_gate_count == 0);
  CHECK_FALSE(r.adjacency.attempted);
  CHECK(r.meets_targets);  // zero targets
}

TEST_CASE("table1 pipeline") {
  const auto r = run_feasibility(preset("table1", catalog()));
  REQUIRE(r.couplings.size() == 6);
  auto sorted = r.couplings;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.exchange > b.exchange; });
  std::vector<std::string> order;
  for (const auto& c : sorted) order.push_back(c.control + c.qubit);
  CHECK(order == std::vector<std::string>{"C2Q3", "C1Q1", "C1Q2", "C2Q2", "C1Q3", "C2Q1"});
  REQUIRE(r.gates.size() == 2);
  CHECK(r.gates[0].qubits == std::vector<std::string>{"Q1", "Q2"});
  CHECK(r.gates[1].qubits == std::vector<std::string>{"Q2", "Q3"});
  CHECK(r.gates[0].effective.size() == 1);
  CHECK(r.transitions.size() == 2);
  CHECK(r.transitions[0].energy < r.transitions[1].energy);
  CHECK(r.resolvable_gate_count == 2);
  CHECK(r.adjacency.attempted);
  CHECK(r.adjacency.recovered);
  for (const auto& g : r.gates) CHECK(g.sfg_status == "no_clean_gate");
}

TEST_CASE("reports are byte-identical apart from the timestamp") {
  const auto s = preset("table1", catalog());
  const auto a = report_json(run_feasibility(s), "T");
  const auto b = report_json(run_feasibility(parse_scenario(dump_scenario(s), catalog())), "T");
  CHECK(a == b);
  auto other = s;
  other.seed = 99;
  other.spectral.disorder = {{"strain", 10.0}};
  auto with_disorder = s;
  with_disorder.spectral.disorder = {{"strain", 10.0}};
  CHECK(report_json(run_feasibility(other), "T") != report_json(run_feasibility(with_disorder), "T"));
}

TEST_CASE("random placements use tables that agree with direct integrals") {
  auto s = preset("shen-nv", catalog());
  s.lattice.bounding_radius = 30.0;
  s.random->concentration = 0.003;
  const auto tables = build_tables(s);
  const auto r = run_feasibility(s, tables);
  REQUIRE_FALSE(r.couplings.empty());
  for (const auto& c : r.couplings) CHECK_FALSE(c.overlap.has_value());
  // Compare a few table entries with the exact pair integrals.
  const auto& table = tables.exchange.at({"P-control", "N-qubit"});
  for (double d : {3.1, 7.7, 12.4}) {
    const auto exact = integrals::exchange_curve(catalog().find("P-control"), catalog().find("N-qubit"), true, {d});
    CHECK(table(d) == doctest::Approx(std::abs(exact[0].exchange_splitting)).epsilon(0.02));
  }
}

TEST_CASE("patch statistics") {
  auto s = preset("shen-nv", catalog());
  s.lattice.bounding_radius = 40.0;
  const auto a = patch_statistics(s, 6, 21);
  const auto b = patch_statistics(s, 6, 21);
  CHECK(a.usable_gates == b.usable_gates);
  CHECK(a.dopant_counts == b.dopant_counts);
  CHECK(patch_statistics_json(a, s, "T") == patch_statistics_json(b, s, "T"));
  int total = 0;
  for (const auto& [k, n] : a.histogram) total += n;
  CHECK(total == 6);
  for (std::size_t i = 0; i < a.usable_gates.size(); ++i) CHECK(a.usable_gates[i] <= a.resolvable_gates[i]);

  s.random->concentration = 1e-9;
  s.targets.n_gates = 1;
  const auto none = patch_statistics(s, 4, 1);
  CHECK(none.fraction_meeting_target == 0.0);
  CHECK_THROWS_AS(patch_statistics(s, 0, 1), PreconditionError);
  CHECK_THROWS_AS(patch_statistics(preset("table1", catalog()), 2, 1), PreconditionError);
}

TEST_CASE("derived seeds differ per stream") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(7, i));
  CHECK(seen.size() == 100);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("curve specs") {
  const auto s = preset("fig2a", catalog());
  REQUIRE(s.curve.has_value());
  const auto g = s.curve->grid();
  CHECK(g.front() == 4.0);
  CHECK(g.back() == doctest::Approx(30.0));
  CHECK(g.size() == 53);
  CHECK(preset("fig3", catalog()).curve->kind == CurveSpec::Kind::splitting);
  const auto b = preset("fig2b", catalog());
  CHECK(b.species_model(b.curve->control).coulombic_binding() == doctest::Approx(0.4));
  CHECK(b.species_model(b.curve->partner).orbital_radius() ==
        doctest::Approx(b.species_model(b.curve->control).orbital_radius() / 2.0));
}
