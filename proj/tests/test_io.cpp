#include "support.hpp"

#include "nilsoliton/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace testing;
using nilsoliton::io::Json;

TEST_CASE("bracket documents round trip") {
  std::mt19937_64 rng(1);
  const std::vector<catalog::Entry> entries = {catalog::filiform4_symplectic(), catalog::complex_iwasawa_curve(0.3),
                                               catalog::hypercomplex_curve(0.2), catalog::heisenberg3()};
  for (const catalog::Entry& e : entries) {
    const std::string text = io::dump(io::to_json(e.bracket, e.structure));
    const io::Document doc = io::parse_text(text);
    CHECK(distance(doc.bracket, e.bracket) == 0.0);
    CHECK(doc.structure.kind == e.structure.kind);
    REQUIRE(doc.structure.operators.size() == e.structure.operators.size());
    for (std::size_t i = 0; i < doc.structure.operators.size(); ++i)
      CHECK(max_diff(doc.structure.operators[i], e.structure.operators[i]) == 0.0);
    CHECK(io::dump(io::to_json(doc.bracket, doc.structure)) == text);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Bracket mu = random_nilpotent(rng, 5);
    CHECK(distance(io::parse_text(io::dump(io::to_json(mu))).bracket, mu) == 0.0);
  }
}

TEST_CASE("document format uses one-based indices") {
  const Json j = io::to_json(catalog::heisenberg3().bracket);
  CHECK(j["dim"] == 3);
  REQUIRE(j["terms"].size() == 1);
  CHECK(j["terms"][0]["i"] == 1);
  CHECK(j["terms"][0]["j"] == 2);
  CHECK(j["terms"][0]["k"] == 3);
  CHECK_FALSE(j.contains("structure"));

  const io::Document doc = io::parse_text(R"({"dim": 4, "terms": [{"i": 1, "j": 2, "k": 3, "c": 1.0},
                                                                 {"i": 1, "j": 3, "k": 4, "c": 1.0}]})");
  CHECK(distance(doc.bracket, catalog::filiform4().bracket) == 0.0);
  CHECK(doc.structure.kind == StructureKind::none);
}

TEST_CASE("malformed documents") {
  const std::vector<std::string> bad = {
      "not json",
      "[]",
      R"({"terms": []})",
      R"({"dim": 0, "terms": []})",
      R"({"dim": 3})",
      R"({"dim": 3, "terms": [{"i": 1, "j": 2, "k": 4, "c": 1}]})",
      R"({"dim": 3, "terms": [{"i": 2, "j": 1, "k": 3, "c": 1}]})",
      R"({"dim": 3, "terms": [{"i": 1, "j": 2, "k": 3}]})",
      R"({"dim": 3, "terms": [{"i": 1, "j": 2, "k": 3, "c": 1}, {"i": 1, "j": 2, "k": 3, "c": 2}]})",
      R"({"dim": 2, "terms": [], "structure": {"kind": "kahler"}})",
      R"({"dim": 2, "terms": [], "structure": {"kind": "complex", "J": [[0, -1]]}})",
      R"({"dim": 2, "terms": [], "structure": {"kind": "symplectic"}})",
  };
  for (const std::string& text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::parse_text(text), LoadError);
  }
  CHECK_THROWS_AS(io::load_document("/nonexistent/bracket.json"), LoadError);
}

TEST_CASE("deterministic number format") {
  CHECK(io::format_number(1.0) == "1.0");
  CHECK(io::format_number(-0.25) == "-0.25");
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(1e300) == "1.0000000000000001e+300");
  CHECK(io::format_number(std::nan("")) == "null");
  CHECK(io::dump(Json{{"b", 1.0}, {"a", std::vector<double>{0.5, 2.0}}}) == "{\n  \"a\": [0.5, 2.0],\n  \"b\": 1.0\n}\n");
  CHECK(io::dump(io::to_json(Operator(Operator::Identity(2, 2)))) == "[\n  [1.0, 0.0],\n  [0.0, 1.0]\n]\n");
}

TEST_CASE("report serialization") {
  const catalog::Entry lambda = catalog::filiform4_symplectic();
  const Json cert = io::to_json(certify(lambda.bracket, lambda.structure));
  CHECK(cert["c"].get<double>() == doctest::Approx(-1.25));
  CHECK(cert["eigenvalue_type"] == std::vector<int>{1, 2, 3, 4});
  CHECK(cert["kind"] == "symplectic");
  CHECK(cert["D"].size() == 4);
  CHECK(cert.contains("residual"));
  CHECK(cert.contains("integrability_residual"));
  CHECK(cert["derivation_spectrum"].size() == 4);

  const Json none = io::to_json(certify(Bracket(3)));
  CHECK(none["eigenvalue_type"].is_null());

  const Json v = io::to_json(validate(catalog::filiform4().bracket));
  CHECK(v["nilpotency_step"] == 3);
  CHECK(v["lcs_dims"] == std::vector<int>{4, 2, 1});

  const Bracket so3(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}});
  CHECK(io::to_json(validate(so3))["nilpotency_step"] == "not nilpotent");

  const ComparisonReport r = compare(lambda.bracket, lambda.structure, catalog::heisenberg_symplectic(2).bracket,
                                     catalog::heisenberg_symplectic(2).structure);
  const Json cmp = io::to_json(r);
  CHECK(cmp["verdict"] == "distinct");

  const EinsteinVerdict e = einstein_check(rank_one_extension(catalog::heisenberg3().bracket,
                                                              certify(catalog::heisenberg3().bracket)));
  const Json ej = io::to_json(e);
  CHECK(ej["einstein"] == true);
  CHECK(ej["constant"].get<double>() == doctest::Approx(-1.5));
}

TEST_CASE("trace CSV") {
  const catalog::Entry e = catalog::symplectic_abc(1, 1, 0);
  FlowOptions options;
  options.perturb = 0.3;
  options.seed = 2;
  const FlowTrace trace = flow_minimize(e.bracket, e.structure, options);
  std::ostringstream out;
  io::write_trace_csv(out, trace);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "step,F,gradnorm");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
  }
  CHECK(rows == trace.iterates.size());
}
