#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cscale/config.hpp"
#include "cscale/io.hpp"

using namespace cscale;

namespace {

const char* minimal = R"({
  "potential": {"family": "gaussian", "c": [1, 0], "amplitude": [-1.2, 0]},
  "grid": {"L": 12, "N": 200}
})";

// Message of the InvalidConfig error raised by text, or "" if none.
std::string config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig) << e.what();
    return e.what();
  }
  return "";
}

std::string with(const std::string& grid, const std::string& extra = "") {
  return R"({"potential": {"family": "gaussian"}, "grid": )" + grid + extra + "}";
}

}  // namespace

TEST(Config, Defaults) {
  const auto cfg = parse_config_text(minimal);
  ASSERT_EQ(cfg.potentials.size(), 1u);
  EXPECT_EQ(cfg.L, 12.0);
  EXPECT_EQ(cfg.N, 200);
  EXPECT_EQ(cfg.scheme, Scheme::FD2);
  EXPECT_EQ(cfg.gamma, 1.5);
  EXPECT_EQ(cfg.d, 1);
  EXPECT_EQ(cfg.norm_p, std::vector<double>{2.0});
  EXPECT_FALSE(cfg.verify.extrapolate);
  EXPECT_TRUE(cfg.verify.box_check);
  EXPECT_EQ(cfg.output, "out");
  EXPECT_EQ(cfg.potentials[0].potential.dilated(ComplexAngle{}, 0.0), cplx(-1.2, 0.0));
}

TEST(Config, FullDocument) {
  const auto cfg = parse_config_text(R"({
    "potentials": [
      {"family": "rational", "c": [-1.5, 0.8], "s": 2, "name": "r"},
      {"family": "gaussian_pair", "c": 1, "center": 2.5, "amplitude": 3},
      {"family": "sech2", "samples": 101},
      {"family": "tabulated", "x": [-1, 0, 1], "v": [0, [-1, 0.5], 0]},
      {"family": "well", "depth": 2, "halfwidth": 1},
      {"family": "free"}
    ],
    "grid": {"L": 10, "N": 64, "scheme": "FD4"},
    "angles": {"start": 0, "stop": 0.3, "count": 4},
    "phi_probe": 0.05,
    "L_policy": {"kind": "SemiclassicalTimes", "m": 2},
    "theorems": ["FLLSpp", {"id": "FLLS", "kappa": 0.5}, {"id": "Resonance", "phi": 0.6}],
    "tolerances": {"tol_match": 1e-5, "tol_box": 1e-3},
    "norms": {"p": [2, 3], "angles": [0, 0.1]},
    "lhs": "richardson",
    "output": "somewhere"
  })");
  ASSERT_EQ(cfg.potentials.size(), 6u);
  EXPECT_EQ(cfg.potentials[0].name, "r");
  EXPECT_EQ(cfg.scheme, Scheme::FD4);
  ASSERT_EQ(cfg.angles.size(), 4u);
  EXPECT_DOUBLE_EQ(cfg.angles[3], 0.3);
  EXPECT_EQ(*cfg.phi_probe, 0.05);
  EXPECT_DOUBLE_EQ(cfg.constants().L(), 2.0 * 3.0 / 16.0);
  ASSERT_EQ(cfg.theorems.size(), 3u);
  EXPECT_EQ(cfg.theorems[1].first, Theorem::FLLS);
  EXPECT_EQ(*cfg.theorems[1].second.kappa, 0.5);
  EXPECT_EQ(*cfg.theorems[2].second.phi, 0.6);
  EXPECT_EQ(cfg.verify.classify.tol_match, 1e-5);
  EXPECT_EQ(cfg.verify.tol_box, 1e-3);
  EXPECT_EQ(cfg.verify.classify.scheme, Scheme::FD4);
  EXPECT_TRUE(cfg.verify.extrapolate);
  EXPECT_EQ(cfg.norm_p, (std::vector<double>{2.0, 3.0}));
  EXPECT_EQ(cfg.output, "somewhere");
  EXPECT_NEAR(cfg.potentials[2].potential.dilated(ComplexAngle{}, 0.0).real(), -2.0, 1e-12);
}

TEST(Config, ErrorsNameTheField) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {with(R"({"L": 10, "N": 5})"), "grid.N"},
      {with(R"({"L": 10, "N": 100.5})"), "grid.N"},
      {with(R"({"L": 10, "N": "many"})"), "grid.N"},
      {with(R"({"L": -1, "N": 100})"), "grid.L"},
      {with(R"({"N": 100})"), "grid.L"},
      {with(R"({"L": 10, "N": 100, "scheme": "FD6"})"), "grid.scheme"},
      {R"({"grid": {"L": 10, "N": 100}})", "potential"},
      {R"({"potential": {"family": "cubic"}, "grid": {"L": 10, "N": 100}})", "potential.family"},
      {R"({"potential": {"family": "rational"}, "grid": {"L": 10, "N": 100}})", "potential.s"},
      {R"({"potential": {"family": "gaussian", "c": [1, 2, 3]}, "grid": {"L": 10, "N": 100}})", "potential.c"},
      {with(R"({"L": 10, "N": 100})", R"(, "theorems": ["FLLS"])"), "theorems[0].kappa"},
      {with(R"({"L": 10, "N": 100})", R"(, "theorems": [{"id": "Resonance", "phi": 2}])"), "theorems[0].phi"},
      {with(R"({"L": 10, "N": 100})", R"(, "theorems": ["Nope"])"), "theorems[0].id"},
      {with(R"({"L": 10, "N": 100})", R"(, "gamma": 0.2)"), "gamma"},
      {with(R"({"L": 10, "N": 100})", R"(, "d": 1.5)"), "d"},
      {with(R"({"L": 10, "N": 100})", R"(, "lhs": "magic")"), "lhs"},
      {with(R"({"L": 10, "N": 100})", R"(, "tolerances": {"tol_match": -1})"), "tolerances.tol_match"},
      {with(R"({"L": 10, "N": 100})", R"(, "angles": {"start": 0, "stop": 1, "count": 0})"), "angles.count"},
      {with(R"({"L": 10, "N": 100})", R"(, "norms": {"p": [0.5]})"), "norms.p"},
      {with(R"({"L": 10, "N": 100})", R"(, "L_policy": {"kind": "Guess"})"), "L_policy.kind"},
      {"{ not json", "<document>"},
  };
  for (const auto& [text, field] : cases) {
    const auto msg = config_error(text);
    EXPECT_EQ(msg.rfind("InvalidConfig: " + field + ":", 0), 0u) << "expected '" << field << "' in: " << msg;
  }
}

TEST(Config, HashIsDeterministicAndSensitive) {
  const auto a = parse_config_text(minimal).hash;
  EXPECT_EQ(a, parse_config_text(minimal).hash);
  EXPECT_EQ(a.size(), 16u);
  // Key order and whitespace do not matter, values do.
  EXPECT_EQ(a, parse_config_text(R"({"grid":{"N":200,"L":12},"potential":{"amplitude":[-1.2,0],"c":[1,0],"family":"gaussian"}})").hash);
  EXPECT_NE(a, parse_config_text(R"({"grid":{"N":201,"L":12},"potential":{"amplitude":[-1.2,0],"c":[1,0],"family":"gaussian"}})").hash);
}

TEST(Config, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Io, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) EXPECT_EQ(std::stod(num(x)), x);
  EXPECT_EQ(num(0.1), "0.10000000000000001");
  EXPECT_EQ(num(-1.0), "-1");
}

TEST(Io, CsvHeaderCarriesVersionAndHash) {
  const auto path = (std::filesystem::temp_directory_path() / "cscale_io_test.csv").string();
  {
    CsvWriter w(path, "0123456789abcdef", {"a", "b"});
    w.row({num(0.5), "x"});
  }
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  std::filesystem::remove(path);
  EXPECT_EQ(ss.str(), "# cscale 0.1.0 config=0123456789abcdef\na,b\n0.5,x\n");
}

TEST(Io, ClassificationRowsAreSorted) {
  SpectrumClassification c;
  c.phi = 0.2;
  c.continuum = {{cplx(3.0, -1.0), 0.0, 1}, {cplx(1.0, -0.2), 0.0, 1}};
  c.isolated = {{-1.0, 0.0, 2}};
  c.resonance = {{cplx(1.0, -0.5), 0.0, 1}};
  const auto rows = classification_rows(c);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].cls, "isolated");
  EXPECT_EQ(rows[1].cls, "resonance");
  EXPECT_EQ(rows[2].cls, "continuum");
  EXPECT_EQ(rows[3].lambda, cplx(3.0, -1.0));
  EXPECT_EQ(rows[0].multiplicity, 2);
}

TEST(Io, ReportJsonFields) {
  BoundReport r;
  r.theorem = Theorem::FLLS;
  r.kappa = 1.0;
  r.lhs = 0.5;
  r.rhs = 2.0;
  r.ratio = 0.25;
  r.satisfied = true;
  const auto j = to_json(r);
  EXPECT_EQ(j.at("theorem_id"), "FLLS");
  EXPECT_EQ(j.at("kappa"), 1.0);
  EXPECT_TRUE(j.at("phi").is_null());
  EXPECT_TRUE(j.at("box_converged").is_null());
  const auto row = report_row("v", r);
  EXPECT_EQ(row.size(), report_columns().size());
  EXPECT_EQ(row[1], "FLLS");
  EXPECT_EQ(row[10], "true");
}
