// Command-line front end: spectrum, trajectory, verify, norms, scan.
//
// Exit codes: 0 success, 2 invalid config, 3 solver failure, 4 an estimate
// was violated.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cscale/config.hpp"
#include "cscale/cscale.hpp"
#include "cscale/io.hpp"

namespace fs = std::filesystem;
using namespace cscale;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_solver = 3;
constexpr int exit_violated = 4;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExperimentConfig load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInput("--config: cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return parse_config_text(ss.str());
  } catch (const Error& e) {
    throw InvalidInput(e.what());
  }
}

std::string tag(std::size_t i) { return "p" + std::to_string(i); }

void check_angles(const ExperimentConfig& cfg, bool increasing) {
  if (cfg.angles.empty()) throw InvalidInput("angles: required");
  for (std::size_t k = 0; k < cfg.angles.size(); ++k) {
    for (const auto& spec : cfg.potentials)
      if (!spec.potential.admits(cfg.angles[k]))
        throw InvalidInput("angles[" + std::to_string(k) + "]: phi = " + num(cfg.angles[k]) +
                           " outside the admissible window of " + spec.name);
    if (increasing && k > 0 && !(cfg.angles[k] > cfg.angles[k - 1]))
      throw InvalidInput("angles[" + std::to_string(k) + "]: must be strictly increasing");
    if (cfg.phi_probe && cfg.angles[k] != 0.0) {
      const double p = *cfg.phi_probe, f = cfg.angles[k];
      if (!(p * f > 0.0 && std::abs(p) < std::abs(f)))
        throw InvalidInput("phi_probe: need 0 < |phi_probe| < |phi| with the sign of every nonzero angle");
    }
  }
}

// At phi = 0 nothing separates box modes from bound states of a complex V,
// so the discrete part is taken from a dilated classification (the partners
// it reports live in the undilated spectrum) and the rest is continuum.
SpectrumClassification classify_at_zero(const Potential& v, const Grid& g, const VerifyOptions& vo,
                                        const std::vector<EigenPair>& s0) {
  if (v.alpha() == 0.0) return classify_undilated(v, g, vo.classify);
  const auto dil = detail::base_classification(v, g, vo);
  SpectrumClassification out;
  out.isolated = dil.isolated;
  out.ambiguous = dil.ambiguous;
  for (const auto& p : s0) {
    const bool discrete = std::any_of(dil.isolated.begin(), dil.isolated.end(), [&](const EigenPair& q) {
      return std::abs(q.lambda - p.lambda) <= vo.classify.tol_match;
    });
    if (!discrete) out.continuum.push_back(p);
  }
  out.max_residual = dil.max_residual;
  return out;
}

int cmd_spectrum(const ExperimentConfig& cfg, const fs::path& out) {
  check_angles(cfg, false);
  const Grid g = cfg.grid();
  const auto& opt = cfg.verify.classify;
  CsvWriter cls_csv((out / "classification.csv").string(), cfg.hash,
                    {"potential", "phi", "lambda_re", "lambda_im", "class", "multiplicity", "residual"});
  auto report = nlohmann::json::array();
  for (std::size_t i = 0; i < cfg.potentials.size(); ++i) {
    const auto& spec = cfg.potentials[i];
    const auto spectra = spectra_at(spec.potential, g, cfg.angles, opt);
    auto entry = nlohmann::json{{"potential", spec.name}, {"id", spec.potential.id()}};
    auto classes = nlohmann::json::array();
    for (std::size_t k = 0; k < cfg.angles.size(); ++k) {
      const double phi = cfg.angles[k];
      CsvWriter csv((out / ("spectrum_" + tag(i) + "_phi" + std::to_string(k) + ".csv")).string(), cfg.hash,
                    {"potential", "phi", "lambda_re", "lambda_im", "multiplicity", "residual"});
      for (const auto& p : spectra[k])
        csv.row({spec.name, num(phi), num(p.lambda.real()), num(p.lambda.imag()), std::to_string(p.multiplicity),
                 num(p.residual)});
      const SpectrumClassification c =
          phi == 0.0 || spec.potential.alpha() == 0.0
              ? classify_at_zero(spec.potential, g, cfg.verify, spectra[k])
              : classify(spec.potential, g, phi, cfg.phi_probe.value_or(0.5 * phi), opt);
      for (const auto& r : classification_rows(c))
        cls_csv.row({spec.name, num(phi), num(r.lambda.real()), num(r.lambda.imag()), r.cls,
                     std::to_string(r.multiplicity), num(r.residual)});
      auto cj = to_json(c);
      cj["phi"] = phi;
      cj["ray_fit_fraction"] = ray_fit_fraction(spectra[k], phi, opt);
      classes.push_back(cj);
      std::cout << spec.name << " phi=" << num(phi) << ": " << c.isolated.size() << " isolated, " << c.resonance.size()
                << " resonance, " << c.continuum.size() << " continuum, " << c.spurious.size() << " other\n";
    }
    entry["classifications"] = classes;
    report.push_back(entry);
  }
  write_json((out / "classification.json").string(), report, cfg.hash);
  return 0;
}

int cmd_trajectory(const ExperimentConfig& cfg, const fs::path& out) {
  check_angles(cfg, true);
  const Grid g = cfg.grid();
  CsvWriter csv((out / "trajectory.csv").string(), cfg.hash,
                {"potential", "path", "phi", "lambda_re", "lambda_im", "multiplicity", "step", "ambiguous"});
  for (std::size_t i = 0; i < cfg.potentials.size(); ++i) {
    const auto& spec = cfg.potentials[i];
    const auto paths = trajectory(spec.potential, g, cfg.angles, cfg.verify.classify);
    std::size_t ambiguous = 0;
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const auto& path = paths[k];
      ambiguous += path.ambiguous;
      for (std::size_t s = 0; s < path.phi.size(); ++s)
        csv.row({spec.name, std::to_string(k), num(path.phi[s]), num(path.lambda[s].real()), num(path.lambda[s].imag()),
                 std::to_string(path.multiplicity[s]), num(path.step[s]), path.ambiguous ? "true" : "false"});
    }
    std::cout << spec.name << ": " << paths.size() << " paths, " << ambiguous << " ambiguous\n";
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const fs::path& out) {
  if (cfg.theorems.empty()) throw InvalidInput("theorems: required for verify");
  const Grid g = cfg.grid();
  const LTConstants k = cfg.constants();
  CsvWriter csv((out / "reports.csv").string(), cfg.hash, report_columns());
  auto all = nlohmann::json::array();
  bool violated = false;
  for (const auto& spec : cfg.potentials) {
    spec.potential.validate_for_gamma(cfg.gamma);
    auto reports = verify_suite(cfg.theorems, spec.potential, g, k, cfg.verify);
    for (const auto& [t, prm] : cfg.theorems)
      if (!applicable(t, spec.potential, prm)) {
        std::string why;
        try {
          check_applicable(t, spec.potential, prm);
        } catch (const Error& e) {
          why = e.what();
        }
        all.push_back({{"potential", spec.name}, {"theorem_id", to_string(t)}, {"skipped", why}});
        std::cout << spec.name << " " << to_string(t) << ": skipped (" << why << ")\n";
      }
    for (const auto& r : reports) {
      csv.row(report_row(spec.name, r));
      auto j = to_json(r);
      j["potential"] = spec.name;
      all.push_back(j);
      violated = violated || !r.satisfied;
      std::cout << spec.name << " " << to_string(r.theorem) << ": lhs=" << num(r.lhs) << " rhs=" << num(r.rhs)
                << (r.satisfied ? " satisfied" : " VIOLATED") << '\n';
    }
  }
  write_json((out / "reports.json").string(), all, cfg.hash);
  return violated ? exit_violated : 0;
}

int cmd_norms(const ExperimentConfig& cfg, const fs::path& out) {
  const auto angles = cfg.norm_angles.empty() ? (cfg.angles.empty() ? std::vector<double>{0.0} : cfg.angles) : cfg.norm_angles;
  CsvWriter csv((out / "norms.csv").string(), cfg.hash,
                {"potential", "params", "phi", "p", "norm_quadrature", "norm_closed_form", "status"});
  for (const auto& spec : cfg.potentials) {
    const auto* gauss = std::get_if<Gaussian>(&spec.potential.family());
    for (double phi : angles)
      for (double p : cfg.norm_p) {
        std::string quad, closed, status = "ok";
        try {
          quad = num(lp_norm_quadrature(spec.potential, ComplexAngle{phi}, p, cfg.verify.quad));
        } catch (const Error& e) {
          status = std::string(to_string(e.kind()));
        }
        if (gauss) {
          try {
            closed = num(std::abs(gauss->amplitude) * gaussian_norm_closed_form(gauss->c, phi, p));
          } catch (const Error& e) {
            if (status == "ok") status = std::string(to_string(e.kind()));
          }
        }
        csv.row({spec.name, spec.potential.id(), num(phi), num(p), quad, closed, status});
      }
  }
  return 0;
}

int cmd_scan(const ExperimentConfig& cfg, const fs::path& out) {
  const auto angles = cfg.norm_angles.empty() ? cfg.angles : cfg.norm_angles;
  if (angles.empty()) throw InvalidInput("norms.angles: required for scan");
  for (std::size_t k = 0; k < angles.size(); ++k)
    for (const auto& spec : cfg.potentials)
      if (!spec.potential.admits(angles[k]))
        throw InvalidInput("norms.angles[" + std::to_string(k) + "]: outside the admissible window of " + spec.name);
  CsvWriter csv((out / "scan.csv").string(), cfg.hash, {"potential", "p", "phi", "norm", "direction"});
  auto summary = nlohmann::json::array();
  for (const auto& spec : cfg.potentials)
    for (double p : cfg.norm_p) {
      const auto scan = norm_monotonicity_scan(spec.potential, p, angles, cfg.verify.quad);
      for (const auto& pt : scan) csv.row({spec.name, num(p), num(pt.phi), num(pt.norm), std::to_string(pt.direction)});
      nlohmann::json s{{"potential", spec.name}, {"p", p}, {"direction_changes", direction_changes(scan)}};
      if (const auto* gauss = std::get_if<Gaussian>(&spec.potential.family()); gauss && gauss->c.imag() < 0.0)
        s["critical_angle"] = critical_angle(gauss->c);
      summary.push_back(s);
    }
  write_json((out / "scan.json").string(), summary, cfg.hash);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex-dilation spectra and Lieb-Thirring type estimates for 1D Schroedinger operators"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  int threads = 1;
  double tol_eig = 0.0;
  bool seedless = false;
  app.set_version_flag("--version", tool_version);
  for (const char* name : {"spectrum", "trajectory", "verify", "norms", "scan"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (default: config 'output')");
    sub->add_option("--threads", threads, "concurrent eigensolves")->check(CLI::PositiveNumber);
    sub->add_option("--tol-eig", tol_eig, "residual tolerance for eigenpairs")->check(CLI::PositiveNumber);
    sub->add_flag("--seedless", seedless, "no randomness is used anywhere; accepted for interface stability");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig cfg = load(config_path);
    cfg.verify.classify.threads = threads;
    if (tol_eig > 0.0) cfg.verify.classify.eig.tol_eig = tol_eig;
    const fs::path out = out_dir.empty() ? fs::path(cfg.output) : fs::path(out_dir);
    fs::create_directories(out);
    if (cmd == "spectrum") return cmd_spectrum(cfg, out);
    if (cmd == "trajectory") return cmd_trajectory(cfg, out);
    if (cmd == "verify") return cmd_verify(cfg, out);
    if (cmd == "norms") return cmd_norms(cfg, out);
    return cmd_scan(cfg, out);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return exit_invalid;
  } catch (const Error& e) {
    const bool input = e.kind() == ErrorKind::InvalidConfig || e.kind() == ErrorKind::InvalidArgument ||
                       e.kind() == ErrorKind::AngleOutOfStrip || e.kind() == ErrorKind::KappaDomain ||
                       e.kind() == ErrorKind::AngleOrder;
    std::cerr << (input ? "invalid config: " : "solver failure: ") << e.what() << '\n';
    return input ? exit_invalid : exit_solver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver;
  }
}
