#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nambu/errors.hpp"
#include "nambu/flows.hpp"
#include "nambu/nambu.hpp"
#include "nambu/ring.hpp"
#include "nambu/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variable names when --vars is not given: x y z for up to three
// dimensions, x0 .. x{n-1} beyond.
std::vector<std::string> default_variables(std::size_t dim) {
  if (dim >= 1 && dim <= 3) {
    std::vector<std::string> xyz{"x", "y", "z"};
    return {xyz.begin(), xyz.begin() + static_cast<long>(dim)};
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<std::string> resolve_variables(std::size_t dim, const std::vector<std::string>& vars) {
  if (vars.empty()) return default_variables(dim);
  if (vars.size() != dim) throw nambu::DimensionError("--vars must list --dim names");
  return vars;
}

nambu::ScenarioConfig load_scenario(const std::string& ref) {
  for (const auto& name : nambu::shipped_scenario_names()) {
    if (name == ref) return nambu::shipped_scenario(name);
  }
  std::ifstream in(ref);
  if (!in) throw UsageError("unknown scenario '" + ref + "' (not shipped, no such file)");
  std::stringstream buf;
  buf << in.rdbuf();
  return nambu::parse_scenario(buf.str());
}

struct Options {
  bool text = false;
  std::optional<double> tol;
  std::uint64_t seed = 1;

  std::string scenario;

  std::size_t dim = 3;
  std::vector<std::string> vars;
  std::vector<std::string> fns;
  std::string of;
  std::vector<std::string> field;

  std::vector<double> x0;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::string format = "csv";

  std::size_t ring_n = 3;
  double ring_t = 1.0;
};

int cmd_verify(const Options& opt) {
  nambu::ScenarioConfig cfg = load_scenario(opt.scenario);
  nambu::VerifyOptions vo;
  vo.tol = opt.tol;
  vo.seed = opt.seed;
  nambu::VerificationReport report = nambu::verify(cfg, vo);
  std::cout << (opt.text ? nambu::report_text(report) : nambu::report_json(report));
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    std::fprintf(stderr, "%-32s %9.3f ms\n", report.checks[i].id.c_str(), report.elapsed_ms[i]);
  }
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_bracket(const Options& opt) {
  auto names = nambu::make_names(resolve_variables(opt.dim, opt.vars));
  std::vector<nambu::Polynomial> fns;
  for (const auto& f : opt.fns) fns.push_back(nambu::parse_polynomial(f, names));
  nambu::HamiltonianSystem system(opt.dim, fns);
  std::cout << nambu::nambu_bracket(system, nambu::parse_polynomial(opt.of, names)).to_string()
            << "\n";
  return kExitOk;
}

int cmd_potential(const Options& opt) {
  auto names = nambu::make_names(resolve_variables(opt.dim, opt.vars));
  std::vector<nambu::Polynomial> comps;
  for (const auto& f : opt.field) comps.push_back(nambu::parse_polynomial(f, names));
  if (comps.size() != opt.dim) throw nambu::DimensionError("--field needs --dim components");
  try {
    nambu::VectorHamiltonian h =
        nambu::flow_to_vector_hamiltonian(nambu::vector_field(comps));
    std::cout << h.form.to_string() << "\n";
  } catch (const nambu::DivergenceError& e) {
    std::cout << "divergence: " << e.divergence().to_string() << "\n";
    std::cerr << "error: field is not divergence-free, no vector Hamiltonian\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_flow(const Options& opt) {
  nambu::FlowSystem flow;
  std::vector<std::string> names;
  std::vector<double> x0 = opt.x0;
  double t_end = opt.t_end.value_or(10.0);
  double dt = opt.dt.value_or(1e-3);

  if (!opt.scenario.empty()) {
    nambu::ScenarioConfig cfg = load_scenario(opt.scenario);
    names = cfg.variables;
    auto vn = nambu::make_names(names);
    if (!cfg.hamiltonians.empty()) {
      std::vector<nambu::Polynomial> hs;
      for (const auto& h : cfg.hamiltonians) hs.push_back(nambu::parse_polynomial(h, vn));
      flow = nambu::rhs_from_bracket(nambu::HamiltonianSystem(names.size(), hs));
    } else {
      for (const auto& f : cfg.field) flow.rhs.push_back(nambu::parse_polynomial(f, vn));
    }
    if (x0.empty()) {
      for (const auto& v : cfg.initial) x0.push_back(nambu::Scalar::from_string(v).to_double());
    }
    t_end = opt.t_end.value_or(cfg.t_end);
    dt = opt.dt.value_or(cfg.dt);
  } else {
    names = resolve_variables(opt.dim, opt.vars);
    auto vn = nambu::make_names(names);
    if (!opt.field.empty()) {
      for (const auto& f : opt.field) flow.rhs.push_back(nambu::parse_polynomial(f, vn));
    } else if (!opt.fns.empty()) {
      std::vector<nambu::Polynomial> hs;
      for (const auto& h : opt.fns) hs.push_back(nambu::parse_polynomial(h, vn));
      flow = nambu::rhs_from_bracket(nambu::HamiltonianSystem(opt.dim, hs));
    } else {
      throw UsageError("flow needs --scenario, --field or --fns");
    }
  }
  if (flow.dim() != names.size()) throw nambu::DimensionError("field needs one component per variable");
  if (x0.size() != names.size()) throw nambu::DimensionError("--x0 needs one value per variable");

  auto emit = [&](const nambu::Trajectory& tr) {
    if (opt.format == "json") {
      std::cout << nambu::trajectory_json(tr, names) << "\n";
    } else {
      nambu::write_csv(std::cout, tr, names);
    }
  };
  try {
    emit(nambu::integrate(flow, x0, t_end, dt));
  } catch (const nambu::BlowUpError& e) {
    emit(e.partial());
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_ring(const Options& opt) {
  const std::size_t n = opt.ring_n;
  const double tol = opt.tol.value_or(1e-15);
  nambu::GenPauliSet set = nambu::gen_pauli(n);
  nambu::PauliIdentityResiduals res = nambu::pauli_identity_residuals(set);
  std::vector<double> c = nambu::c_series_vector(n, opt.ring_t, tol);
  nambu::RingSystem ring = nambu::ring_system(n);

  // Flow state from e0 at time t: (c0, c_{n-1}, ..., c1).
  std::vector<double> state(n);
  for (std::size_t j = 0; j < n; ++j) state[j] = c[(n - j) % n];

  nlohmann::ordered_json out;
  out["n"] = n;
  out["t"] = opt.ring_t;
  out["tol"] = tol;
  out["c"] = c;
  out["state"] = state;
  if (ring.invariant) {
    out["invariant"] = {{"expression", ring.invariant->to_string()},
                        {"value", ring.invariant->evaluate(std::span<const double>(state))}};
  } else {
    out["invariant"] = nullptr;
  }
  out["identity_residuals"] = {{"shift_order", res.shift_order},
                               {"sigma_order", res.sigma_order},
                               {"sigma_sum", res.sigma_sum},
                               {"exp_reconstruction", nambu::exp_reconstruction_check(n, opt.ring_t)}};
  if (opt.text) {
    std::cout << "n = " << n << ", t = " << opt.ring_t << "\n";
    for (std::size_t j = 0; j < n; ++j) std::cout << "c" << j << " = " << c[j] << "\n";
    if (ring.invariant) {
      std::cout << "I = " << ring.invariant->to_string() << " = "
                << out["invariant"]["value"].get<double>() << "\n";
    }
    for (const auto& [key, value] : out["identity_residuals"].items()) {
      std::cout << key << " = " << value.get<double>() << "\n";
    }
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact Nambu-mechanics toolkit: brackets, vector Hamiltonians, Lax pairs, flows"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--text", opt.text, "Human-readable output instead of JSON");
  app.add_flag("--json", [&](std::int64_t) { opt.text = false; }, "JSON output (default)");
  app.add_option("--tol", opt.tol, "Override numeric tolerances");
  app.add_option("--seed", opt.seed, "Seed for randomized checks");

  auto* verify = app.add_subcommand("verify", "Run every identity check of a scenario");
  verify->add_option("scenario", opt.scenario, "Shipped scenario name or config path")->required();

  auto* bracket = app.add_subcommand("bracket", "Nambu bracket {F1, ..., Fk, G}");
  bracket->add_option("--dim", opt.dim, "Phase-space dimension")->required();
  bracket->add_option("--vars", opt.vars, "Variable names");
  bracket->add_option("--fns", opt.fns, "Hamiltonians F1 .. Fk")->required();
  bracket->add_option("--of", opt.of, "Function G")->required();

  auto* potential = app.add_subcommand("potential", "Vector Hamiltonian of a divergence-free field");
  potential->add_option("--dim", opt.dim, "Phase-space dimension")->required();
  potential->add_option("--vars", opt.vars, "Variable names");
  potential->add_option("--field", opt.field, "Field components")->required();

  auto* flow = app.add_subcommand("flow", "Integrate a flow with RK4 (CSV or JSON)");
  flow->add_option("--scenario", opt.scenario, "Shipped scenario name or config path");
  flow->add_option("--dim", opt.dim, "Phase-space dimension");
  flow->add_option("--vars", opt.vars, "Variable names");
  flow->add_option("--field", opt.field, "Explicit field components");
  flow->add_option("--fns", opt.fns, "Hamiltonians generating the bracket flow");
  flow->add_option("--x0", opt.x0, "Initial state");
  flow->add_option("--t-end", opt.t_end, "Final time");
  flow->add_option("--dt", opt.dt, "Step size");
  flow->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* ring = app.add_subcommand("ring", "Generalized hyperbolic functions and ring identities");
  ring->add_option("--n", opt.ring_n, "Number of levels (>= 2)");
  ring->add_option("--t", opt.ring_t, "Time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(opt);
    if (*bracket) return cmd_bracket(opt);
    if (*potential) return cmd_potential(opt);
    if (*flow) return cmd_flow(opt);
    if (*ring) return cmd_ring(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nambu::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nambu::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nambu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
