#include "otcli/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ot/auction.hpp"
#include "ot/error.hpp"
#include "ot/parallel.hpp"
#include "ot/sd_entropic.hpp"
#include "ot/semidiscrete.hpp"
#include "ot/sinkhorn.hpp"
#include "ot/trace.hpp"
#include "otcli/bench.hpp"
#include "otcli/io.hpp"
#include "otcli/svg.hpp"

namespace otcli {

namespace {

struct Common {
  std::uint64_t seed = 0;
  int threads = 1;
  bool timing = false;
  std::string out;
};

struct AssignArgs {
  std::string cost;
  std::optional<double> epsilon;
  std::optional<double> eta;
  std::string trace;
};

struct SinkhornArgs {
  std::string mu, nu, cost;
  double eta = 1.0;
  double tol = 1e-9;
  int max_iter = 100000;
  std::string log;
  std::string plan_out;
};

struct SemidiscreteArgs {
  std::string sites, density, nu;
  std::string method = "newton";
  double delta = 1e-3;
  double eta_tol = 1e-8;
  std::optional<int> max_iter;
  std::string trace;
  std::string psi_out;
  std::string svg;
};

struct EntropicArgs {
  std::string sites, density, nu;
  double eta = 0.05;
  double tol = 1e-8;
  int quad_level = -1;
  std::optional<int> max_iter;
  std::string trace;
  std::string psi_out;
};

struct RenderArgs {
  std::string sites, density, psi, svg;
};

// JSON result to --out or the output stream.
void emit(const json& j, const Common& c, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    write_text(c.out, text);
  }
}

void write_trace(const std::string& path, const std::vector<ot::TraceRow>& rows, const Common& c) {
  if (!path.empty()) write_text(path, ot::trace_csv(rows, c.timing));
}

ot::Vec target_or_uniform(const std::string& path, std::size_t n) {
  if (path.empty()) return ot::Vec::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  const ot::DiscreteMeasure m = measure_from_json(read_json(path), path);
  if (static_cast<std::size_t>(m.size()) != n)
    throw ot::InputError(path + ": expected " + std::to_string(n) + " weights, one per site");
  return m.weights();
}

int assign(const AssignArgs& a, const Common& c, std::ostream& out) {
  const ot::CostMatrix cost = cost_from_json(read_json(a.cost), a.cost);
  if (cost.rows() != cost.cols())
    throw ot::InputError(a.cost + ": assignment needs a square cost matrix");
  const auto n = static_cast<std::size_t>(cost.rows());
  json j;
  if (a.eta) {
    const ot::ScaledAuctionResult r = ot::auction_scaled(cost, *a.eta);
    write_trace(a.trace, ot::trace_rows(r, n), c);
    j["sigma"] = r.sigma;
    j["psi"] = to_json(r.psi);
    j["cost"] = ot::assignment_cost(r.sigma, cost);
    j["epsilon"] = r.final_epsilon();
    j["runs"] = r.runs.size();
    j["steps"] = r.total_steps();
  } else {
    const double eps = a.epsilon.value_or(1e-2);
    const ot::AuctionResult r = ot::auction(cost, eps);
    write_trace(a.trace, ot::trace_rows(r.trace, n), c);
    j["sigma"] = r.sigma;
    j["psi"] = to_json(r.psi);
    j["cost"] = ot::assignment_cost(r.sigma, cost);
    j["epsilon"] = eps;
    j["steps"] = r.trace.steps.size();
  }
  emit(j, c, out);
  return kExitOk;
}

int sinkhorn(const SinkhornArgs& a, const Common& c, std::ostream& out) {
  const ot::DiscreteMeasure mu = measure_from_json(read_json(a.mu), a.mu);
  const ot::DiscreteMeasure nu = measure_from_json(read_json(a.nu), a.nu);
  const ot::CostMatrix cost = cost_from_json(read_json(a.cost), a.cost);
  ot::SinkhornConfig cfg;
  cfg.eta = a.eta;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  const ot::SinkhornResult r = ot::sinkhorn_solve(mu, nu, cost, cfg);
  write_trace(a.log, ot::trace_rows(r.log), c);
  const ot::PlanReport rep = ot::plan_diagnostics(r.plan, mu, nu, cost);
  if (!a.plan_out.empty()) write_text(a.plan_out, json{{"plan", to_json(r.plan.entries)}}.dump(2) + "\n");
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.log.iterations.size();
  j["eta"] = a.eta;
  j["phi"] = to_json(r.phi);
  j["psi"] = to_json(r.psi);
  j["cost"] = rep.cost;
  j["row_residual"] = rep.row_residual;
  j["col_residual"] = rep.col_residual;
  emit(j, c, out);
  return r.converged ? kExitOk : kExitNotConverged;
}

int semidiscrete(const SemidiscreteArgs& a, const Common& c, std::ostream& out) {
  const ot::SiteSet sites = sites_from_json(read_json(a.sites), a.sites);
  const ot::PolygonalDensity rho = density_from_json(read_json(a.density), a.density);
  const ot::Vec nu = target_or_uniform(a.nu, sites.size());

  ot::Vec psi;
  ot::Vec masses;
  bool converged = false;
  std::size_t iterations = 0;
  if (a.method == "op") {
    ot::OPConfig cfg;
    cfg.delta = a.delta;
    if (a.max_iter) cfg.max_steps = *a.max_iter;
    const ot::OPResult r = ot::oliker_prussner(sites, rho, nu, cfg);
    write_trace(a.trace, ot::trace_rows(r.trace), c);
    psi = r.psi;
    masses = r.masses;
    converged = r.converged;
    iterations = r.trace.steps.size();
  } else {
    ot::NewtonConfig cfg;
    cfg.eta_tol = a.eta_tol;
    if (a.max_iter) cfg.max_iters = *a.max_iter;
    const ot::NewtonResult r = ot::damped_newton(sites, rho, nu, ot::Vec::Zero(static_cast<Eigen::Index>(sites.size())), cfg);
    write_trace(a.trace, ot::trace_rows(r.trace), c);
    psi = r.psi;
    masses = r.masses;
    converged = r.converged;
    iterations = r.trace.steps.size();
  }
  if (!a.psi_out.empty()) write_text(a.psi_out, json{{"psi", to_json(psi)}}.dump(2) + "\n");
  if (!a.svg.empty()) {
    const ot::LaguerreDiagram d = ot::build_diagram(sites, psi, rho);
    write_text(a.svg, render_svg(d, ot::cell_masses(d, rho), rho));
  }
  json j;
  j["method"] = a.method;
  j["converged"] = converged;
  j["iterations"] = iterations;
  j["psi"] = to_json(psi);
  j["masses"] = to_json(masses);
  j["residual_inf"] = (masses - nu).cwiseAbs().maxCoeff();
  emit(j, c, out);
  return converged ? kExitOk : kExitNotConverged;
}

int sd_entropic(const EntropicArgs& a, const Common& c, std::ostream& out) {
  const ot::SiteSet sites = sites_from_json(read_json(a.sites), a.sites);
  const ot::PolygonalDensity rho = density_from_json(read_json(a.density), a.density);
  const ot::Vec nu = target_or_uniform(a.nu, sites.size());
  ot::SdEntropicConfig cfg;
  cfg.quad_level = a.quad_level;
  if (a.max_iter) cfg.newton.max_iters = *a.max_iter;
  const ot::SdEntropicResult r = ot::sd_entropic_solve(sites, rho, nu, a.eta, a.tol, cfg);
  write_trace(a.trace, ot::trace_rows(r.trace), c);
  if (!a.psi_out.empty()) write_text(a.psi_out, json{{"psi", to_json(r.psi)}}.dump(2) + "\n");
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.trace.steps.size();
  j["eta"] = a.eta;
  j["psi"] = to_json(r.psi);
  j["masses"] = to_json(r.masses);
  j["residual_inf"] = (r.masses - nu).cwiseAbs().maxCoeff();
  j["quad_level"] = r.quad_level;
  j["quad_estimate"] = r.quad_estimate;
  emit(j, c, out);
  return r.converged ? kExitOk : kExitNotConverged;
}

int render(const RenderArgs& a) {
  const ot::SiteSet sites = sites_from_json(read_json(a.sites), a.sites);
  const ot::PolygonalDensity rho = density_from_json(read_json(a.density), a.density);
  ot::Vec psi = ot::Vec::Zero(static_cast<Eigen::Index>(sites.size()));
  if (!a.psi.empty()) {
    psi = potential_from_json(read_json(a.psi), a.psi);
    if (static_cast<std::size_t>(psi.size()) != sites.size())
      throw ot::InputError(a.psi + ": expected " + std::to_string(sites.size()) + " prices, one per site");
  }
  const ot::LaguerreDiagram d = ot::build_diagram(sites, psi, rho);
  write_text(a.svg, render_svg(d, ot::cell_masses(d, rho), rho));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete and semi-discrete optimal transport solvers", "otsolve"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Seed for generated instances")->default_val(0);
  app.add_option("--threads", common.threads, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);
  app.add_flag("--timing", common.timing, "Record wall_ns in CSV traces (breaks byte-identical output)");

  AssignArgs as;
  auto* assign_cmd = app.add_subcommand("assign", "Auction algorithm for the assignment problem");
  assign_cmd->add_option("--cost", as.cost, "Cost JSON {\"matrix\": [[...]]}")->required()->check(CLI::ExistingFile);
  auto* eps_opt = assign_cmd->add_option("--epsilon", as.epsilon, "Bid increment (default 0.01)")->check(CLI::PositiveNumber);
  assign_cmd->add_option("--eta", as.eta, "Target accuracy; enables epsilon-scaling")
      ->check(CLI::PositiveNumber)
      ->excludes(eps_opt);
  assign_cmd->add_option("--trace", as.trace, "CSV trace output");
  assign_cmd->add_option("--out", common.out, "JSON result file (default stdout)");

  SinkhornArgs sk;
  auto* sink_cmd = app.add_subcommand("sinkhorn", "Entropic OT by Sinkhorn iterations");
  sink_cmd->add_option("--mu", sk.mu, "Source measure JSON")->required()->check(CLI::ExistingFile);
  sink_cmd->add_option("--nu", sk.nu, "Target measure JSON")->required()->check(CLI::ExistingFile);
  sink_cmd->add_option("--cost", sk.cost, "Cost JSON")->required()->check(CLI::ExistingFile);
  sink_cmd->add_option("--eta", sk.eta, "Regularization")->capture_default_str()->check(CLI::PositiveNumber);
  sink_cmd->add_option("--tol", sk.tol, "Stop when the osc-norm update is below")->capture_default_str()->check(CLI::PositiveNumber);
  sink_cmd->add_option("--max-iter", sk.max_iter, "Iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
  sink_cmd->add_option("--log", sk.log, "CSV trace output");
  sink_cmd->add_option("--plan-out", sk.plan_out, "Plan JSON output");
  sink_cmd->add_option("--out", common.out, "JSON result file (default stdout)");

  SemidiscreteArgs sd;
  auto* sd_cmd = app.add_subcommand("semidiscrete", "Semi-discrete OT, cost 1/2 |x - y|^2");
  sd_cmd->add_option("--sites", sd.sites, "Sites JSON")->required()->check(CLI::ExistingFile);
  sd_cmd->add_option("--density", sd.density, "Density JSON")->required()->check(CLI::ExistingFile);
  sd_cmd->add_option("--nu", sd.nu, "Target weights JSON (default uniform)")->check(CLI::ExistingFile);
  sd_cmd->add_option("--method", sd.method, "Solver")->capture_default_str()->check(CLI::IsMember({"op", "newton"}));
  sd_cmd->add_option("--delta", sd.delta, "Oliker-Prussner accuracy")->capture_default_str()->check(CLI::PositiveNumber);
  sd_cmd->add_option("--eta-tol", sd.eta_tol, "Newton residual target")->capture_default_str()->check(CLI::PositiveNumber);
  sd_cmd->add_option("--max-iter", sd.max_iter, "Step or iteration cap")->check(CLI::PositiveNumber);
  sd_cmd->add_option("--trace", sd.trace, "CSV trace output");
  sd_cmd->add_option("--psi-out", sd.psi_out, "Potential JSON output");
  sd_cmd->add_option("--svg", sd.svg, "SVG diagram output");
  sd_cmd->add_option("--out", common.out, "JSON result file (default stdout)");

  EntropicArgs en;
  auto* en_cmd = app.add_subcommand("sd-entropic", "Entropic semi-discrete OT");
  en_cmd->add_option("--sites", en.sites, "Sites JSON")->required()->check(CLI::ExistingFile);
  en_cmd->add_option("--density", en.density, "Density JSON")->required()->check(CLI::ExistingFile);
  en_cmd->add_option("--nu", en.nu, "Target weights JSON (default uniform)")->check(CLI::ExistingFile);
  en_cmd->add_option("--eta", en.eta, "Regularization (>= 1e-4)")->capture_default_str()->check(CLI::PositiveNumber);
  en_cmd->add_option("--tol", en.tol, "Residual target")->capture_default_str()->check(CLI::PositiveNumber);
  en_cmd->add_option("--quad-level", en.quad_level, "Quadrature refinement, -1 = adaptive")->capture_default_str();
  en_cmd->add_option("--max-iter", en.max_iter, "Newton iteration cap")->check(CLI::PositiveNumber);
  en_cmd->add_option("--trace", en.trace, "CSV trace output");
  en_cmd->add_option("--psi-out", en.psi_out, "Potential JSON output");
  en_cmd->add_option("--out", common.out, "JSON result file (default stdout)");

  RenderArgs rd;
  auto* render_cmd = app.add_subcommand("render", "Draw a Laguerre diagram as SVG");
  render_cmd->add_option("--sites", rd.sites, "Sites JSON")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--density", rd.density, "Density JSON")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--psi", rd.psi, "Potential JSON (default zero)")->check(CLI::ExistingFile);
  render_cmd->add_option("--svg", rd.svg, "SVG output")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Iteration counts on the fixed seed suite");
  bench_cmd->add_option("--out", common.out, "CSV output (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    ot::set_num_threads(common.threads);
    if (*assign_cmd) return assign(as, common, out);
    if (*sink_cmd) return sinkhorn(sk, common, out);
    if (*sd_cmd) return semidiscrete(sd, common, out);
    if (*en_cmd) return sd_entropic(en, common, out);
    if (*render_cmd) return render(rd);
    if (*bench_cmd) {
      const std::string csv = bench_suite_csv(common.seed);
      if (common.out.empty()) {
        out << csv;
      } else {
        write_text(common.out, csv);
      }
      return kExitOk;
    }
  } catch (const ot::InputError& e) {
    err << "otsolve: input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ot::ParameterError& e) {
    err << "otsolve: invalid parameter: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ot::Error& e) {
    // Singular systems, failed line searches, unreachable targets.
    err << "otsolve: solver failed: " << e.what() << '\n';
    return kExitNotConverged;
  }
  return kExitInputError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace otcli
