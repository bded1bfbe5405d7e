#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relpow/fracderiv.hpp"
#include "relpow/semigroup.hpp"
#include "relpow/verify.hpp"

namespace {

using namespace relpow;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

Complex parse_complex_arg(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("complex values must be written as re,im");
  size_t used = 0;
  double re = std::stod(s.substr(0, comma), &used);
  if (used != comma) throw CLI::ValidationError("bad complex value: " + s);
  double im = std::stod(s.substr(comma + 1), &used);
  if (used != s.size() - comma - 1)
    throw CLI::ValidationError("bad complex value: " + s);
  return Complex(re, im);
}

nlohmann::json matrix_json(const Mat& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      row.push_back({M(r, c).real(), M(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidParams("cannot write output file: " + path);
  out << text;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("RELPOW_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

int cmd_resolve(const std::string& instance, const std::string& lambda_arg,
                const std::string& out) {
  ProblemSpec spec = ProblemSpec::load(instance);
  Complex lambda = parse_complex_arg(lambda_arg);
  Mat R = c_resolvent(spec.relation, spec.C, lambda);
  std::string text = matrix_json(R).dump(2) + "\n";
  if (!out.empty()) write_file(out, text);
  std::cout << text;
  return kExitOk;
}

int cmd_power(const std::string& instance, const std::string& b_arg,
              const std::string& route, int n_moment, double tol,
              const std::string& out) {
  ProblemSpec spec = ProblemSpec::load(instance);
  PowerSpec ps;
  ps.b = parse_complex_arg(b_arg);
  if (route == "contour")
    ps.route = PowerSpec::Route::Contour;
  else if (route == "balakrishnan")
    ps.route = PowerSpec::Route::Balakrishnan;
  else if (route == "moment")
    ps.route = PowerSpec::Route::Moment;
  else
    throw CLI::ValidationError("route must be contour, balakrishnan or "
                               "moment");
  ps.n_moment = n_moment;
  Mat C1 = spec.c1();
  Mat M = neg_power(spec.relation, C1, spec.region, ps, tol);
  nlohmann::json j;
  j["b"] = {ps.b.real(), ps.b.imag()};
  j["route"] = route;
  j["value"] = matrix_json(M);
  j["regularizer"] = matrix_json(C1);
  std::string text = j.dump(2) + "\n";
  if (!out.empty()) write_file(out, text);
  std::cout << text;
  return kExitOk;
}

int cmd_evolve(const std::string& instance, const std::string& kind,
               double beta, double theta, double gamma,
               const std::vector<std::string>& x_args,
               std::vector<double> times, double tol, const std::string& csv,
               const std::string& report) {
  ProblemSpec spec = ProblemSpec::load(instance);
  Mat C1 = spec.c1();
  const int n = spec.relation.dim();

  Vec x = Vec::Ones(n);
  if (!x_args.empty()) {
    if (static_cast<int>(x_args.size()) != n)
      throw CLI::ValidationError("--x must be given once per component");
    for (int i = 0; i < n; ++i) x(i) = parse_complex_arg(x_args[i]);
  }
  if (times.empty()) times = {0.25, 0.5, 0.75, 1.0};

  IncompleteProblem prob;
  prob.beta = beta;
  prob.theta = theta;
  prob.gamma = gamma;
  if (kind == "p2")
    prob.kind = IncompleteProblem::Kind::P2;
  else if (kind == "fp")
    prob.kind = IncompleteProblem::Kind::FPbeta;
  else
    throw CLI::ValidationError("kind must be fp or p2");

  Trajectory traj =
      solve_incomplete(spec.relation, C1, spec.region, prob, x, times, tol);

  std::ostringstream os;
  os << "t";
  for (int i = 0; i < n; ++i) os << ", x" << i << "_re, x" << i << "_im";
  os << "\n";
  os.precision(12);
  for (size_t k = 0; k < traj.times.size(); ++k) {
    os << traj.times[k];
    for (int i = 0; i < n; ++i)
      os << ", " << traj.states[k](i).real() << ", "
         << traj.states[k](i).imag();
    os << "\n";
  }
  if (!csv.empty())
    write_file(csv, os.str());
  else
    std::cout << os.str();

  // Per-run check: the composition law at the first output time, which
  // exercises the full evaluation path independently of the trajectory.
  const double t1 = times.front();
  Mat S1 = prob.kind == IncompleteProblem::Kind::P2
               ? evaluate_sg_half(spec.relation, C1, spec.region, t1, tol)
               : evaluate_sg(spec.relation, C1, spec.region, gamma,
                             t1 * std::exp(Complex(0.0, theta)), tol);
  Mat S2 = prob.kind == IncompleteProblem::Kind::P2
               ? evaluate_sg_half(spec.relation, C1, spec.region, 2 * t1, tol)
               : evaluate_sg(spec.relation, C1, spec.region, gamma,
                             2 * t1 * std::exp(Complex(0.0, theta)), tol);
  double law = (S1 * S1 - S2 * C1).norm() / (1.0 + (S2 * C1).norm());
  nlohmann::json jr;
  jr["kind"] = traj.tag;
  jr["gamma"] = gamma;
  jr["beta"] = beta;
  jr["theta"] = theta;
  jr["law_residual"] = law;
  jr["tol"] = tol;
  jr["pass"] = law <= 100.0 * tol;
  std::string rtext = jr.dump(2) + "\n";
  if (!report.empty()) write_file(report, rtext);
  if (csv.empty() || report.empty()) std::cout << rtext;
  return jr["pass"].get<bool>() ? kExitOk : kExitNumeric;
}

int cmd_verify(const std::string& instance, const std::string& id, double tol,
               const std::string& out, VerifyOptions opts,
               bool include_runtime) {
  ProblemSpec spec = ProblemSpec::load(instance);
  std::vector<ResidualReport> reports;
  if (id == "all")
    reports = verify_all(spec, tol, opts);
  else
    reports.push_back(verify_identity(id, spec, tol, opts));
  std::string text = reports_to_json(reports, include_runtime);
  if (!out.empty()) write_file(out, text);
  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << (r.pass ? "pass  " : "FAIL  ") << r.identity_id
              << "  max_residual=" << r.max_residual << "  tol=" << r.tol
              << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitNumeric;
}

int cmd_certify(const std::string& instance, double bound, double truncation,
                int radial, int transverse, const std::string& out) {
  ProblemSpec spec = ProblemSpec::load(instance);
  GridSpec grid;
  grid.truncation_radius = truncation;
  grid.radial_points = radial;
  grid.transverse_points = transverse;
  RegionCertificate cert =
      region_certify(spec.relation, spec.C, spec.region, bound, grid);
  nlohmann::json j;
  j["sup_weighted_norm"] = cert.sup_weighted_norm;
  j["worst_lambda"] = {cert.worst_lambda.real(), cert.worst_lambda.imag()};
  j["pass"] = cert.pass;
  j["samples"] = cert.samples;
  j["bound"] = bound;
  std::string text = j.dump(2) + "\n";
  if (!out.empty()) write_file(out, text);
  std::cout << text;
  return cert.pass ? kExitOk : kExitNumeric;
}

} // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"relpow: resolvents, fractional powers and semigroups of "
               "linear relations"};
  app.require_subcommand(1);

  std::string instance, out, csv, report;
  std::string lambda_arg, b_arg = "1,0", route = "contour", id = "all";
  std::string kind = "fp";
  int n_moment = 1, radial = 40, transverse = 9;
  double tol = 1e-6, bound = 100.0, truncation = 1e4;
  double beta = 1.0, theta = 0.0, gamma = 0.25;
  std::vector<std::string> x_args;
  std::vector<double> times;
  VerifyOptions vopts;
  bool include_runtime = false;

  auto* resolve = app.add_subcommand("resolve", "evaluate (lambda-A)^{-1} C");
  resolve->add_option("--instance", instance, "problem JSON file")->required();
  resolve->add_option("--lambda", lambda_arg, "point, written re,im")
      ->required();
  resolve->add_option("--out", out, "write the matrix as JSON");

  auto* power = app.add_subcommand("power", "evaluate (-A)^{-b} C1");
  power->add_option("--instance", instance)->required();
  power->add_option("--b", b_arg, "exponent, written re,im");
  power->add_option("--route", route, "contour, balakrishnan or moment");
  power->add_option("--n", n_moment, "moment-route order");
  power->add_option("--tol", tol, "quadrature tolerance");
  power->add_option("--out", out, "write the result as JSON");

  auto* evolve = app.add_subcommand(
      "evolve", "sample a trajectory of an incomplete problem");
  evolve->add_option("--instance", instance)->required();
  evolve->add_option("--kind", kind, "fp (fractional) or p2 (second order)");
  evolve->add_option("--beta", beta);
  evolve->add_option("--theta", theta);
  evolve->add_option("--gamma", gamma);
  evolve->add_option("--x", x_args, "initial state, one re,im per component");
  evolve->add_option("--times", times, "strictly increasing sample times");
  evolve->add_option("--tol", tol);
  evolve->add_option("--csv", csv, "trajectory CSV path");
  evolve->add_option("--report", report, "verification report JSON path");

  auto* verify = app.add_subcommand("verify", "run residual identity suites");
  verify->add_option("--instance", instance)->required();
  verify->add_option("--id", id, "catalog identity name, or all");
  verify->add_option("--tol", tol);
  verify->add_option("--out", out, "report JSON path");
  verify->add_option("--seed", vopts.seed);
  verify->add_option("--samples", vopts.samples);
  verify->add_option("--perturbation", vopts.perturbation,
                     "negative-control perturbation size");
  verify->add_option("--gamma", vopts.gamma);
  verify->add_flag("--include-runtime", include_runtime,
                   "record wall time in the report");

  auto* certify =
      app.add_subcommand("certify", "sample the weighted resolvent bound");
  certify->add_option("--instance", instance)->required();
  certify->add_option("--bound", bound, "admissible sup of the weighted norm");
  certify->add_option("--truncation", truncation);
  certify->add_option("--radial", radial);
  certify->add_option("--transverse", transverse);
  certify->add_option("--out", out, "certificate JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (resolve->parsed()) return cmd_resolve(instance, lambda_arg, out);
    if (power->parsed())
      return cmd_power(instance, b_arg, route, n_moment, tol, out);
    if (evolve->parsed())
      return cmd_evolve(instance, kind, beta, theta, gamma, x_args, times,
                        tol, csv, report);
    if (verify->parsed())
      return cmd_verify(instance, id, tol, out, vopts, include_runtime);
    if (certify->parsed())
      return cmd_certify(instance, bound, truncation, radial, transverse,
                         out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownIdentity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
