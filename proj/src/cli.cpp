#include "orthomorse/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/errors.hpp"
#include "orthomorse/flow.hpp"
#include "orthomorse/io.hpp"
#include "orthomorse/linear.hpp"
#include "orthomorse/quadratic.hpp"
#include "orthomorse/verify.hpp"

namespace orthomorse::cli {
namespace {

using io::json;

constexpr std::size_t kMaxSpmN = 6;

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json index_json(const IndexNullity& in) { return {{"index", in.index}, {"nullity", in.nullity}}; }

json degree_rows(const std::vector<DegreeComparison>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"i", r.degree}, {"lhs", io::to_json(r.lhs)}, {"rhs", io::to_json(r.rhs)}, {"equal", r.equal}});
  return out;
}

// ---- fillings ----

int cmd_fillings(const std::string& path, std::ostream& out) {
  const Margins margins = io::margins_from_json(io::read_json_file(path));
  json list = json::array();
  for (const auto& f : enumerate_fillings(margins))
    list.push_back({{"eps", io::to_json(f)},
                    {"index", filling_index(f)},
                    {"component_dimension", component_dimension(f)}});
  emit(out, {{"command", "fillings"}, {"margins", io::to_json(margins)}, {"count", list.size()}, {"fillings", list}});
  return kExitOk;
}

// ---- betti ----

int cmd_betti(int n, const std::string& format, std::ostream& out) {
  if (n < 1 || n > kMaxEnumerationN)
    throw std::invalid_argument("--n must lie in 1.." + std::to_string(kMaxEnumerationN));
  const IntPolynomial b = poincare_so(n);
  const IntPolynomial c = group_poincare_c(n);
  const int top = static_cast<int>(binomial2(n));
  if (format == "json") {
    json rows = json::array();
    for (int i = 0; i <= top; ++i)
      rows.push_back({{"i", i},
                      {"b_i", io::to_json(b.coefficient(i))},
                      {"c_i", io::to_json(c.coefficient(i))},
                      {"frankel_ok", 2 * b.coefficient(i) == c.coefficient(i)}});
    emit(out, {{"command", "betti"}, {"n", n}, {"rows", rows}});
    return kExitOk;
  }
  out << "i,b_i,c_i,frankel_ok\n";
  for (int i = 0; i <= top; ++i)
    out << i << ',' << b.coefficient(i) << ',' << c.coefficient(i) << ','
        << (2 * b.coefficient(i) == c.coefficient(i) ? "true" : "false") << '\n';
  return kExitOk;
}

// ---- frankel ----

int cmd_frankel(int n, const std::string& iota_name, std::ostream& out) {
  std::vector<IotaConvention> convs;
  if (iota_name == "k" || iota_name == "both") convs.push_back(IotaConvention::KChoose2);
  if (iota_name == "complement" || iota_name == "both") convs.push_back(IotaConvention::ComplementChoose2);
  json reports = json::array();
  bool all = true;
  for (auto conv : convs) {
    const FrankelReport r = frankel_report(n, conv);
    all = all && r.all_equal;
    reports.push_back({{"iota", conv == IotaConvention::KChoose2 ? "k" : "complement"},
                       {"all_equal", r.all_equal},
                       {"rows", degree_rows(r.rows)}});
  }
  emit(out, {{"command", "frankel"}, {"n", n}, {"all_equal", all}, {"reports", reports}});
  return all ? kExitOk : kExitNumerical;
}

// ---- critical ----

json spectra_json(const io::SpectraInput& in) {
  json j = {{"a", io::to_json(in.problem.spec_a())}, {"b", io::to_json(in.problem.spec_b())}};
  if (in.from_matrices) {
    j["reduced_from_matrices"] = true;
    j["eigenvectors_A"] = io::to_json(in.eigenvectors_a);
    j["eigenvectors_B"] = io::to_json(in.eigenvectors_b);
  } else {
    j["sort_order_a"] = in.order_a;
    j["sort_order_b"] = in.order_b;
  }
  return j;
}

json components_json(const QuadraticProblem& prob) {
  json list = json::array();
  for (const auto& f : enumerate_fillings(prob.margins()))
    list.push_back({{"eps", io::to_json(f)},
                    {"index", filling_index(f)},
                    {"component_dimension", component_dimension(f)}});
  return list;
}

// Index map from the sorted diagonal back to the caller's order.
std::vector<std::size_t> sorted_to_input(const std::vector<int>& order, const std::vector<int>& sorted_mults) {
  std::vector<int> input_mults(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) input_mults[static_cast<std::size_t>(order[p])] = sorted_mults[p];
  const auto input_off = block_offsets(input_mults);
  std::vector<std::size_t> map;
  for (int k : order)
    for (int r = 0; r < input_mults[static_cast<std::size_t>(k)]; ++r)
      map.push_back(input_off[static_cast<std::size_t>(k)] + static_cast<std::size_t>(r));
  return map;
}

int cmd_critical(const std::string& spectra_path, bool all_spms, const std::string& decompose_path,
                 double tol, std::ostream& out) {
  const io::SpectraInput in = io::spectra_from_json(io::read_json_file(spectra_path));
  const QuadraticProblem& prob = in.problem;
  json report = {{"command", "critical"}, {"spectra", spectra_json(in)}, {"components", components_json(prob)}};
  bool ok = true;
  if (all_spms) {
    if (prob.n() > kMaxSpmN)
      throw std::invalid_argument("--all-spms supports n <= " + std::to_string(kMaxSpmN));
    json list = json::array();
    for (const auto& sp : all_signed_permutations(prob.n())) {
      const OrthogonalPoint x = spm_matrix(sp);
      const PerfectFilling eps = filling_of_spm(sp, prob.margins());
      const QuadraticForm form = hessian_form_quadratic(prob, x);
      const IndexNullity in_ = index_nullity(form);
      const auto diag = spm_hessian_diagonal(prob, sp);
      double diag_err = 0.0, off_diag = 0.0;
      for (std::size_t r = 0; r < form.h.rows(); ++r)
        for (std::size_t c = 0; c < form.h.cols(); ++c) {
          if (r == c)
            diag_err = std::max(diag_err, std::abs(form.h(r, r) - diag[r]));
          else
            off_diag = std::max(off_diag, std::abs(form.h(r, c)));
        }
      const bool match = in_.index == filling_index(eps) && in_.nullity == component_dimension(eps);
      ok = ok && match;
      list.push_back({{"spm", io::to_json(sp)},
                      {"eps", io::to_json(eps)},
                      {"filling_index", filling_index(eps)},
                      {"component_dimension", component_dimension(eps)},
                      {"hessian", index_json(in_)},
                      {"hessian_diagonal", diag},
                      {"diagonal_error", diag_err},
                      {"max_off_diagonal", off_diag},
                      {"asymmetry_defect", form.asymmetry_defect},
                      {"match", match}});
    }
    report["spms"] = list;
    report["all_match"] = ok;
  }
  if (!decompose_path.empty()) {
    Matrix x_in = io::matrix_from_json(io::read_json_file(decompose_path));
    if (x_in.rows() != prob.n() || x_in.cols() != prob.n())
      throw std::invalid_argument("--decompose matrix must be n x n for the given spectra");
    if (in.from_matrices) {
      x_in = in.eigenvectors_a.transpose() * x_in * in.eigenvectors_b;
    } else {
      const auto rows = sorted_to_input(in.order_a, prob.spec_a().mults);
      const auto cols = sorted_to_input(in.order_b, prob.spec_b().mults);
      Matrix permuted(prob.n(), prob.n());
      for (std::size_t r = 0; r < prob.n(); ++r)
        for (std::size_t c = 0; c < prob.n(); ++c) permuted(r, c) = x_in(rows[r], cols[c]);
      x_in = std::move(permuted);
    }
    const OrthogonalPoint x = OrthogonalPoint::certify(std::move(x_in));
    const CriticalDecomposition dec = decompose_critical(prob, x, tol);
    const OrthogonalPoint back = construct_critical(prob, dec);
    const IndexNullity in_ = index_nullity(hessian_form_quadratic(prob, x));
    json d = io::to_json(dec);
    d["filling_index"] = filling_index(dec.filling);
    d["component_dimension"] = component_dimension(dec.filling);
    d["hessian"] = index_json(in_);
    d["round_trip_error"] = max_abs_diff(back.mat(), x.mat());
    report["decomposition"] = d;
  }
  emit(out, report);
  return ok ? kExitOk : kExitNumerical;
}

// ---- linear ----

int cmd_linear(const std::string& a_path, const std::string& x_path, std::optional<int> grassmann_k,
               std::optional<int> morse_n, double tol, std::ostream& out) {
  json report = {{"command", "linear"}};
  bool ok = true;
  if (!a_path.empty()) {
    const LinearProblem prob(io::matrix_from_json(io::read_json_file(a_path)));
    const std::size_t n = prob.n();
    report["n"] = n;
    auto describe = [&](const OrthogonalPoint& x) {
      json d = {{"X", io::to_json(x.mat())},
                {"value", linear_value(prob, x)},
                {"gradient_max_abs", max_abs(linear_gradient(prob, x))},
                {"critical", is_critical_linear(prob, x, tol)}};
      if (is_critical_linear(prob, x, tol)) {
        const QuadraticForm form = hessian_form_linear(prob, x);
        d["hessian"] = index_json(index_nullity(form));
        d["asymmetry_defect"] = form.asymmetry_defect;
      }
      if (asymmetry(x.mat()) <= tol) {
        const GrassmannPoint l = grassmannian_of_critical(x, tol);
        d["grassmann_k"] = l.k();
        d["subspace_basis"] = io::to_json(l.basis());
      }
      return d;
    };
    if (!x_path.empty())
      report["point"] = describe(OrthogonalPoint::certify(io::matrix_from_json(io::read_json_file(x_path))));
    if (grassmann_k) {
      const int k = *grassmann_k;
      if (k < 0 || k > static_cast<int>(n)) throw std::invalid_argument("--grassmann k must lie in 0..n");
      std::vector<double> d(n, 1.0);
      for (int i = 0; i < k; ++i) d[i] = -1.0;
      json g = describe(OrthogonalPoint::certify(Matrix::diagonal(d), 0.0));
      g["k"] = k;
      g["complement_choose_2"] = binomial2(static_cast<long long>(n) - k);
      report["grassmann"] = g;
    }
  } else if (!x_path.empty() || grassmann_k) {
    throw std::invalid_argument("--X and --grassmann need --A");
  }
  if (morse_n) {
    const MorseInequalityReport r = morse_inequality_report(*morse_n);
    ok = ok && r.all_equal;
    report["morse_report"] = {{"n", r.n}, {"all_equal", r.all_equal}, {"rows", degree_rows(r.rows)}};
  }
  emit(out, report);
  return ok ? kExitOk : kExitNumerical;
}

// ---- flow ----

struct FlowArgs {
  std::string f = "nn";
  std::string spectra;
  int n = 0;
  std::uint64_t seed = 0;
  int count = 1;
  std::string direction = "forward";
  FlowParams params;
};

int cmd_flow(const FlowArgs& args, std::ostream& out) {
  std::optional<QuadraticProblem> quad;
  std::size_t n = static_cast<std::size_t>(std::max(args.n, 0));
  if (args.f == "quad") {
    if (args.spectra.empty()) throw std::invalid_argument("--f quad needs --spectra");
    quad = io::spectra_from_json(io::read_json_file(args.spectra)).problem;
    if (args.n != 0 && static_cast<std::size_t>(args.n) != quad->n())
      throw std::invalid_argument("--n differs from the size of the spectra");
    n = quad->n();
  }
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  if (args.count < 1) throw std::invalid_argument("--count must be positive");
  args.params.validate();
  const LinearProblem trace_problem(Matrix::identity(n));
  Matrix corner(n, n);
  corner(n - 1, n - 1) = 1.0;
  // X_nn = Tr(corner^T X), so the linear Hessian applies.
  const LinearProblem corner_problem(corner);
  const Objective obj = args.f == "nn"      ? fnn_objective(n)
                        : args.f == "trace" ? linear_objective(trace_problem)
                                            : quadratic_objective(*quad);
  std::vector<Direction> dirs;
  if (args.direction != "backward") dirs.push_back(Direction::Forward);
  if (args.direction != "forward") dirs.push_back(Direction::Backward);

  std::mt19937_64 rng(args.seed);
  json list = json::array();
  for (int c = 0; c < args.count; ++c) {
    const OrthogonalPoint x0 = haar_orthogonal(n, rng, args.f == "nn");
    for (Direction dir : dirs) {
      FlowParams params = args.params;
      params.record_every = params.max_steps;
      const Trajectory tr = flow(obj, x0, params, dir);
      json t = {{"start", c},
                {"direction", dir == Direction::Forward ? "forward" : "backward"},
                {"converged", tr.converged},
                {"steps", tr.steps},
                {"final_grad", tr.final_grad},
                {"value", tr.values.back()}};
      if (tr.limit) {
        const OrthogonalPoint& lim = *tr.limit;
        t["limit"] = io::to_json(lim.mat());
        if (args.f == "nn") {
          const bool top = lim(n - 1, n - 1) > 0;
          t["classification"] = {{"component", top ? "max" : "min"},
                                 {"so_n_minus_1", io::to_json(top ? identify_max_component(lim.mat())
                                                                  : identify_min_component(lim.mat()))}};
          t["hessian"] = index_json(index_nullity(hessian_form_linear(corner_problem, lim)));
        } else if (args.f == "trace") {
          const GrassmannPoint l = grassmannian_of_critical(lim, 1e-8);
          t["classification"] = {{"grassmann_k", l.k()}};
          t["hessian"] = index_json(index_nullity(hessian_form_linear(trace_problem, lim)));
        } else {
          const CriticalDecomposition dec = decompose_critical(*quad, lim, 1e-6 * std::max(1.0, quad->magnitude()));
          t["classification"] = {{"eps", io::to_json(dec.filling)},
                                 {"filling_index", filling_index(dec.filling)},
                                 {"component_dimension", component_dimension(dec.filling)}};
          t["hessian"] = index_json(index_nullity(hessian_form_quadratic(*quad, lim)));
        }
      }
      list.push_back(std::move(t));
    }
  }
  emit(out, {{"command", "flow"},
             {"f", args.f},
             {"n", n},
             {"seed", args.seed},
             {"count", args.count},
             {"params",
              {{"step", args.params.step},
               {"grad_tol", args.params.grad_tol},
               {"max_steps", args.params.max_steps},
               {"reproject_every", args.params.reproject_every}}},
             {"trajectories", list}});
  return kExitOk;
}

// ---- prop-main ----

int cmd_prop_main(int n, int samples, std::uint64_t seed, double tol, std::ostream& out) {
  if (n < 3) throw std::invalid_argument("--n must be at least 3");
  if (samples < 1) throw std::invalid_argument("--samples must be positive");
  std::mt19937_64 rng(seed);
  long long passed = 0;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double dev = prop_main_deviation(sample_level_set(n, rng));
    worst = std::max(worst, dev);
    if (dev <= tol) ++passed;
  }
  emit(out, {{"command", "prop-main"},
             {"n", n},
             {"seed", seed},
             {"samples", samples},
             {"tol", tol},
             {"passed", passed},
             {"failed", samples - passed},
             {"max_deviation", worst}});
  return passed == samples ? kExitOk : kExitNumerical;
}

// ---- verify ----

int cmd_verify(std::uint64_t seed, const std::string& module, bool timings, std::ostream& out) {
  const auto results = run_verify({seed, module});
  json list = json::array();
  bool all = !results.empty();
  for (const auto& r : results) {
    json j = {{"module", r.module}, {"property", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    if (timings) j["seconds"] = r.seconds;
    list.push_back(std::move(j));
    all = all && r.passed;
  }
  emit(out, {{"command", "verify"}, {"seed", seed}, {"all_passed", all}, {"properties", list}});
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morse-Bott structure of trace functions on orthogonal groups"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string margins_path;
  auto* fillings = app.add_subcommand("fillings", "Enumerate perfect fillings with given margins");
  fillings->add_option("--margins", margins_path, "JSON file {\"m\": [..], \"n\": [..]}")->required();
  fillings->callback([&] { action = [&] { return cmd_fillings(margins_path, out); }; });

  int betti_n = 0;
  std::string betti_format = "csv";
  auto* betti = app.add_subcommand("betti", "Mod-2 Betti numbers b_i(n) of SO(n) and c_i(n) of O(n)");
  betti->add_option("--n", betti_n, "Matrix size n")->required();
  betti->add_option("--format", betti_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  betti->callback([&] { action = [&] { return cmd_betti(betti_n, betti_format, out); }; });

  int frankel_n = 0;
  std::string frankel_iota = "both";
  auto* frankel = app.add_subcommand("frankel", "Compare 2 b_i(n) with the Grassmannian sum in every degree");
  frankel->add_option("--n", frankel_n, "Matrix size n")->required();
  frankel->add_option("--iota", frankel_iota, "Index shift: k (C(k,2)), complement (C(n-k,2)) or both")
      ->check(CLI::IsMember({"k", "complement", "both"}));
  frankel->callback([&] { action = [&] { return cmd_frankel(frankel_n, frankel_iota, out); }; });

  std::string crit_spectra, crit_decompose;
  bool crit_all = false;
  double crit_tol = 1e-8;
  auto* critical = app.add_subcommand("critical", "Critical components of Tr(AXBX^T)");
  critical->add_option("--spectra", crit_spectra, "JSON spectra or symmetric matrices A, B")->required();
  auto* all_opt = critical->add_flag("--all-spms", crit_all, "Hessian diagnostics at every signed permutation matrix");
  critical->add_option("--decompose", crit_decompose, "JSON matrix X to decompose")->excludes(all_opt);
  critical->add_option("--tol", crit_tol, "Criticality tolerance for --decompose");
  critical->callback([&] {
    action = [&] { return cmd_critical(crit_spectra, crit_all, crit_decompose, crit_tol, out); };
  });

  std::string lin_a, lin_x;
  std::optional<int> lin_k, lin_morse;
  double lin_tol = 1e-8;
  auto* linear = app.add_subcommand("linear", "Critical points and Hessians of Tr(A^T X)");
  linear->add_option("--A", lin_a, "JSON matrix A");
  auto* x_opt = linear->add_option("--X", lin_x, "JSON orthogonal matrix X to analyse");
  linear->add_option("--grassmann", lin_k, "Analyse X = -I_k + I_(n-k) for this k")->excludes(x_opt);
  linear->add_option("--morse-report", lin_morse, "Morse inequality report for SO(n)");
  linear->add_option("--tol", lin_tol, "Criticality and symmetry tolerance");
  linear->callback([&] {
    if (lin_a.empty() && !lin_morse) throw CLI::ValidationError("linear", "give --A or --morse-report");
    action = [&] { return cmd_linear(lin_a, lin_x, lin_k, lin_morse, lin_tol, out); };
  });

  FlowArgs fa;
  auto* flow_cmd = app.add_subcommand("flow", "Integrate gradient flows from Haar-random starts");
  flow_cmd->add_option("--f", fa.f, "nn (X_nn on SO(n)), trace (Tr X on O(n)) or quad")
      ->check(CLI::IsMember({"nn", "trace", "quad"}));
  flow_cmd->add_option("--spectra", fa.spectra, "JSON spectra for --f quad");
  flow_cmd->add_option("--n", fa.n, "Matrix size (taken from the spectra for quad)");
  flow_cmd->add_option("--seed", fa.seed, "Random seed")->required();
  flow_cmd->add_option("--count", fa.count, "Number of random starts");
  flow_cmd->add_option("--direction", fa.direction, "forward, backward or both")
      ->check(CLI::IsMember({"forward", "backward", "both"}));
  flow_cmd->add_option("--step", fa.params.step, "Initial step size");
  flow_cmd->add_option("--grad-tol", fa.params.grad_tol, "Stop when max|grad f| falls below this");
  flow_cmd->add_option("--max-steps", fa.params.max_steps, "Step limit per trajectory");
  flow_cmd->add_option("--reproject-every", fa.params.reproject_every, "Polar reprojection period in steps");
  flow_cmd->callback([&] { action = [&] { return cmd_flow(fa, out); }; });

  int pm_n = 4, pm_samples = 1000;
  std::uint64_t pm_seed = 0;
  double pm_tol = 1e-9;
  auto* prop = app.add_subcommand("prop-main", "Monte-Carlo check of s t^-1 = r(pi) on the level set X_nn = 0");
  prop->add_option("--n", pm_n, "Matrix size n >= 3")->required();
  prop->add_option("--samples", pm_samples, "Number of level-set samples");
  prop->add_option("--seed", pm_seed, "Random seed")->required();
  prop->add_option("--tol", pm_tol, "Max-abs tolerance");
  prop->callback([&] { action = [&] { return cmd_prop_main(pm_n, pm_samples, pm_seed, pm_tol, out); }; });

  std::uint64_t v_seed = 0;
  std::string v_module;
  bool v_timings = false;
  auto* verify = app.add_subcommand("verify", "Run the property suite of every module");
  verify->add_option("--seed", v_seed, "Random seed")->required();
  verify->add_option("--module", v_module, "Run one module only")
      ->check(CLI::IsMember({"matrix-core", "combinatorics", "quadratic-trace", "linear-trace", "flow"}));
  verify->add_flag("--timings", v_timings, "Include per-property wall time");
  verify->callback([&] { action = [&] { return cmd_verify(v_seed, v_module, v_timings, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    return action();
  } catch (const numerical_error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const io::json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace orthomorse::cli
