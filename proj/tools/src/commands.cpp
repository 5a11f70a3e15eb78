#include "nadiv/cli/commands.hpp"

#include "nadiv/classify.hpp"
#include "nadiv/cli/dsl.hpp"
#include "nadiv/cli/io.hpp"
#include "nadiv/constructions.hpp"
#include "nadiv/identities.hpp"
#include "nadiv/lie.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>

namespace nadiv::cli {

using Json = nlohmann::ordered_json;

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json mat_json(const Mat& M) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) a.push_back(vec_json(M.row(r).transpose()));
  return a;
}

Json pairs_json(const std::vector<std::pair<std::string, double>>& kv) {
  Json o = Json::object();
  for (const auto& [k, v] : kv) o[k] = v;
  return o;
}

Json verdict_json(const DivisionVerdict& v) {
  Json j;
  j["status"] = status_name(v.status);
  j["method"] = method_name(v.method);
  if (v.zero_pair) {
    j["zero_pair"] = {vec_json(v.zero_pair->first), vec_json(v.zero_pair->second)};
    j["zero_pair_residual"] = v.zero_pair_residual;
  }
  if (v.sign_change) {
    j["sign_change"] = {vec_json(v.sign_change->first), vec_json(v.sign_change->second)};
    j["sign_change_operator"] = v.sign_change_right ? "R" : "L";
  }
  if (v.bound) j["bound"] = *v.bound;
  if (!v.inputs.empty()) j["inputs"] = pairs_json(v.inputs);
  return j;
}

Json invariants_json(const InvariantVector& inv) {
  Json j;
  j["dim"] = inv.dim;
  j["unital"] = inv.unital;
  Json ids = Json::object();
  for (std::size_t i = 0; i < inv.identities.size(); ++i)
    ids[std::string(identity_name(all_identities()[i]))] = static_cast<bool>(inv.identities[i]);
  j["identities"] = ids;
  j["division"] = status_name(inv.division);
  j["der_dim"] = inv.der_dim;
  j["der_label"] = inv.der_label;
  j["module_dims"] = inv.module_dims;
  if (inv.mutation_param) j["mutation_param"] = *inv.mutation_param;
  if (inv.isotopy_spectrum) j["isotopy_spectrum"] = *inv.isotopy_spectrum;
  return j;
}

/// Shared state of one invocation.
struct Context {
  std::ostream& out;
  std::ostream& err;
  std::uint64_t seed;
  Json report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  int finish(int code) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["exit_code"] = code;
    report["timing_ms"] = ms;
    out << report.dump(2) << "\n";
    return code;
  }
};

/// Isotopy matrix recorded by an isotope(O,@file) provenance, if readable.
std::optional<Mat> isotopy_matrix(const Algebra& A) {
  try {
    DslNode n = parse_dsl(A.provenance());
    if (n.kind == DslNode::Kind::call && n.name == "isotope" && n.args[0].kind == DslNode::Kind::call &&
        n.args[0].name == "O")
      return read_matrix_file(n.args[1].name);
  } catch (const AlgebraError&) {
  }
  return std::nullopt;
}

int cmd_new(Context& ctx, const std::string& expr, const std::string& out_path) {
  Algebra A = build_from_dsl(expr);
  ctx.report["expression"] = expr;
  ctx.report["provenance"] = A.provenance();
  ctx.report["dim"] = A.dim();
  if (!out_path.empty()) {
    write_algebra_file(out_path, A);
    ctx.report["output"] = out_path;
    ctx.err << "wrote " << A.dim() << "-dimensional algebra " << A.provenance() << " to " << out_path << "\n";
    return ctx.finish(kExitOk);
  }
  // Without -o the algebra file itself is the output.
  ctx.out << algebra_to_json(A);
  return kExitOk;
}

int cmd_check(Context& ctx, const std::string& file, const std::vector<std::string>& names, int samples) {
  Algebra A = read_algebra_file(file);
  std::vector<Identity> which;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    which = all_identities();
  } else {
    for (const auto& n : names) which.push_back(parse_identity(n));
  }
  ctx.report["input"] = file;
  ctx.report["samples"] = samples;
  Json checks = Json::array();
  int failed = 0;
  for (Identity id : which) {
    IdentityResult r = check_identity(A, id, samples, ctx.seed);
    Json c;
    c["name"] = identity_name(id);
    c["verdict"] = r.holds ? "holds" : "fails";
    c["max_residual"] = r.max_residual;
    if (!r.holds) {
      Json w = Json::array();
      for (const Vec& x : r.witness) w.push_back(vec_json(x));
      c["witness"] = w;
      c["witness_residual"] = r.witness_residual;
      ++failed;
    }
    ctx.err << identity_name(id) << ": " << (r.holds ? "holds" : "fails") << "\n";
    checks.push_back(c);
  }
  ctx.report["checks"] = checks;
  return ctx.finish(failed ? kExitViolation : kExitOk);
}

int cmd_division(Context& ctx, const std::string& file, int samples, const std::string& criterion) {
  Algebra A = read_algebra_file(file);
  ctx.report["input"] = file;
  ctx.report["samples"] = samples;
  DivisionVerdict v = zero_divisor_search(A, samples, ctx.seed);
  Json numeric = verdict_json(v);
  numeric["recheck"] = v.status == DivisionVerdict::Status::not_division ? recheck_certificate(A, v) : true;
  ctx.report["numeric"] = numeric;
  ctx.err << "numeric: " << status_name(v.status) << "\n";

  bool disagreement = false;
  if (criterion == "auto") {
    std::optional<ClosedForm> cf = closed_form_for(A);
    if (cf) {
      Json c;
      c["criterion"] = cf->criterion;
      c["verdict"] = cf->verdict ? "division" : "not_division";
      c["inputs"] = pairs_json(cf->inputs);
      ctx.report["closed_form"] = c;
      using S = DivisionVerdict::Status;
      disagreement = (v.status == S::division && !cf->verdict) || (v.status == S::not_division && cf->verdict);
      ctx.err << "closed form (" << cf->criterion << "): " << (cf->verdict ? "division" : "not_division") << "\n";
    } else {
      ctx.report["closed_form"] = nullptr;
    }
  }
  ctx.report["disagreement"] = disagreement;
  if (disagreement) ctx.err << "WARNING: closed form and numeric verdicts disagree\n";
  if (auto warn = hopf_gate(A, v.status == DivisionVerdict::Status::division)) {
    ctx.report["warning"] = *warn;
    ctx.err << "WARNING: " << *warn << "\n";
  }
  const bool violation = disagreement || v.status == DivisionVerdict::Status::not_division;
  return ctx.finish(violation ? kExitViolation : kExitOk);
}

int cmd_der(Context& ctx, const std::string& file, bool modules) {
  Algebra A = read_algebra_file(file);
  DerivationAlgebra D = derivation_basis(A);
  ctx.report["input"] = file;
  ctx.report["dim"] = D.dim;
  ctx.report["label"] = D.label_text;
  ctx.report["kept_singular"] = D.kept_singular;
  ctx.report["dropped_singular"] = D.dropped_singular;
  ctx.report["closure_residual"] = D.closure_residual;
  Json basis = Json::array();
  for (const Mat& M : D.basis) basis.push_back(mat_json(M));
  ctx.report["basis"] = basis;
  if (modules) {
    if (D.dim == 0) {
      ctx.report["modules"] = nullptr;
    } else {
      ctx.report["modules"] = der_module_decomposition(A, D, ctx.seed);
    }
  }
  ctx.err << "Der dim " << D.dim << " (" << D.label_text << ")\n";
  return ctx.finish(kExitOk);
}

int cmd_compare(Context& ctx, const std::string& fa, const std::string& fb, const std::string& witness) {
  Algebra A = read_algebra_file(fa);
  Algebra B = read_algebra_file(fb);
  InvariantOptions oa, ob;
  oa.seed = ob.seed = ctx.seed;
  oa.isotopy_phi = isotopy_matrix(A);
  ob.isotopy_phi = isotopy_matrix(B);
  CompareResult r = compare(A, B, oa, ob);
  ctx.report["inputs"] = {fa, fb};
  ctx.report["result"] = r.distinguished ? "distinguished" : "compatible";
  if (r.distinguished) ctx.report["reason"] = r.reason;
  ctx.report["invariants_a"] = invariants_json(r.a);
  ctx.report["invariants_b"] = invariants_json(r.b);
  ctx.err << (r.distinguished ? "distinguished by " + r.reason : std::string("compatible (not a proof of isomorphism)"))
          << "\n";
  int code = kExitOk;
  if (!witness.empty()) {
    Mat F = read_matrix_file(witness);
    if (F.rows() != B.dim() || F.cols() != A.dim()) throw AlgebraError("witness has the wrong shape");
    const bool ok = verify_iso_witness(A, B, F);
    ctx.report["witness"] = {{"file", witness},
                             {"verified", ok},
                             {"homomorphism_residual", homomorphism_residual(A, B, F)}};
    ctx.err << "witness " << (ok ? "verified" : "rejected") << "\n";
    if (!ok) code = kExitViolation;
  }
  return ctx.finish(code);
}

int cmd_canonical(Context& ctx, const std::string& file) {
  Algebra A = read_algebra_file(file);
  CanonicalReduction r = canonical_table1_reduction(A, ctx.seed);
  ctx.report["input"] = file;
  Json p = Json::object();
  auto arr = r.params.to_array();
  for (std::size_t i = 0; i < arr.size(); ++i) p[Table1Params::kNames[i]] = arr[i];
  ctx.report["params"] = p;
  ctx.report["basis"] = mat_json(r.basis);
  ctx.report["residual"] = r.residual;
  ctx.report["sup_value"] = r.sup_value;
  ctx.report["division_criterion"] = table1_division_criterion(r.params);
  ctx.err << "rebuilt table matches to " << r.residual << "\n";
  return ctx.finish(kExitOk);
}

int cmd_auttest(Context& ctx, const std::string& spectrum, const std::string& matrix, const std::string& basis) {
  std::vector<Vec> vecs;
  std::vector<double> vals;
  Mat s;
  if (!spectrum.empty() == !matrix.empty()) throw CLI::ValidationError("exactly one of --spectrum and --matrix is required");
  if (!spectrum.empty()) {
    std::string tok;
    for (std::size_t i = 0; i <= spectrum.size(); ++i) {
      if (i == spectrum.size() || spectrum[i] == ',') {
        if (!tok.empty()) vals.push_back(std::stod(tok));
        tok.clear();
      } else {
        tok += spectrum[i];
      }
    }
    if (vals.size() != 7) throw AlgebraError("--spectrum needs 7 values");
    if (basis == "rotated") {
      vecs = rotated_octonion_basis();
    } else if (basis == "standard") {
      for (int i = 0; i < 7; ++i) vecs.push_back(Vec::Unit(7, i));
    } else {
      throw CLI::ValidationError("--basis must be rotated or standard");
    }
    s = Mat::Zero(7, 7);
    for (int i = 0; i < 7; ++i) s += vals[i] * vecs[i] * vecs[i].transpose();
  } else {
    s = read_matrix_file(matrix);
    if (s.rows() != 7 || s.cols() != 7) throw AlgebraError("auttest: matrix must be 7x7");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw AlgebraError("auttest: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    for (int i = 0; i < 7; ++i) {
      vecs.push_back(es.eigenvectors().col(i));
      vals.push_back(es.eigenvalues()[i]);
    }
  }
  for (double v : vals)
    if (!(v > 0.0)) throw AlgebraError("auttest: eigenvalues must be positive");

  QuaternionStabilizerReport q = stabilized_quaternion_test(vecs, vals);
  Algebra Os = vector_isotope(canonical("O"), s);
  DerivationAlgebra D = derivation_basis(Os);

  ctx.report["spectrum"] = vals;
  ctx.report["s"] = mat_json(s);
  ctx.report["triples_checked"] = q.triples_checked;
  ctx.report["stabilized"] = q.stabilized;
  Json closed = Json::array();
  for (const auto& t : q.closed_triples) closed.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
  ctx.report["closed_triples"] = closed;
  ctx.report["min_triple_residual"] = q.min_residual;
  ctx.report["der_dim"] = D.dim;
  std::string conclusion;
  if (!q.stabilized && D.dim == 0) {
    conclusion = "no stabilized quaternion subalgebra; Der = 0; Aut trivial";
  } else if (q.stabilized) {
    conclusion = "stabilized quaternion subalgebra found; Aut contains a reflection";
  } else {
    conclusion = "no stabilized quaternion subalgebra; Der != 0";
  }
  ctx.report["conclusion"] = conclusion;
  ctx.err << conclusion << "\n";
  return ctx.finish(kExitOk);
}

bool near(double x, double y) { return std::abs(x - y) <= 1e-12; }

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NADIV_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultSeed;
}

std::vector<Vec> rotated_octonion_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Vec> x(7, Vec::Zero(7));
  x[0][0] = h, x[0][1] = h;
  x[1][0] = h, x[1][1] = -h;
  x[2][2] = h, x[2][3] = h;
  x[3][2] = h, x[3][3] = -h;
  x[4][4] = 1.0;
  x[5][5] = h, x[5][6] = h;
  x[6][5] = h, x[6][6] = -h;
  return x;
}

std::optional<ClosedForm> closed_form_for(const Algebra& A) {
  DslNode n;
  try {
    n = parse_dsl(A.provenance());
  } catch (const AlgebraError&) {
    return std::nullopt;
  }
  if (n.kind != DslNode::Kind::call) return std::nullopt;
  auto arg = [&](const DslNode& node, std::size_t k) { return node.args[k].number; };
  auto from_report = [](std::string name, const CriterionReport& r, std::vector<std::pair<std::string, double>> in) {
    ClosedForm cf{std::move(name), r.verdict, std::move(in)};
    for (const auto& m : r.margins) cf.inputs.push_back(m);
    return cf;
  };
  auto params_inputs = [](const Table1Params& p) {
    std::vector<std::pair<std::string, double>> in;
    auto arr = p.to_array();
    for (std::size_t i = 0; i < arr.size(); ++i) in.emplace_back(Table1Params::kNames[i], arr[i]);
    return in;
  };

  if (n.name == "table1") {
    std::array<double, 16> v{};
    for (std::size_t k = 0; k < 16; ++k) v[k] = arg(n, k);
    Table1Params p = Table1Params::from_array(v);
    return from_report("table1", table1_criterion_report(p), params_inputs(p));
  }
  if (n.name == "table4") {
    Table1Params p = table4_params(arg(n, 0), arg(n, 1), arg(n, 2), arg(n, 3));
    return from_report("table4", table1_criterion_report(p), params_inputs(p));
  }
  if (n.name == "table7") {
    Table1Params p = table7_params(arg(n, 0), arg(n, 1), arg(n, 2), arg(n, 3), arg(n, 4));
    return from_report("table7", table1_criterion_report(p), params_inputs(p));
  }
  if (n.name == "table5") {
    const double b = arg(n, 1), c = arg(n, 2), eta = arg(n, 4), rho = arg(n, 6);
    return from_report("table5", table5_criterion_report(eta, b, c, rho), {{"eta", eta}, {"b", b}, {"c", c}, {"rho", rho}});
  }
  if (n.name == "osborn4") {
    const double a = arg(n, 0), b = arg(n, 1), g = arg(n, 2);
    if (a == 0.0 || g == 0.0 || (b != 0.0 && b != 1.0)) return std::nullopt;
    return ClosedForm{"osborn4", osborn4_criterion(a, b, g), {{"alpha", a}, {"beta", b}, {"gamma", g}}};
  }

  // mut(gcd(mut(H, l), -1, a, b, d, -b), m) with both mutations optional.
  double lambda = 1.0, mu = 1.0;
  const DslNode* g = &n;
  if (g->name == "mut" && g->args[0].kind == DslNode::Kind::call) {
    mu = arg(*g, 1);
    g = &g->args[0];
  }
  if (g->name != "gcd" || g->args[0].kind != DslNode::Kind::call) return std::nullopt;
  const DslNode& base = g->args[0];
  if (base.name == "mut" && base.args[0].kind == DslNode::Kind::call && base.args[0].name == "H") {
    lambda = arg(base, 1);
  } else if (base.name != "H") {
    return std::nullopt;
  }
  const double gamma = arg(*g, 1), alpha = arg(*g, 2), beta = arg(*g, 3), delta = arg(*g, 4), theta = arg(*g, 5);
  if (!near(gamma, -1.0) || !near(theta, -beta)) return std::nullopt;
  if (lambda == 1.0 && mu == 1.0 && alpha == 1.0 && beta == 0.0)
    return ClosedForm{"e_delta", e_delta_criterion(delta), {{"delta", delta}}};
  return ClosedForm{"cor414",
                    cor414_criterion(lambda, mu, alpha, beta, delta),
                    {{"lambda", lambda}, {"mu", mu}, {"alpha", alpha}, {"beta", beta}, {"delta", delta}}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nadiv: nonassociative real division algebra toolkit"};
  app.require_subcommand(1);
  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "Random seed (default: NADIV_SEED or 42)");

  std::string expr, out_path;
  auto* sc_new = app.add_subcommand("new", "Build an algebra from an expression");
  sc_new->add_option("expr", expr, "Construction expression, e.g. \"mut(H,0.75)\"")->required();
  sc_new->add_option("-o,--out", out_path, "Output file (default: stdout)");

  std::string file;
  std::vector<std::string> identities;
  int samples = kDefaultIdentitySamples;
  auto* sc_check = app.add_subcommand("check", "Check polynomial identities");
  sc_check->add_option("file", file)->required();
  sc_check->add_option("--identities", identities, "Identity names or 'all'")->delimiter(',');
  sc_check->add_option("--samples", samples)->check(CLI::PositiveNumber);

  int div_samples = ZeroDivisorOptions{}.samples;
  std::string criterion = "auto";
  auto* sc_div = app.add_subcommand("division", "Decide linear division");
  sc_div->add_option("file", file)->required();
  sc_div->add_option("--samples", div_samples)->check(CLI::PositiveNumber);
  sc_div->add_option("--criterion", criterion)->check(CLI::IsMember({"auto", "none"}));

  bool modules = false;
  auto* sc_der = app.add_subcommand("der", "Derivation algebra");
  sc_der->add_option("file", file)->required();
  sc_der->add_flag("--modules", modules, "Decompose A into irreducible Der(A)-modules");

  std::string file_b, witness;
  auto* sc_cmp = app.add_subcommand("compare", "Compare isomorphism invariants");
  sc_cmp->add_option("a", file)->required();
  sc_cmp->add_option("b", file_b)->required();
  sc_cmp->add_option("--witness", witness, "Matrix file with a candidate isomorphism A -> B");

  auto* sc_can = app.add_subcommand("canonical", "Reduce an 8-dimensional algebra to table parameters");
  sc_can->add_option("file", file)->required();

  std::string spectrum, matrix, basis = "rotated";
  auto* sc_aut = app.add_subcommand("auttest", "Automorphism evidence for an octonion isotope O(s)");
  sc_aut->add_option("--spectrum", spectrum, "Seven comma-separated eigenvalues of s");
  sc_aut->add_option("--basis", basis, "Eigenvector basis for --spectrum: rotated or standard");
  sc_aut->add_option("--matrix", matrix, "Matrix file holding a symmetric 7x7 s");

  for (auto* sc : {sc_new, sc_check, sc_div, sc_der, sc_cmp, sc_can, sc_aut})
    sc->add_option("--seed", seed, "Random seed (default: NADIV_SEED or 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx{out, err, seed, Json::object()};
  CLI::App* sub = app.get_subcommands().front();
  ctx.report["command"] = sub->get_name();
  ctx.report["seed"] = seed;
  try {
    if (sub == sc_new) return cmd_new(ctx, expr, out_path);
    if (sub == sc_check) return cmd_check(ctx, file, identities, samples);
    if (sub == sc_div) return cmd_division(ctx, file, div_samples, criterion);
    if (sub == sc_der) return cmd_der(ctx, file, modules);
    if (sub == sc_cmp) return cmd_compare(ctx, file, file_b, witness);
    if (sub == sc_can) return cmd_canonical(ctx, file);
    if (sub == sc_aut) return cmd_auttest(ctx, spectrum, matrix, basis);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    ctx.report["error"] = e.what();
    return ctx.finish(kExitUsage);
  }
  return kExitUsage;
}

}  // namespace nadiv::cli
