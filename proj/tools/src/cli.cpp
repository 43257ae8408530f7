#include "slp_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <ostream>

#include "slp_cli/io.hpp"

namespace slp::cli {

namespace {

struct CaseOptions {
  std::string label;
  double k = 1.0, m = 0.1, q0 = 0.0, r0 = 1.0, c1 = 0.0, x0 = 0.0, nr = 0.0;
  std::string branch, variant;
  CLI::Option *k_opt = nullptr, *q0_opt = nullptr, *r0_opt = nullptr, *c1_opt = nullptr,
              *x0_opt = nullptr, *nr_opt = nullptr, *branch_opt = nullptr, *variant_opt = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("case", label, "case label")->required();
    k_opt = sub->add_option("--k", k, "Paine coefficient k");
    sub->add_option("--m", m, "Paine shift m")->capture_default_str();
    q0_opt = sub->add_option("--q0", q0, "constant q0");
    r0_opt = sub->add_option("--r0", r0, "constant r0");
    c1_opt = sub->add_option("--C1", c1, "case4 constant C1");
    x0_opt = sub->add_option("--x0", x0, "shift x0");
    nr_opt = sub->add_option("--nr", nr, "case4-general exponent n_r");
    branch_opt = sub->add_option("--branch", branch, "plus|minus|power|exponential");
    variant_opt = sub->add_option("--variant", variant, "case2 variant: auto|A1|A2|B|C1|C2");
  }

  CaseParams params() const {
    CaseParams p;
    p.m = m;
    if (k_opt->count()) p.k = k;
    if (q0_opt->count()) p.q0 = q0;
    if (r0_opt->count()) p.r0 = r0;
    if (c1_opt->count()) p.c1 = c1;
    if (x0_opt->count()) p.x0 = x0;
    if (nr_opt->count()) p.n_r = nr;
    if (branch_opt->count()) p.branch = branch;
    if (variant_opt->count()) p.variant = variant;
    return p;
  }

  PaineSpec spec(const InverseResult& r) const { return {r.extra("k"), r.extra("m")}; }
};

GridKind parse_grid(const std::string& g) {
  if (g == "uniform") return GridKind::uniform;
  if (g == "liouville") return GridKind::liouville;
  throw InputError("unknown grid '" + g + "'");
}

Json interval_json(const ProblemFile& pf) {
  if (pf.canonical()) {
    const auto& c = std::get<CanonicalSLP>(pf.problem);
    return Json::array({c.a, c.b});
  }
  const auto& s = std::get<SchrodingerSLP>(pf.problem);
  return Json::array({s.alpha, s.beta});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sturm-Liouville problems: Liouville normal form, inverse constructions, spectra", "slp"};
  app.require_subcommand(1);

  std::string file;
  int n = 2000, count = 5, samples = 101;
  bool richardson = true;
  double quad_tol = 1e-12;
  std::string grid = "uniform", csv;

  auto* solve = app.add_subcommand("solve", "eigenvalues of a problem file");
  solve->add_option("file", file, "problem JSON")->required();
  solve->add_option("--n", n, "interior grid points")->capture_default_str();
  solve->add_option("--count", count, "number of eigenvalues")->capture_default_str();
  solve->add_flag("--richardson,!--no-richardson", richardson, "extrapolate from spacings h and h/2");
  solve->add_option("--quad-tol", quad_tol, "map quadrature tolerance (liouville grid)");
  solve->add_option("--grid", grid, "canonical mesh: uniform|liouville")->capture_default_str();

  auto* transform = app.add_subcommand("transform", "Liouville normal form of a problem file");
  transform->add_option("file", file, "problem JSON")->required();
  transform->add_option("--quad-tol", quad_tol, "map quadrature tolerance")->capture_default_str();
  transform->add_option("--samples", samples, "table rows")->capture_default_str();
  transform->add_option("--csv", csv, "also write the (t, x, I) table as CSV");

  CaseOptions inv_opts, ver_opts;
  auto* invert = app.add_subcommand("invert", "build a canonical problem for I(t) = k/(t+m)^2");
  inv_opts.attach(invert);

  auto* verify = app.add_subcommand("verify", "build a case and compare both spectra");
  ver_opts.attach(verify);
  verify->add_option("--n", n, "interior grid points")->capture_default_str();
  verify->add_option("--count", count, "number of eigenvalues")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "slp: error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (solve->parsed()) {
      const ProblemFile pf = load_problem(file);
      SolveOptions so;
      so.n = n;
      so.count = count;
      so.richardson = richardson;
      so.quad_tol = quad_tol;
      so.grid = parse_grid(grid);
      if (!pf.canonical() && so.grid != GridKind::uniform) {
        throw InputError("--grid applies to canonical problems only");
      }
      const Spectrum s = pf.canonical() ? solve_spectrum(std::get<CanonicalSLP>(pf.problem), so)
                                        : solve_spectrum(std::get<SchrodingerSLP>(pf.problem), so);
      Json j;
      j["form"] = pf.canonical() ? "canonical" : "schrodinger";
      j["interval"] = interval_json(pf);
      j["grid"] = grid;
      const Json spec_json = to_json(s);
      for (const auto& [key, v] : spec_json.items()) j[key] = v;
      out << dump(j);
      return kExitOk;
    }
    if (transform->parsed()) {
      const ProblemFile pf = load_problem(file);
      CanonicalSLP c;
      if (pf.canonical()) {
        c = std::get<CanonicalSLP>(pf.problem);
      } else {
        // already in normal form: the identity map with q = I
        const auto& s = std::get<SchrodingerSLP>(pf.problem);
        c.q = s.invariant;
        c.a = s.alpha;
        c.b = s.beta;
        c.left = s.left;
        c.right = s.right;
      }
      const ForwardResult fwd = forward_transform(c, quad_tol);
      const Json j = transform_json(fwd, c, samples);
      if (!csv.empty()) {
        std::ofstream f(csv, std::ios::binary);
        if (!f) throw InputError("cannot write '" + csv + "'");
        f << transform_csv(j);
      }
      out << dump(j);
      return kExitOk;
    }
    if (invert->parsed()) {
      const InverseResult r = build_case(inv_opts.label, inv_opts.params());
      out << dump(to_json(r));
      return kExitOk;
    }
    if (verify->parsed()) {
      const InverseResult r = build_case(ver_opts.label, ver_opts.params());
      const VerificationReport rep = spectral_match(r, ver_opts.spec(r), count, n);
      out << dump(to_json(rep));
      if (!rep.passed) {
        err << "slp: verification failed for " << rep.case_label << "\n";
        return kExitNumerical;
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "slp: error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "slp: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "slp: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace slp::cli
