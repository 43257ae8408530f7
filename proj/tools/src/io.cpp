#include "slp_cli/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace slp::cli {

namespace {

std::string strip_offset(const std::string& msg) {
  const auto pos = msg.rfind(" at offset ");
  return pos == std::string::npos ? msg : msg.substr(0, pos);
}

Expression parse_field(const Json& coeffs, const char* name, const char* fallback,
                       const std::string& var) {
  std::string text = fallback ? fallback : "";
  if (coeffs.contains(name)) {
    const Json& v = coeffs.at(name);
    if (v.is_number()) {
      text = format_number(v.get<double>());
    } else if (v.is_string()) {
      text = v.get<std::string>();
    } else {
      throw InputError(std::string("coefficient '") + name + "' must be a string or number");
    }
  } else if (!fallback) {
    throw InputError(std::string("missing coefficient '") + name + "'");
  }
  try {
    return Expression::parse(text, var);
  } catch (const ParseError& e) {
    throw ParseError(std::string("coefficient '") + name + "': " + strip_offset(e.what()),
                     e.offset());
  }
}

double parse_endpoint(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw InputError("interval endpoints must be numbers or constant expressions");
  Expression e;
  try {
    e = Expression::parse(v.get<std::string>());
  } catch (const ParseError& pe) {
    throw ParseError("interval endpoint: " + strip_offset(pe.what()), pe.offset());
  }
  if (!e.is_constant()) throw InputError("interval endpoint '" + v.get<std::string>() + "' is not constant");
  return e(0.0);
}

BoundaryCoeffs parse_side(const Json& j, const char* side) {
  if (!j.contains(side)) throw InputError(std::string("bc is missing '") + side + "'");
  const Json& s = j.at(side);
  if (s.is_string()) {
    if (s.get<std::string>() != "dirichlet") {
      throw InputError("unknown boundary condition '" + s.get<std::string>() + "'");
    }
    return {1.0, 0.0};
  }
  return {s.at("d0").get<double>(), s.at("d1").get<double>()};
}

void parse_bc(const Json& j, BoundaryCoeffs& left, BoundaryCoeffs& right) {
  if (!j.contains("bc")) return;  // Dirichlet
  const Json& bc = j.at("bc");
  if (bc.is_string()) {
    if (bc.get<std::string>() != "dirichlet") {
      throw InputError("unknown boundary condition '" + bc.get<std::string>() + "'");
    }
    return;
  }
  if (!bc.is_object()) throw InputError("bc must be \"dirichlet\" or an object");
  if (bc.contains("type")) {
    if (bc.at("type") != "dirichlet") throw InputError("unknown boundary condition type");
    return;
  }
  left = parse_side(bc, "left");
  right = parse_side(bc, "right");
}

Json array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json pair(double a, double b) { return Json::array({a, b}); }

}  // namespace

ProblemFile parse_problem(const Json& j) {
  if (!j.is_object()) throw InputError("problem file must hold a JSON object");
  try {
    const std::string form = j.at("form").get<std::string>();
    const Json coeffs = j.contains("coefficients") ? j.at("coefficients") : Json::object();
    if (!coeffs.is_object()) throw InputError("coefficients must be an object");
    const Json& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2) throw InputError("interval must be [lo, hi]");
    const double lo = parse_endpoint(iv[0]), hi = parse_endpoint(iv[1]);

    ProblemFile pf;
    pf.metadata = j.contains("metadata") ? j.at("metadata") : Json::object();
    if (form == "canonical") {
      const std::string var = j.value("variable", std::string("x"));
      CanonicalSLP c;
      c.p = parse_field(coeffs, "p", nullptr, var);
      c.q = parse_field(coeffs, "q", "0", var);
      c.r = parse_field(coeffs, "r", nullptr, var);
      c.a = lo;
      c.b = hi;
      parse_bc(j, c.left, c.right);
      require_valid(c);
      pf.problem = std::move(c);
    } else if (form == "schrodinger") {
      const std::string var = j.value("variable", std::string("t"));
      SchrodingerSLP s;
      s.invariant = parse_field(coeffs, "invariant", nullptr, var);
      s.alpha = lo;
      s.beta = hi;
      parse_bc(j, s.left, s.right);
      require_valid(s);
      pf.problem = std::move(s);
    } else {
      throw InputError("form must be \"canonical\" or \"schrodinger\", got \"" + form + "\"");
    }
    return pf;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed problem file: ") + e.what());
  }
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_problem(j);
}

Json to_json(const BoundaryCoeffs& bc) { return Json{{"d0", bc.d0}, {"d1", bc.d1}}; }

Json to_json(const Spectrum& s) {
  Json j;
  j["grid_size"] = s.grid_size;
  j["extrapolated"] = s.extrapolated;
  j["eigenvalues"] = array(s.eigenvalues);
  j["error_estimates"] = array(s.error_estimates);
  return j;
}

Json to_json(const InverseResult& r) {
  Json j;
  j["case"] = r.case_label;
  j["exact"] = r.exact;
  Json prob;
  prob["form"] = "canonical";
  prob["variable"] = "x";
  prob["coefficients"] = Json{{"p", r.canonical.p.str()}, {"q", r.canonical.q.str()},
                              {"r", r.canonical.r.str()}};
  prob["interval"] = pair(r.canonical.a, r.canonical.b);
  prob["bc"] = "dirichlet";
  j["problem"] = std::move(prob);
  Json map;
  map["t_of_x"] = r.map.t_expr ? Json(r.map.t_expr->str()) : Json(nullptr);
  map["x_of_t"] = r.map.x_expr ? Json(r.map.x_expr->str()) : Json(nullptr);
  map["interval_t"] = pair(r.map.alpha, r.map.beta);
  j["map"] = std::move(map);
  Json consts = Json::object();
  for (const auto& [k, v] : r.extras) consts[k] = v;
  j["constants"] = std::move(consts);
  Json val;
  val["expansion_point"] = r.validity.expansion_point;
  val["trust_region_t"] = r.validity.trust_region_t
                              ? pair(r.validity.trust_region_t->first, r.validity.trust_region_t->second)
                              : Json(nullptr);
  val["warnings"] = r.validity.warnings;
  j["validity"] = std::move(val);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["case"] = r.case_label;
  j["exact"] = r.exact;
  j["passed"] = r.passed;
  j["roundtrip_residual"] = r.roundtrip_residual;
  j["canonical_grid"] = r.canonical_grid;
  j["spectral_gaps"] = array(r.spectral_gaps);
  j["budgets"] = array(r.budgets);
  j["canonical"] = to_json(r.canonical);
  j["schrodinger"] = to_json(r.schrodinger);
  j["trust_warnings"] = r.trust_warnings;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = std::move(params);
  return j;
}

Json transform_json(const ForwardResult& fwd, const CanonicalSLP& problem, int samples) {
  if (samples < 2) throw InputError("at least 2 samples are required");
  const SchrodingerSLP& s = fwd.schrodinger;
  Json ts = Json::array(), xs = Json::array(), is = Json::array();
  for (int i = 0; i < samples; ++i) {
    const double t =
        i + 1 == samples ? s.beta : s.alpha + (s.beta - s.alpha) * i / (samples - 1);
    ts.push_back(t);
    xs.push_back(fwd.map.x_of_t(t));
    is.push_back(s.invariant(t));
  }
  Json j;
  j["form"] = "schrodinger";
  j["interval_x"] = pair(problem.a, problem.b);
  j["interval_t"] = pair(s.alpha, s.beta);
  j["bc"] = Json{{"left", to_json(s.left)}, {"right", to_json(s.right)}};
  j["map"] = fwd.map.exact ? "closed-form" : "tabulated";
  j["table"] = Json{{"t", std::move(ts)}, {"x", std::move(xs)}, {"I", std::move(is)}};
  return j;
}

std::string transform_csv(const Json& transform) {
  const Json& tab = transform.at("table");
  auto cell = [](const Json& v) {
    return v.is_number() ? format_number(v.get<double>()) : std::string();
  };
  std::ostringstream os;
  os << "t,x,I\r\n";
  for (std::size_t i = 0; i < tab.at("t").size(); ++i) {
    os << cell(tab["t"][i]) << ',' << cell(tab["x"][i]) << ',' << cell(tab["I"][i]) << "\r\n";
  }
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace slp::cli
