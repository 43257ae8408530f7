#pragma once

#include <json.hpp>
#include <string>
#include <variant>

#include "slp/eigensolver.hpp"
#include "slp/liouville.hpp"
#include "slp/paine_inverse.hpp"
#include "slp/verify.hpp"

namespace slp::cli {

using Json = nlohmann::ordered_json;

struct ProblemFile {
  std::variant<CanonicalSLP, SchrodingerSLP> problem;
  Json metadata;

  bool canonical() const { return problem.index() == 0; }
};

// Structural errors become InputError, bad expressions ParseError and
// non-positive coefficients ValidationError.
ProblemFile parse_problem(const Json& j);
ProblemFile load_problem(const std::string& path);

Json to_json(const BoundaryCoeffs& bc);
Json to_json(const Spectrum& s);
Json to_json(const InverseResult& r);
Json to_json(const VerificationReport& r);

// Tabulates I(t) on `samples` equally spaced points of [alpha, beta].
Json transform_json(const ForwardResult& fwd, const CanonicalSLP& problem, int samples);
std::string transform_csv(const Json& transform);

std::string dump(const Json& j);

}  // namespace slp::cli
