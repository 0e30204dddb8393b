#include "k3iso/certificate.hpp"

#include <algorithm>
#include <exception>

namespace k3iso {

const char* move_name(Move move) {
  switch (move) {
    case Move::kStart:
      return "start";
    case Move::kReflect:
      return "reflect";
    case Move::kNu:
      return "nu";
    case Move::kTwist:
      return "twist";
    case Move::kTyurin:
      return "tyurin";
  }
  return "?";
}

std::optional<Move> parse_move(const std::string& name) {
  for (Move m : {Move::kStart, Move::kReflect, Move::kNu, Move::kTwist, Move::kTyurin}) {
    if (name == move_name(m)) return m;
  }
  return std::nullopt;
}

std::string IsomorphismCertificate::nu_conditions() const {
  // nu(d1, d2) needs (d1, s) = (d2, r) = (d1, d2) = 1; with d1 = 1 only
  // (d2, r) remains, r being the rank the scaling acts on.
  return solution.series == Series::kA ? "gcd(d2, bc) = 1" : "gcd(d2, ac) = 1";
}

namespace {

std::vector<Move> expected_moves(Series series) {
  if (series == Series::kA) {
    return {Move::kStart, Move::kReflect, Move::kNu, Move::kTwist, Move::kTyurin};
  }
  return {Move::kStart, Move::kNu, Move::kTwist, Move::kTyurin};
}

}  // namespace

IsomorphismCertificate build_certificate(const PicardParams& params, const SeriesSolution& sol) {
  require_valid(params);
  if (std::string defect = solution_defect(params, sol); !defect.empty()) {
    throw PreconditionError("build_certificate: " + defect);
  }
  IsomorphismCertificate cert;
  cert.params = params;
  cert.solution = sol;
  cert.d2 = canonical_d2(params, sol.series, sol.p, sol.q);
  cert.solution.d2 = cert.d2;

  const Int cofactor = series_cofactor(params, sol.series);
  const NVector remainder = sol.h1 - cert.d2 * polarization(params);
  cert.twist = NVector{exact_div(remainder.x, cofactor, "D = (h1 - d2 H) / cofactor"),
                       exact_div(remainder.y, cofactor, "D = (h1 - d2 H) / cofactor")};
  if (!in_lattice(params, cert.twist)) {
    throw InvariantError("build_certificate: D is not in N");
  }

  MukaiVector v = initial_vector(params);
  cert.chain.push_back({Move::kStart, v});
  if (sol.series == Series::kA) {
    v = reflect(v);
    cert.chain.push_back({Move::kReflect, v});
  }
  v = scale_nu(v, 1, cert.d2);
  cert.chain.push_back({Move::kNu, v});
  v = tensor_twist(v, cert.twist);
  cert.chain.push_back({Move::kTwist, v});
  if (!tyurin_target_check(v, sol.h1, sol.sign)) {
    throw InvariantError("build_certificate: chain does not end at the Tyurin target");
  }
  cert.chain.push_back({Move::kTyurin, v});
  cert.tyurin_assumption = sol.sign == Sign::kMinus;
  return cert;
}

bool VerifyResult::mentions(const std::string& fragment) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const std::string& d) { return d.find(fragment) != std::string::npos; });
}

namespace {

std::string step_label(std::size_t index, Move move) {
  return "step " + std::to_string(index) + " (" + move_name(move) + ")";
}

void check_chain(VerifyResult& result, const IsomorphismCertificate& cert) {
  const PicardParams& params = cert.params;
  const SeriesSolution& sol = cert.solution;
  const Int cofactor = series_cofactor(params, sol.series);

  if (cert.d2 < 1 || gcd_all({cert.d2, cofactor}) != 1) {
    result.diagnostics.push_back("coprimality: " + cert.nu_conditions() + " fails for d2 = " +
                                 to_string(cert.d2));
  } else if (!divides(cofactor, cert.d2 - exact_div(sol.p - params.mu * sol.q,
                                                    series_modulus(params, sol.series),
                                                    "(p - mu q) / modulus"))) {
    result.diagnostics.push_back("d2 formula: d2 != (p - mu q) / modulus (mod cofactor)");
  }
  if (!in_lattice(params, cert.twist)) {
    result.diagnostics.push_back("D not in N: x != mu y (mod 2abc^2)");
  } else if (cert.d2 * polarization(params) + cofactor * cert.twist != sol.h1) {
    result.diagnostics.push_back("D reconstruction: d2 H + cofactor D != h1");
  }

  // Structure of the stored chain.
  std::vector<Move> moves;
  for (const ChainStep& step : cert.chain) moves.push_back(step.move);
  if (moves != expected_moves(sol.series)) {
    result.diagnostics.push_back("chain shape: moves do not match the series");
    return;
  }
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const MukaiVector& stored = cert.chain[i].vector;
    if (!(stored.params == params)) {
      result.diagnostics.push_back(step_label(i, cert.chain[i].move) +
                                   ": parameter context differs from the certificate");
      return;
    }
    if (!in_lattice(params, stored.c1)) {
      result.diagnostics.push_back(step_label(i, cert.chain[i].move) + ": c1 not in N");
      return;
    }
    if (mukai_square(stored) != 0) {
      result.diagnostics.push_back(step_label(i, cert.chain[i].move) + ": not isotropic");
    }
  }

  // Tyurin target of the stored terminal vector.
  const MukaiVector& final_vector = cert.chain.back().vector;
  if (!tyurin_target_check(final_vector, sol.h1, sol.sign)) {
    result.diagnostics.push_back("tyurin target mismatch: final vector is not (" +
                                 std::string(1, sign_char(sol.sign)) + "h1^2/2, h1, " +
                                 std::string(1, sign_char(sol.sign)) + "1)");
  }
  if (cert.tyurin_assumption != (sol.sign == Sign::kMinus)) {
    result.diagnostics.push_back("tyurin assumption flag does not match the sign");
  }

  // Replay.
  MukaiVector v = initial_vector(params);
  if (!is_primitive(v)) {
    result.diagnostics.push_back("initial vector (ac, H, bc) is not primitive");
  }
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const Move move = cert.chain[i].move;
    try {
      switch (move) {
        case Move::kStart:
          break;
        case Move::kReflect:
          v = reflect(v);
          break;
        case Move::kNu:
          if (gcd_all({cert.d2, v.r}) != 1) {
            result.diagnostics.push_back(step_label(i, move) + ": coprimality gcd(d2, r) != 1");
            return;
          }
          v = scale_nu(v, 1, cert.d2);
          break;
        case Move::kTwist:
          v = tensor_twist(v, cert.twist);
          break;
        case Move::kTyurin:
          break;
      }
    } catch (const std::exception& e) {
      result.diagnostics.push_back(step_label(i, move) + ": precondition failed: " + e.what());
      return;
    }
    if (mukai_square(v) != 0 || !is_primitive(v)) {
      result.diagnostics.push_back(step_label(i, move) +
                                   ": replayed vector is not primitive isotropic");
    }
    if (!(v == cert.chain[i].vector)) {
      result.diagnostics.push_back("intermediate mismatch at " + step_label(i, move));
    }
  }
}

}  // namespace

VerifyResult verify_certificate(const IsomorphismCertificate& cert) {
  VerifyResult result;
  try {
    if (auto err = validation_error(cert.params)) {
      result.diagnostics.push_back("params invalid: " + *err);
      return result;
    }
    if (std::string defect = solution_defect(cert.params, cert.solution); !defect.empty()) {
      result.diagnostics.push_back("solution: " + defect);
      return result;
    }
    if (cert.solution.d2 != cert.d2) {
      result.diagnostics.push_back("solution d2 differs from certificate d2");
    }
    check_chain(result, cert);
  } catch (const std::exception& e) {
    result.diagnostics.push_back(std::string("verification error: ") + e.what());
  }
  result.ok = result.diagnostics.empty();
  return result;
}

Decision decide_and_certify(const PicardParams& params, const Int& bound,
                            std::optional<Series> only_series, std::optional<Sign> only_sign) {
  require_valid(params);
  Decision decision;
  decision.bound = bound;
  for (Series series : {Series::kA, Series::kB}) {
    if (only_series && *only_series != series) continue;
    for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
      if (only_sign && *only_sign != sign) continue;
      BranchOutcome outcome{series, sign};
      std::vector<SeriesSolution> sols;
      if (bound >= 1 && !decision.certificate) {
        sols = solve_series(params, series, sign, bound);
        outcome.searched = true;
        outcome.solutions = sols.size();
      }
      decision.branches.push_back(outcome);
      if (!sols.empty() && !decision.certificate) {
        IsomorphismCertificate cert = build_certificate(params, sols.front());
        VerifyResult check = verify_certificate(cert);
        if (!check.ok) {
          throw InvariantError("decide_and_certify: freshly built certificate failed: " +
                               check.diagnostics.front());
        }
        decision.certificate = std::move(cert);
      }
    }
  }
  return decision;
}

}  // namespace k3iso
