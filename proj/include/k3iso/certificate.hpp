#pragma once

// Replayable certificates for the isomorphism M_X(r, H, s) = X built from
// universal moves:
//
//   a-series:  Tyu(+-h1) . T_D . nu(1, d2) . reflect
//   b-series:  Tyu(+-h1) . T_D . nu(1, d2)
//
// with d2 = (p - mu q) / 2ac (mod bc) and h1 = d2 H + bc D (ac for the b-series).

#include <optional>
#include <string>
#include <vector>

#include "k3iso/mukai.hpp"
#include "k3iso/picard.hpp"
#include "k3iso/series.hpp"

namespace k3iso {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class Move { kStart, kReflect, kNu, kTwist, kTyurin };

const char* move_name(Move move);
std::optional<Move> parse_move(const std::string& name);

// `vector` is the Mukai vector reached by the move. The Tyurin step is a
// declared terminal move and records the vector it identifies with X.
struct ChainStep {
  Move move;
  MukaiVector vector;

  bool operator==(const ChainStep& other) const = default;
};

struct IsomorphismCertificate {
  PicardParams params;
  SeriesSolution solution;
  Int d2;
  NVector twist;  // D
  std::vector<ChainStep> chain;
  // Set for h1^2 < 0, where the geometric Tyurin construction additionally
  // needs h^0 O(h1) = h^0 O(-h1) = 0, which the lattice data cannot decide.
  bool tyurin_assumption = false;

  // The coprimality conditions nu(1, d2) was checked against.
  std::string nu_conditions() const;

  bool operator==(const IsomorphismCertificate& other) const = default;
};

IsomorphismCertificate build_certificate(const PicardParams& params, const SeriesSolution& sol);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> diagnostics;

  bool mentions(const std::string& fragment) const;
};

// Replays the chain from (ac, H, bc), re-checking every precondition; never throws.
VerifyResult verify_certificate(const IsomorphismCertificate& cert);

struct BranchOutcome {
  Series series;
  Sign sign;
  bool searched = false;  // branches after the first success are skipped
  std::size_t solutions = 0;
};

struct Decision {
  std::optional<IsomorphismCertificate> certificate;
  std::vector<BranchOutcome> branches;  // in search order
  Int bound;

  bool inconclusive() const { return !certificate.has_value(); }
};

// Searches A+, A-, B+, B- (optionally restricted) up to the bound and
// certifies the first solution found.
Decision decide_and_certify(const PicardParams& params, const Int& bound,
                            std::optional<Series> only_series = std::nullopt,
                            std::optional<Sign> only_sign = std::nullopt);

}  // namespace k3iso
