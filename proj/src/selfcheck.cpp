#include "k3iso/selfcheck.hpp"

#include <chrono>
#include <exception>
#include <iomanip>
#include <random>
#include <sstream>

#include "k3iso/certificate.hpp"
#include "k3iso/oracle.hpp"
#include "k3iso/period.hpp"
#include "k3iso/serialize.hpp"

namespace k3iso {

namespace {

using Clock = std::chrono::steady_clock;

// Runs body, which fills passed/detail; timing and exceptions handled here.
template <typename Body>
CriterionResult timed(int id, std::string name, double limit, Body body) {
  CriterionResult result;
  result.id = id;
  result.name = std::move(name);
  result.limit_seconds = limit;
  const auto start = Clock::now();
  try {
    body(result);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (result.passed && result.seconds >= limit) {
    result.passed = false;
    result.detail += " (time limit exceeded)";
  }
  return result;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  PicardParams params() {
    for (;;) {
      const long a = uniform(1, 4), b = uniform(1, 4), c = uniform(1, 3);
      if (std::gcd(a, b) != 1) continue;
      const long h2 = 2 * a * b * c * c;
      const long mu = uniform(0, h2 - 1);
      if (std::gcd(mu, h2) != 1) continue;
      // d = mu^2 + 2 h2 k > 0
      const long k_min = -((mu * mu - 1) / (2 * h2));
      const long d = mu * mu + 2 * h2 * uniform(k_min, k_min + 30);
      PicardParams p{a, b, c, d, mu};
      if (validate(p)) return p;
    }
  }

  NVector element(const PicardParams& p, long range = 12) {
    return from_basis(p, uniform(-range, range), uniform(-range, range));
  }

  MukaiVector vector(const PicardParams& p) {
    for (;;) {
      MukaiVector v{p, uniform(0, 15), element(p), uniform(-15, 15)};
      if (v.r == 0 && v.s == 0 && v.c1 == NVector{0, 0}) continue;
      if (uniform(0, 2) == 0) {
        const Int k = uniform(2, 4);
        v = MukaiVector{p, k * v.r, k * v.c1, k * v.s};
      }
      return v;
    }
  }

  // Isotropic with primitive c1 and r >= 1.
  MukaiVector isotropic(const PicardParams& p) {
    for (;;) {
      const NVector c1 = element(p, 6);
      if (c1 == NVector{0, 0} || element_divisor(p, c1) != 1) continue;
      const Int m = exact_div(norm(p, c1), 2, "c1^2 / 2");
      if (m == 0) continue;
      const std::vector<Int> divisors = positive_divisors(abs(m));
      const Int r = divisors[uniform(0, static_cast<long>(divisors.size()) - 1)];
      return MukaiVector{p, r, c1, m / r};
    }
  }

 private:
  std::mt19937_64 rng_;
};

bool same_as_oracle(const MukaiVector& v, const oracle::BasisVector& expected) {
  return oracle::to_basis(v) == expected;
}

}  // namespace

CriterionResult check_worked_example() {
  return timed(1, "worked-example certificate", kLimitWorkedExample, [](CriterionResult& res) {
    const PicardParams params{1, 1, 2, 17, 1};
    std::vector<std::string> problems;
    const Decision decision = decide_and_certify(params, Int(1000000));
    if (!decision.certificate) {
      res.detail = "no certificate found";
      return;
    }
    const IsomorphismCertificate& cert = *decision.certificate;
    const SeriesSolution& sol = cert.solution;
    if (sol.series != Series::kA || sol.sign != Sign::kPlus) problems.push_back("branch != A+");
    if (sol.p != 5 || sol.q != 1) problems.push_back("(p, q) != (5, 1)");
    if (cert.d2 != 1) problems.push_back("d2 != 1");
    if (cert.twist != w_generator(params)) problems.push_back("D != w");
    if (sol.h1 != NVector{10, 2} || norm(params, sol.h1) != 4) problems.push_back("h1 != (10, 2) with h1^2 = 4");

    // Replay through the Gram-matrix oracle: H = (1, 0), w = (0, 1) in the (H, w) basis.
    std::vector<oracle::BasisVector> expected;
    oracle::BasisVector o{2, 1, 0, 2};
    expected.push_back(o);
    o = oracle::reflect(o);
    expected.push_back(o);
    o = oracle::nu(o, 1, 1);
    expected.push_back(o);
    o = oracle::twist(params, o, 0, 1);
    expected.push_back(o);
    expected.push_back(o);
    if (!(o == oracle::BasisVector{2, 1, 2, 1})) problems.push_back("oracle end point != (2, H + 2w, 1)");
    if (cert.chain.size() != expected.size()) {
      problems.push_back("chain length != 5");
    } else {
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!same_as_oracle(cert.chain[i].vector, expected[i])) {
          problems.push_back("step " + std::to_string(i) + " differs from oracle");
        }
      }
    }
    if (!verify_certificate(cert).ok) problems.push_back("verify rejected the certificate");
    const std::string text = dump(to_json(cert));
    const IsomorphismCertificate reread = parse_certificate(text);
    if (!(reread == cert) || !verify_certificate(reread).ok) problems.push_back("JSON round trip failed");
    if (dump(to_json(reread)) != text) problems.push_back("JSON not byte-stable");

    res.passed = problems.empty();
    if (res.passed) {
      res.detail = "A+ (p, q) = (5, 1), d2 = 1, D = w, chain ends at (2, (10, 2), 1), verified";
    } else {
      for (const auto& p : problems) res.detail += (res.detail.empty() ? "" : "; ") + p;
    }
  });
}

CriterionResult check_move_invariance(std::uint64_t seed, int trials) {
  return timed(2, "move invariance", kLimitMoveInvariance, [&](CriterionResult& res) {
    Sampler rng(seed);
    int failures = 0;
    std::string first_failure;
    auto fail = [&](const std::string& what) {
      if (failures++ == 0) first_failure = what;
    };

    for (int t = 0; t < trials; ++t) {
      const PicardParams p = rng.params();

      // Twist, on vectors that need not be primitive.
      const MukaiVector v = rng.vector(p);
      const NVector d = rng.element(p), d_other = rng.element(p);
      const MukaiVector tv = tensor_twist(v, d);
      if (mukai_square(tv) != mukai_square(v)) fail("twist changed the square");
      if (gcd_divisor(tv) != gcd_divisor(v)) fail("twist changed the divisor");
      const auto [da, db] = basis_coordinates(p, d);
      if (!same_as_oracle(tv, oracle::twist(p, oracle::to_basis(v), da, db))) {
        fail("twist differs from oracle");
      }
      if (!(tensor_twist(tensor_twist(v, d_other), d) == tensor_twist(v, d + d_other))) {
        fail("T_D T_D' != T_{D+D'}");
      }

      // Reflection, on primitive vectors with r, s >= 1.
      MukaiVector u;
      do {
        u = MukaiVector{p, rng.uniform(1, 15), rng.element(p), rng.uniform(1, 15)};
      } while (!is_primitive(u));
      const MukaiVector ru = reflect(u);
      if (mukai_square(ru) != mukai_square(u)) fail("reflect changed the square");
      if (gcd_divisor(ru) != gcd_divisor(u)) fail("reflect changed the divisor");
      if (!(reflect(ru) == u)) fail("reflect is not an involution");
      if (!same_as_oracle(ru, oracle::reflect(oracle::to_basis(u)))) fail("reflect differs from oracle");

      // Scaling, on isotropic vectors with primitive c1.
      const MukaiVector iso = rng.isotropic(p);
      Int d1, d2;
      do {
        d1 = rng.uniform(1, 5);
        d2 = rng.uniform(1, 5);
      } while (gcd_all({d1, iso.s}) != 1 || gcd_all({d2, iso.r}) != 1 || gcd_all({d1, d2}) != 1);
      const MukaiVector nv = scale_nu(iso, d1, d2);
      if (mukai_square(nv) != 0) fail("scale_nu lost isotropy");
      if (!is_primitive(nv)) fail("scale_nu lost primitivity");
      if (!same_as_oracle(nv, oracle::nu(oracle::to_basis(iso), d1, d2))) fail("scale_nu differs from oracle");
    }
    res.passed = failures == 0;
    std::ostringstream out;
    out << trials << " trials each of twist, twist composition, reflect, scale_nu; failures = "
        << failures;
    if (failures > 0) out << " (first: " << first_failure << ")";
    res.detail = out.str();
  });
}

CriterionResult check_period_sweep(unsigned threads) {
  return timed(3, "period sweep", kLimitPeriodSweep, [&](CriterionResult& res) {
    const std::vector<PeriodSweepRecord> records = period_sweep(PeriodSweepRange{}, threads);
    std::size_t ok = 0;
    std::string first_failure;
    for (const PeriodSweepRecord& rec : records) {
      const bool good = rec.ok() && rec.h_square == 2 * rec.a * rec.b;
      if (good) {
        ++ok;
      } else if (first_failure.empty()) {
        first_failure = report_lines(std::vector<PeriodSweepRecord>{rec}).front();
      }
    }
    res.passed = !records.empty() && ok == records.size();
    res.detail = std::to_string(ok) + "/" + std::to_string(records.size()) +
                 " tuples: v^perp/Zv = U, h^2 = 2ab, isometry pd(v) ~ pd(v1)";
    if (!first_failure.empty()) res.detail += "; first failure: " + first_failure;
  });
}

CriterionResult check_equivalence_sweep(unsigned threads) {
  return timed(4, "plain/refined equivalence sweep", kLimitEquivalenceSweep,
               [&](CriterionResult& res) {
                 const EquivalenceReport report = equivalence_sweep(SweepRange{}, false, threads);
                 std::ostringstream out;
                 out << report.tuples << " tuples, " << report.solutions << " solutions";
                 for (const ReadingTally& t : report.tallies) {
                   out << "; " << reading_name(t.reading) << " " << t.passed << "/" << t.checked;
                 }
                 out << "; counterexamples = " << report.counterexamples.size();
                 res.passed = report.verdict() && report.solutions > 0;
                 res.detail = out.str();
               });
}

CriterionResult check_pell_oracle() {
  return timed(5, "Pell oracle equivalence", kLimitPellOracle, [](CriterionResult& res) {
    constexpr std::int64_t kBound = 1000;
    std::size_t cases = 0, points = 0;
    std::string mismatch;
    for (std::int64_t d = 1; d <= 50 && mismatch.empty(); ++d) {
      for (std::int64_t rhs = -100; rhs <= 100; ++rhs) {
        ++cases;
        const auto fast = pell_solutions(d, rhs, kBound);
        points += fast.size();
        if (fast != oracle::pell_scan(d, rhs, kBound)) {
          mismatch = "d = " + std::to_string(d) + ", rhs = " + std::to_string(rhs);
          break;
        }
      }
    }
    // The scan itself against the literal double loop on a fixed sample.
    std::size_t literal = 0;
    for (std::int64_t d : {1, 2, 3, 4, 5, 13, 17, 25, 41, 50}) {
      for (std::int64_t rhs : {-100, -8, -4, -1, 0, 1, 4, 8, 100}) {
        if (!mismatch.empty()) break;
        ++literal;
        if (oracle::pell_scan(d, rhs, kBound) != oracle::pell_double_loop(d, rhs, kBound)) {
          mismatch = "scan vs double loop at d = " + std::to_string(d) + ", rhs = " + std::to_string(rhs);
        }
      }
    }
    res.passed = mismatch.empty();
    res.detail = res.passed ? std::to_string(cases) + " (d, rhs) cases, " + std::to_string(points) +
                                  " points, " + std::to_string(literal) +
                                  " cases also against the double loop"
                            : "mismatch at " + mismatch;
  });
}

CriterionResult check_negative_controls() {
  return timed(6, "negative controls", kLimitNegativeControls, [](CriterionResult& res) {
    struct Tamper {
      std::string name;
      std::function<void(IsomorphismCertificate&)> mutate;
      std::string expected;
    };
    const std::vector<Tamper> corpus = {
        {"wrong s at twist step", [](auto& c) { c.chain[c.chain.size() - 2].vector.s += 1; },
         "intermediate mismatch"},
        {"wrong s at tyurin step", [](auto& c) { c.chain.back().vector.s = -1; },
         "tyurin target mismatch"},
        {"wrong s at start", [](auto& c) { c.chain.front().vector.s += 2; },
         "intermediate mismatch at step 0"},
        {"broken coprimality",
         [](auto& c) { c.d2 = c.solution.d2 = series_cofactor(c.params, c.solution.series); },
         "coprimality"},
        {"D not in N", [](auto& c) { c.twist.x += 1; }, "D not in N"},
        {"D off by H", [](auto& c) { c.twist = c.twist + polarization(c.params); },
         "D reconstruction"},
        {"c1 scaled at nu step", [](auto& c) { c.chain[c.chain.size() - 3].vector.c1 = 3 * c.chain[c.chain.size() - 3].vector.c1; },
         "intermediate mismatch"},
        {"missing step", [](auto& c) { c.chain.erase(c.chain.begin() + 1); }, "chain shape"},
        {"sign flipped", [](auto& c) { c.solution.sign = Sign::kMinus; }, "solution:"},
        {"p shifted", [](auto& c) { c.solution.p += 2; }, "solution:"},
        {"assumption flag flipped", [](auto& c) { c.tyurin_assumption = !c.tyurin_assumption; },
         "tyurin assumption flag"},
        {"mu not a square root of d", [](auto& c) { c.params.mu = 3; }, "params invalid"},
        {"mu not a unit", [](auto& c) { c.params.mu = 2; }, "params invalid"},
    };

    const PicardParams params{1, 1, 2, 17, 1};
    std::vector<IsomorphismCertificate> bases;
    for (Series s : {Series::kA, Series::kB}) {
      const Decision dec = decide_and_certify(params, 1000, s);
      if (!dec.certificate) throw InvariantError("no base certificate for series " + std::string(1, series_char(s)));
      bases.push_back(*dec.certificate);
    }

    std::size_t total = 0, rejected = 0;
    std::string failure;
    auto record = [&](const std::string& name, const VerifyResult& vr, const std::string& expected) {
      ++total;
      if (!vr.ok && vr.mentions(expected)) {
        ++rejected;
      } else if (failure.empty()) {
        failure = name + (vr.ok ? ": accepted" : ": diagnostics lack '" + expected + "'");
      }
    };

    for (const IsomorphismCertificate& base : bases) {
      const std::string series(1, series_char(base.solution.series));
      if (!verify_certificate(base).ok) failure = "untampered " + series + " certificate rejected";
      for (const Tamper& t : corpus) {
        IsomorphismCertificate c = base;
        t.mutate(c);
        record(series + ": " + t.name, verify_certificate(c), t.expected);
      }
      // The same kind of damage applied to the JSON text.
      Json j = to_json(base);
      j["chain"].back()["s"] = 7;
      record(series + ": JSON final s edited", verify_certificate(parse_certificate(dump(j))),
             "tyurin target mismatch");
      j = to_json(base);
      j["D"]["y"] = j["D"]["y"].get<long>() + 1;
      record(series + ": JSON D edited", verify_certificate(parse_certificate(dump(j))),
             "D not in N");
    }

    // Invalid parameters are rejected at validation.
    const std::vector<std::pair<PicardParams, std::string>> invalid = {
        {{1, 1, 2, 17, 2}, "unit"},
        {{1, 1, 2, 17, 4}, "unit"},
        {{1, 1, 2, 18, 1}, "congruent"},
        {{1, 1, 2, 17, 3}, "congruent"},
    };
    for (const auto& [p, fragment] : invalid) {
      ++total;
      const auto err = validation_error(p);
      if (err && err->find(fragment) != std::string::npos) {
        ++rejected;
      } else if (failure.empty()) {
        failure = "params (" + to_string(p.a) + "," + to_string(p.b) + "," + to_string(p.c) +
                  "," + to_string(p.d) + "," + to_string(p.mu) + ") not rejected as '" +
                  fragment + "'";
      }
    }

    res.passed = failure.empty() && rejected == total;
    res.detail = std::to_string(rejected) + "/" + std::to_string(total) +
                 " tampered inputs rejected with the expected diagnostic";
    if (!failure.empty()) res.detail += "; " + failure;
  });
}

std::vector<CriterionResult> run_selfcheck(
    unsigned threads, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  auto add = [&](CriterionResult r) {
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  add(check_worked_example());
  add(check_move_invariance());
  add(check_period_sweep(threads));
  add(check_equivalence_sweep(threads));
  add(check_pell_oracle());
  add(check_negative_controls());
  return results;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream out;
  out << (result.passed ? "PASS" : "FAIL") << "  criterion " << result.id << " " << result.name
      << "  [" << std::fixed << std::setprecision(2) << result.seconds << " s, limit "
      << std::setprecision(0) << result.limit_seconds << " s]  " << result.detail;
  return out.str();
}

}  // namespace k3iso
