#include "k3iso/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "k3iso/certificate.hpp"
#include "k3iso/period.hpp"
#include "k3iso/selfcheck.hpp"
#include "k3iso/serialize.hpp"

namespace k3iso::cli {

namespace {

const Int kBuiltinBound = 1000000;

struct ParamOptions {
  std::string a, b, c, d, mu, r, s;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "a in H^2 = 2abc^2");
    cmd->add_option("--b", b, "b");
    cmd->add_option("--c", c, "c");
    cmd->add_option("--d", d, "d = -det N")->required();
    cmd->add_option("--mu", mu, "mu, a square root of d modulo 4abc^2")->required();
    cmd->add_option("--r", r, "rank r = ac (with --s, instead of --a --b --c)");
    cmd->add_option("--s", s, "s = bc");
  }

  // Parsed but not validated.
  PicardParams raw() const {
    const bool abc = !a.empty() || !b.empty() || !c.empty();
    const bool rs = !r.empty() || !s.empty();
    if (abc && rs) throw PreconditionError("give either --a --b --c or --r --s, not both");
    if (rs) {
      if (r.empty() || s.empty()) throw PreconditionError("--r and --s must be given together");
      return PicardParams::from_rs(parse_int(r), parse_int(s), parse_int(d), parse_int(mu));
    }
    if (a.empty() || b.empty() || c.empty()) {
      throw PreconditionError("--a, --b and --c are required (or --r and --s)");
    }
    return PicardParams{parse_int(a), parse_int(b), parse_int(c), parse_int(d), parse_int(mu)};
  }

  PicardParams resolve() const {
    const PicardParams p = raw();
    require_valid(p);
    return canonical(p);
  }
};

struct SearchOptions {
  std::string bound;
  std::string series;
  std::string sign;

  void attach(CLI::App* cmd) {
    cmd->add_option("--bound", bound, "search bound for |p|, |q| (default 10^6, or $" +
                                          std::string(kBoundEnv) + ")");
    cmd->add_option("--series", series, "restrict to one series")
        ->check(CLI::IsMember({"a", "b", "A", "B"}));
    cmd->add_option("--sign", sign, "restrict to one sign")->check(CLI::IsMember({"+", "-"}));
  }

  Int resolve_bound() const {
    Int value = kBuiltinBound;
    if (!bound.empty()) {
      value = parse_int(bound);
    } else if (const char* env = std::getenv(kBoundEnv); env != nullptr && *env != '\0') {
      value = parse_int(env);
    }
    if (value < 1) throw PreconditionError("bound must be positive");
    return value;
  }

  std::optional<Series> only_series() const {
    if (series.empty()) return std::nullopt;
    return series == "a" || series == "A" ? Series::kA : Series::kB;
  }

  std::optional<Sign> only_sign() const {
    if (sign.empty()) return std::nullopt;
    return sign == "+" ? Sign::kPlus : Sign::kMinus;
  }
};

std::string describe(const PicardParams& p) {
  std::ostringstream o;
  o << "a=" << p.a << " b=" << p.b << " c=" << p.c << " d=" << p.d << " mu=" << p.mu
    << " (r=" << p.r() << ", s=" << p.s() << ", H^2=" << p.h_square() << ")";
  return o.str();
}

std::string describe(const NVector& z) {
  std::ostringstream o;
  o << "(" << z.x << ", " << z.y << ")";
  return o.str();
}

std::string describe(const MukaiVector& v) {
  std::ostringstream o;
  o << "(" << v.r << ", " << describe(v.c1) << ", " << v.s << ")";
  return o.str();
}

std::string describe(const LatVec& v) {
  std::ostringstream o;
  o << "(";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? ", " : "") << v[i];
  o << ")";
  return o.str();
}

std::string describe(const IntMatrix& m) {
  std::ostringstream o;
  o << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) o << (i ? ", " : "") << describe(m.row(i));
  o << "]";
  return o.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw PreconditionError("failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot read " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void print_branches(std::ostream& out, const Decision& decision) {
  for (const BranchOutcome& b : decision.branches) {
    out << "branch " << series_char(b.series) << sign_char(b.sign) << ": ";
    if (b.searched) {
      out << b.solutions << " solution" << (b.solutions == 1 ? "" : "s") << "\n";
    } else {
      out << "not searched\n";
    }
  }
}

void print_certificate(std::ostream& out, const IsomorphismCertificate& cert) {
  const SeriesSolution& sol = cert.solution;
  out << "solution: " << series_char(sol.series) << sign_char(sol.sign) << " (p, q) = (" << sol.p
      << ", " << sol.q << "), h1 = " << describe(sol.h1)
      << ", h1^2 = " << norm(cert.params, sol.h1) << "\n";
  out << "d2 = " << cert.d2 << " (" << cert.nu_conditions() << "), D = " << describe(cert.twist)
      << "\n";
  out << "chain:\n";
  for (const ChainStep& step : cert.chain) {
    std::string label = move_name(step.move);
    if (step.move == Move::kNu) label += "(1, " + to_string(cert.d2) + ")";
    if (step.move == Move::kTwist) label += " by D";
    out << "  " << std::left << std::setw(12) << label << describe(step.vector) << "\n";
  }
  if (cert.tyurin_assumption) {
    out << "assumption: h^0 O(h1) = h^0 O(-h1) = 0 (not decidable from lattice data)\n";
  }
}

// Shared by decide and certify.
int decide_command(const ParamOptions& po, const SearchOptions& so, bool certify, bool json,
                   const std::string& out_path, std::ostream& out) {
  const PicardParams params = po.resolve();
  const Int bound = so.resolve_bound();
  const Decision decision = decide_and_certify(params, bound, so.only_series(), so.only_sign());

  Json artifact;
  if (certify) {
    if (decision.certificate) artifact = to_json(*decision.certificate);
  } else {
    artifact = to_json(decision);
    artifact["params"] = to_json(params);
  }
  if (!out_path.empty() && !artifact.is_null()) write_file(out_path, dump(artifact));

  if (json) {
    out << (artifact.is_null() ? dump(to_json(decision)) : dump(artifact));
  } else {
    out << "params: " << describe(params) << "\n";
    out << "bound: " << bound << "\n";
    print_branches(out, decision);
    if (decision.certificate) {
      out << "decided: M_X(" << params.r() << ", H, " << params.s() << ") = X\n";
      if (certify) print_certificate(out, *decision.certificate);
      if (!out_path.empty()) out << "wrote " << out_path << "\n";
    } else {
      out << "inconclusive: no series solution with |p|, |q| <= " << bound << "\n";
    }
  }
  return decision.certificate ? kOk : kInconclusive;
}

int verify_command(const std::string& path, bool json, std::ostream& out) {
  const IsomorphismCertificate cert = parse_certificate(read_file(path));
  const VerifyResult result = verify_certificate(cert);
  if (json) {
    Json j;
    j["ok"] = result.ok;
    j["diagnostics"] = result.diagnostics;
    out << dump(j);
  } else if (result.ok) {
    out << "verified: " << cert.chain.size() << " steps replayed from (ac, H, bc)\n";
    if (cert.tyurin_assumption) {
      out << "assumption: h^0 O(h1) = h^0 O(-h1) = 0 (not decidable from lattice data)\n";
    }
  } else {
    out << "rejected:\n";
    for (const std::string& d : result.diagnostics) out << "  " << d << "\n";
  }
  return result.ok ? kOk : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mukai-vector isomorphism certificates for K3 surfaces with rank-2 Picard lattice",
               "k3iso"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  ParamOptions params_validate, params_decide, params_certify;
  SearchOptions search_decide, search_certify;
  std::string out_path;
  bool json = false;

  CLI::App* validate = app.add_subcommand("validate", "check and normalize Picard parameters");
  params_validate.attach(validate);
  validate->add_flag("--json", json, "print JSON");

  CLI::App* decide = app.add_subcommand("decide", "search the a- and b-series conditions");
  params_decide.attach(decide);
  search_decide.attach(decide);
  decide->add_option("--out", out_path, "write the decision as JSON");
  decide->add_flag("--json", json, "print JSON instead of a summary");

  CLI::App* certify = app.add_subcommand("certify", "decide and emit a certificate");
  params_certify.attach(certify);
  search_certify.attach(certify);
  certify->add_option("--out", out_path, "write the certificate JSON");
  certify->add_flag("--json", json, "print the certificate JSON instead of a summary");

  std::string cert_path;
  CLI::App* verify = app.add_subcommand("verify", "replay a certificate");
  verify->add_option("--cert", cert_path, "certificate JSON file")->required();
  verify->add_flag("--json", json, "print JSON");

  std::string a_max = "3", b_max = "3", c_max = "3", d_max = "50", sweep_bound = "500";
  unsigned threads = 0;
  bool lines = false;
  CLI::App* sweep = app.add_subcommand("sweep-equivalence",
                                       "compare plain and refined series conditions");
  sweep->add_option("--a-max", a_max, "largest a")->capture_default_str();
  sweep->add_option("--b-max", b_max, "largest b")->capture_default_str();
  sweep->add_option("--c-max", c_max, "largest c")->capture_default_str();
  sweep->add_option("--d-max", d_max, "largest d")->capture_default_str();
  sweep->add_option("--bound", sweep_bound, "bound for |p|, |q|")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->add_option("--out", out_path, "write the JSON report");
  sweep->add_flag("--lines", lines, "print one line per solution");
  sweep->add_flag("--json", json, "print the JSON report");

  std::string pa, pb, pc, pd1 = "1", pd2 = "1", max_abc = "4", max_d = "4";
  bool period_sweep_flag = false;
  CLI::App* periods = app.add_subcommand("verify-periods",
                                         "recompute periods of M_X(v) in the Mukai lattice");
  periods->add_option("--a", pa, "a");
  periods->add_option("--b", pb, "b");
  periods->add_option("--c", pc, "c");
  periods->add_option("--d1", pd1, "d1")->capture_default_str();
  periods->add_option("--d2", pd2, "d2")->capture_default_str();
  periods->add_flag("--sweep", period_sweep_flag, "all a, b, c <= max-abc and d1, d2 <= max-d");
  periods->add_option("--max-abc", max_abc, "sweep range for a, b, c")->capture_default_str();
  periods->add_option("--max-d", max_d, "sweep range for d1, d2")->capture_default_str();
  periods->add_option("--threads", threads, "worker threads (0 = all cores)");
  periods->add_option("--out", out_path, "write the JSON report");
  periods->add_flag("--json", json, "print the JSON report");

  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the acceptance checks");
  selfcheck->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << app.help();
    return kInvalid;
  }

  try {
    if (validate->parsed()) {
      const PicardParams raw = params_validate.raw();
      const auto reason = validation_error(raw);
      if (json) {
        Json j;
        j["params"] = to_json(raw);
        j["valid"] = !reason;
        if (reason) {
          j["reason"] = *reason;
        } else {
          j["canonical"] = to_json(canonical(raw));
          j["normalized"] = to_json(normalized(raw));
        }
        out << dump(j);
      } else if (reason) {
        out << "invalid: " << *reason << "\n";
      } else {
        out << "valid: " << describe(canonical(raw)) << "\n";
        out << "normalized: " << describe(normalized(raw)) << "\n";
      }
      return reason ? kInvalid : kOk;
    }
    if (decide->parsed()) {
      return decide_command(params_decide, search_decide, false, json, out_path, out);
    }
    if (certify->parsed()) {
      return decide_command(params_certify, search_certify, true, json, out_path, out);
    }
    if (verify->parsed()) return verify_command(cert_path, json, out);

    if (sweep->parsed()) {
      SweepRange range;
      range.a_max = parse_int(a_max);
      range.b_max = parse_int(b_max);
      range.c_max = parse_int(c_max);
      range.d_max = parse_int(d_max);
      range.bound = parse_int(sweep_bound);
      const EquivalenceReport report = equivalence_sweep(range, lines, threads);
      const Json j = to_json(report);
      if (!out_path.empty()) write_file(out_path, dump(j));
      if (json) {
        out << dump(j);
      } else {
        for (const std::string& line : report_lines(report)) out << line << "\n";
        out << "tuples=" << report.tuples << " solutions=" << report.solutions
            << " counterexamples=" << report.counterexamples.size() << "\n";
        out << "verdict: " << j["verdict"].get<std::string>() << "\n";
      }
      return report.verdict() ? kOk : kFalse;
    }

    if (periods->parsed()) {
      if (period_sweep_flag) {
        const std::vector<PeriodSweepRecord> records =
            period_sweep(PeriodSweepRange{parse_int(max_abc), parse_int(max_d)}, threads);
        const Json j = period_report_json(records);
        if (!out_path.empty()) write_file(out_path, dump(j));
        if (json) {
          out << dump(j);
        } else {
          for (const std::string& line : report_lines(records)) out << line << "\n";
          out << j["succeeded"].get<std::size_t>() << "/" << records.size()
              << " instances verified\n";
        }
        const bool all_ok = std::all_of(records.begin(), records.end(),
                                        [](const auto& r) { return r.ok(); });
        return all_ok ? kOk : kFalse;
      }
      if (pa.empty() || pb.empty() || pc.empty()) {
        throw PreconditionError("verify-periods needs --a --b --c (or --sweep)");
      }
      const Int a = parse_int(pa), b = parse_int(pb), c = parse_int(pc);
      const Int d1 = parse_int(pd1), d2 = parse_int(pd2);
      const LatVec v = embed_vector(a, b, c, d1, d2);  // validates admissibility
      const PeriodSweepRecord rec = check_period_instance(a, b, c, d1, d2);
      if (!out_path.empty()) write_file(out_path, dump(to_json(rec)));
      if (json) {
        out << dump(to_json(rec));
      } else {
        const MukaiModel model;
        out << "v = " << describe(v) << " in (e1, e2, f1, f2)\n";
        if (rec.error.empty()) {
          const PeriodData base = compute_period_data(model, embed_vector(a, b, c, 1, 1), a, b, c);
          const PeriodData pd = compute_period_data(model, v, a, b, c);
          out << "v^perp/Zv Gram: " << describe(pd.h2_model.gram()) << "\n";
          out << "div(alpha-bar) = " << pd.divisor_checks.alpha
              << ", div(beta-bar) = " << pd.divisor_checks.beta
              << ", div(t-bar) = " << pd.divisor_checks.t << "\n";
          out << "t~ = " << describe(pd.transc_gen) << ", t~^2 = "
              << square(pd.h2_model, pd.transc_gen) << "\n";
          out << "h = " << describe(pd.picard_gen) << ", h^2 = " << rec.h_square << "\n";
          if (const auto map = periods_isomorphic(base, pd)) {
            out << "isometry pd(v) -> pd(v1): " << describe(*map) << "\n";
          }
        }
        for (const std::string& line : report_lines(std::vector<PeriodSweepRecord>{rec})) {
          out << line << "\n";
        }
      }
      return rec.ok() ? kOk : kFalse;
    }

    if (selfcheck->parsed()) {
      const auto results = run_selfcheck(threads, [&](const CriterionResult& r) {
        out << format_result(r) << "\n" << std::flush;
      });
      const bool all = std::all_of(results.begin(), results.end(),
                                   [](const CriterionResult& r) { return r.passed; });
      return all ? kOk : kFalse;
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kFalse;
  }
  return kInvalid;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace k3iso::cli
