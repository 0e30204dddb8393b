#include "k3iso/serialize.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace k3iso {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Int int_field(const Json& j, const char* key) { return int_from_json(field(j, key), key); }

std::string sign_text(Sign s) { return std::string(1, sign_char(s)); }

std::string series_text(Series s) { return s == Series::kA ? "a" : "b"; }

Json solution_summary(const SeriesSolution& sol) {
  Json j;
  j["series"] = series_text(sol.series);
  j["sign"] = sign_text(sol.sign);
  j["p"] = int_to_json(sol.p);
  j["q"] = int_to_json(sol.q);
  return j;
}

}  // namespace

Json int_to_json(const Int& value) {
  if (value.fits_slong_p()) return static_cast<std::int64_t>(value.get_si());
  return value.get_str();
}

Int int_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const Error&) {
    }
  }
  throw FormatError("field '" + what + "' must be an integer");
}

Json to_json(const PicardParams& params) {
  Json j;
  j["a"] = int_to_json(params.a);
  j["b"] = int_to_json(params.b);
  j["c"] = int_to_json(params.c);
  j["d"] = int_to_json(params.d);
  j["mu"] = int_to_json(params.mu);
  return j;
}

PicardParams params_from_json(const Json& j) {
  return PicardParams{int_field(j, "a"), int_field(j, "b"), int_field(j, "c"), int_field(j, "d"),
                      int_field(j, "mu")};
}

Json to_json(const NVector& z) {
  Json j;
  j["x"] = int_to_json(z.x);
  j["y"] = int_to_json(z.y);
  return j;
}

NVector nvector_from_json(const Json& j, const std::string& what) {
  if (!j.is_object()) throw FormatError("field '" + what + "' must be an object {x, y}");
  return NVector{int_field(j, "x"), int_field(j, "y")};
}

Json to_json(const MukaiVector& v) {
  Json j;
  j["r"] = int_to_json(v.r);
  j["c1"] = to_json(v.c1);
  j["s"] = int_to_json(v.s);
  return j;
}

MukaiVector mukai_from_json(const PicardParams& params, const Json& j) {
  // No validation through MukaiVector::make: a tampered c1 must reach the
  // verifier, which reports it.
  return MukaiVector{params, int_field(j, "r"), nvector_from_json(field(j, "c1"), "c1"),
                     int_field(j, "s")};
}

Json to_json(const IsomorphismCertificate& cert) {
  Json j;
  j["params"] = to_json(cert.params);
  j["series"] = series_text(cert.solution.series);
  j["sign"] = sign_text(cert.solution.sign);
  j["p"] = int_to_json(cert.solution.p);
  j["q"] = int_to_json(cert.solution.q);
  j["d2"] = int_to_json(cert.d2);
  j["D"] = to_json(cert.twist);
  Json chain = Json::array();
  for (const ChainStep& step : cert.chain) {
    Json s;
    s["move"] = move_name(step.move);
    s["r"] = int_to_json(step.vector.r);
    s["c1"] = to_json(step.vector.c1);
    s["s"] = int_to_json(step.vector.s);
    chain.push_back(std::move(s));
  }
  j["chain"] = std::move(chain);
  j["tyurin_assumption"] = cert.tyurin_assumption;
  j["toolkit_version"] = kToolkitVersion;
  return j;
}

IsomorphismCertificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("certificate must be a JSON object");
  IsomorphismCertificate cert;
  cert.params = params_from_json(field(j, "params"));

  const std::string series = string_field(j, "series");
  if (series != "a" && series != "b") throw FormatError("series must be \"a\" or \"b\"");
  const std::string sign = string_field(j, "sign");
  if (sign != "+" && sign != "-") throw FormatError("sign must be \"+\" or \"-\"");

  SeriesSolution& sol = cert.solution;
  sol.series = series == "a" ? Series::kA : Series::kB;
  sol.sign = sign == "+" ? Sign::kPlus : Sign::kMinus;
  sol.p = int_field(j, "p");
  sol.q = int_field(j, "q");
  cert.d2 = int_field(j, "d2");
  sol.d2 = cert.d2;
  // h1 is determined by (p, q); c may be zero in a corrupted file.
  const Int cofactor = series_cofactor(cert.params, sol.series);
  sol.h1 = NVector{sol.p * cofactor, sol.q * cofactor};
  cert.twist = nvector_from_json(field(j, "D"), "D");

  const Json& chain = field(j, "chain");
  if (!chain.is_array()) throw FormatError("chain must be an array");
  for (const Json& step : chain) {
    const std::string name = string_field(step, "move");
    const std::optional<Move> move = parse_move(name);
    if (!move) throw FormatError("unknown move '" + name + "'");
    cert.chain.push_back({*move, mukai_from_json(cert.params, step)});
  }
  const Json& flag = field(j, "tyurin_assumption");
  if (!flag.is_boolean()) throw FormatError("tyurin_assumption must be a boolean");
  cert.tyurin_assumption = flag.get<bool>();
  string_field(j, "toolkit_version");
  return cert;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

IsomorphismCertificate parse_certificate(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

Json to_json(const Decision& decision) {
  Json j;
  j["bound"] = int_to_json(decision.bound);
  Json branches = Json::array();
  for (const BranchOutcome& b : decision.branches) {
    Json o;
    o["series"] = series_text(b.series);
    o["sign"] = sign_text(b.sign);
    o["searched"] = b.searched;
    o["solutions"] = b.solutions;
    branches.push_back(std::move(o));
  }
  j["branches"] = std::move(branches);
  j["decided"] = !decision.inconclusive();
  j["certificate"] = decision.certificate ? to_json(*decision.certificate) : Json(nullptr);
  return j;
}

Json to_json(const EquivalenceReport& report) {
  Json j;
  Json range;
  range["a"] = Json::array({int_to_json(report.range.a_min), int_to_json(report.range.a_max)});
  range["b"] = Json::array({int_to_json(report.range.b_min), int_to_json(report.range.b_max)});
  range["c"] = Json::array({int_to_json(report.range.c_min), int_to_json(report.range.c_max)});
  range["d"] = Json::array({int_to_json(report.range.d_min), int_to_json(report.range.d_max)});
  range["bound"] = int_to_json(report.range.bound);
  j["range"] = std::move(range);
  j["tuples"] = report.tuples;
  j["solutions"] = report.solutions;
  Json readings = Json::array();
  for (const ReadingTally& t : report.tallies) {
    Json r;
    r["reading"] = reading_name(t.reading);
    r["checked"] = t.checked;
    r["passed"] = t.passed;
    r["failed"] = t.checked - t.passed;
    readings.push_back(std::move(r));
  }
  j["readings"] = std::move(readings);
  Json counter = Json::array();
  for (const Counterexample& ce : report.counterexamples) {
    Json c;
    c["params"] = to_json(ce.params);
    c["solution"] = solution_summary(ce.solution);
    c["reading"] = reading_name(ce.reading);
    counter.push_back(std::move(c));
  }
  j["counterexamples"] = std::move(counter);
  j["verdict"] = report.verdict() ? "no counterexample" : "counterexample found";
  return j;
}

std::vector<std::string> report_lines(const EquivalenceReport& report) {
  std::vector<std::string> lines;
  for (const SolutionRecord& rec : report.records) {
    std::ostringstream out;
    const PicardParams& p = rec.params;
    out << "solution " << series_char(rec.solution.series) << sign_char(rec.solution.sign)
        << " a=" << p.a << " b=" << p.b << " c=" << p.c << " d=" << p.d << " mu=" << p.mu
        << " p=" << rec.solution.p << " q=" << rec.solution.q << " derived=" << rec.derived
        << " printed=" << rec.printed << " lattice=" << rec.lattice;
    lines.push_back(out.str());
  }
  for (const Counterexample& ce : report.counterexamples) {
    std::ostringstream out;
    const PicardParams& p = ce.params;
    out << "counterexample " << reading_name(ce.reading) << ' '
        << series_char(ce.solution.series) << sign_char(ce.solution.sign) << " a=" << p.a
        << " b=" << p.b << " c=" << p.c << " d=" << p.d << " mu=" << p.mu
        << " p=" << ce.solution.p << " q=" << ce.solution.q;
    lines.push_back(out.str());
  }
  for (const ReadingTally& t : report.tallies) {
    std::ostringstream out;
    out << "reading " << reading_name(t.reading) << " checked=" << t.checked
        << " passed=" << t.passed;
    lines.push_back(out.str());
  }
  return lines;
}

Json to_json(const PeriodSweepRecord& rec) {
  Json j;
  j["a"] = int_to_json(rec.a);
  j["b"] = int_to_json(rec.b);
  j["c"] = int_to_json(rec.c);
  j["d1"] = int_to_json(rec.d1);
  j["d2"] = int_to_json(rec.d2);
  j["quotient_is_U"] = rec.quotient_is_u;
  j["h_squared"] = int_to_json(rec.h_square);
  j["isometry_found"] = rec.isometry_found;
  j["explicit_identification"] = rec.explicit_identification;
  j["composed_route"] = rec.composed_route;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

Json period_report_json(const std::vector<PeriodSweepRecord>& records) {
  Json j;
  j["instances"] = records.size();
  j["succeeded"] = static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.ok(); }));
  Json list = Json::array();
  for (const PeriodSweepRecord& rec : records) list.push_back(to_json(rec));
  j["records"] = std::move(list);
  return j;
}

std::vector<std::string> report_lines(const std::vector<PeriodSweepRecord>& records) {
  std::vector<std::string> lines;
  for (const PeriodSweepRecord& rec : records) {
    std::ostringstream out;
    out << (rec.ok() ? "ok  " : "FAIL") << " a=" << rec.a << " b=" << rec.b << " c=" << rec.c
        << " d1=" << rec.d1 << " d2=" << rec.d2 << " quotient_is_U=" << rec.quotient_is_u
        << " h^2=" << rec.h_square << " isometry=" << rec.isometry_found
        << " explicit=" << rec.explicit_identification << " composed=" << rec.composed_route;
    if (!rec.error.empty()) out << " error=\"" << rec.error << '"';
    lines.push_back(out.str());
  }
  return lines;
}

}  // namespace k3iso
