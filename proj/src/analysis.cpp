#include "pdacache/analysis.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <sstream>

namespace pdacache {

namespace {

constexpr std::array<std::pair<SchemeKind, std::string_view>, 6> kSchemeNames{{
    {SchemeKind::kOriginal, "original"},
    {SchemeKind::kNewI, "new_I"},
    {SchemeKind::kNewII, "new_II"},
    {SchemeKind::kNew, "new"},
    {SchemeKind::kOriginalEnvelope, "original_envelope"},
    {SchemeKind::kNewEnvelope, "new_envelope"},
}};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

void require_gate(const DesignPoint& p, Gate gate) {
  if (auto v = gate_violations(p, gate); !v.empty()) throw ParamError(join(v));
}

// C(r, lambda) * C(H - r, b - lambda): integers per column.
std::uint64_t integers_per_column(const DesignPoint& p) {
  return checked_mul(binomial(p.r, p.lambda),
                     binomial(std::int64_t{p.H} - p.r, std::int64_t{p.b} - p.lambda));
}

// Sum over i in [lo, hi] of C(r, i) * C(H - r, b - i).
std::uint64_t intersection_count(const DesignPoint& p, std::int64_t lo,
                                 std::int64_t hi) {
  std::uint64_t total = 0;
  for (std::int64_t i = lo; i <= hi; ++i) {
    total = checked_add(
        total, checked_mul(binomial(p.r, i),
                           binomial(std::int64_t{p.H} - p.r, std::int64_t{p.b} - i)));
  }
  return total;
}

std::int64_t labeled_size(const DesignPoint& p) {
  return std::int64_t{p.r} + p.b - 2 * std::int64_t{p.lambda};
}

std::uint64_t slots_rule_I(const DesignPoint& p) {
  const std::int64_t c = labeled_size(p);
  return checked_mul(binomial(p.H, c), binomial(std::int64_t{p.H} - c, p.lambda));
}

std::uint64_t slots_rule_II(const DesignPoint& p) {
  const std::int64_t c = labeled_size(p);
  return checked_mul(binomial(p.H, c), binomial(c, std::int64_t{p.r} - p.lambda));
}

SchemeRecord coded_record(const DesignPoint& p, SchemeKind kind,
                          std::uint64_t zprime, std::uint64_t slots) {
  const std::uint64_t F = binomial(p.H, p.b) - zprime;
  SchemeRecord rec;
  rec.scheme = kind;
  rec.params = p;
  rec.K = binomial(p.H, p.r);
  rec.subpacketization = F;
  rec.zprime = zprime;
  rec.memory_ratio = make_rational(F - integers_per_column(p), F);
  rec.rate = make_rational(slots, F);
  return rec;
}

}  // namespace

std::string to_string(SchemeKind kind) {
  for (const auto& [k, name] : kSchemeNames) {
    if (k == kind) return std::string(name);
  }
  return "unknown";
}

SchemeKind scheme_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kSchemeNames) {
    if (n == name) return k;
  }
  throw ParamError("unknown scheme '" + std::string(name) + "'");
}

std::vector<std::string> gate_violations(const DesignPoint& p, Gate gate) {
  std::vector<std::string> v;
  if (p.H > kMaxGroundSet) v.push_back("H must be at most 64");
  if (p.r == 0 || p.r >= p.H) v.push_back("r must satisfy 0 < r < H");
  if (p.b == 0 || p.b >= p.H) v.push_back("b must satisfy 0 < b < H");
  if (p.lambda == 0) v.push_back("lambda must be positive");
  if (p.lambda >= std::min(p.r, p.b)) v.push_back("lambda must be < min(r, b)");
  switch (gate) {
    case Gate::kOriginal:
      if (p.r + p.b >= p.H + p.lambda) v.push_back("r + b - lambda must be < H");
      break;
    case Gate::kRuleI:
      if (p.r + p.b > p.H) v.push_back("r + b must be <= H");
      break;
    case Gate::kRuleII:
      if (p.r + p.b > p.H + p.lambda) v.push_back("r + b must be <= H + lambda");
      break;
  }
  return v;
}

std::uint64_t closed_form_useless(const ConstructionParams& p) {
  const DesignPoint d{p.H, p.r, p.b, p.lambda};
  if (p.rule == Rule::kI) return intersection_count(d, 0, std::int64_t{p.lambda} - 1);
  return intersection_count(d, std::int64_t{p.lambda} + 1, p.r);
}

SchemeRecord original_params(const DesignPoint& p) {
  require_gate(p, Gate::kOriginal);
  const std::uint64_t F = binomial(p.H, p.b);
  SchemeRecord rec;
  rec.scheme = SchemeKind::kOriginal;
  rec.params = p;
  rec.K = binomial(p.H, p.r);
  rec.subpacketization = F;
  rec.memory_ratio = make_rational(F - integers_per_column(p), F);
  rec.rate = make_rational(std::min(slots_rule_I(p), slots_rule_II(p)), F);
  return rec;
}

SchemeRecord new_params_I(const DesignPoint& p) {
  require_gate(p, Gate::kRuleI);
  return coded_record(p, SchemeKind::kNewI,
                      closed_form_useless(p.with_rule(Rule::kI)), slots_rule_I(p));
}

SchemeRecord new_params_II(const DesignPoint& p) {
  require_gate(p, Gate::kRuleII);
  return coded_record(p, SchemeKind::kNewII,
                      closed_form_useless(p.with_rule(Rule::kII)), slots_rule_II(p));
}

MeasuredScheme measure(const Pda& pda) {
  MeasuredScheme m;
  m.params = validate(pda);
  const Reduction red = reduce(pda);
  m.zprime = red.zprime;
  m.subpacketization = m.params.F - red.zprime;
  m.memory_ratio = make_rational(m.params.Z - red.zprime, m.subpacketization);
  m.rate = make_rational(m.params.S, m.subpacketization);
  return m;
}

CrosscheckReport crosscheck_array(const Pda& pda, std::uint64_t expected_zprime) {
  CrosscheckReport rep;
  rep.expected_zprime = expected_zprime;
  try {
    validate(pda);
  } catch (const ValidationError& e) {
    rep.pass = false;
    rep.mismatches.push_back(std::string("array is not a valid PDA: ") + e.what());
    return rep;
  }
  rep.per_column_useless = classify_stars(pda).per_column_useless;
  for (std::size_t k = 0; k < rep.per_column_useless.size(); ++k) {
    if (rep.per_column_useless[k] != expected_zprime) {
      rep.pass = false;
      rep.mismatches.push_back("column " + std::to_string(k) + " has " +
                               std::to_string(rep.per_column_useless[k]) +
                               " useless stars, expected " +
                               std::to_string(expected_zprime));
    }
  }
  if (!rep.pass) return rep;

  rep.measured = measure(pda);
  const Reduction red = reduce(pda);
  if (gain_profile(slot_positions(red.reduced)) != rep.measured->params.gain_profile) {
    rep.pass = false;
    rep.mismatches.push_back("reduction changed the gain profile");
  }
  return rep;
}

CrosscheckReport crosscheck(const ConstructionParams& p) {
  const Pda pda = construct(p);
  CrosscheckReport rep = crosscheck_array(pda, closed_form_useless(p));
  if (!rep.measured) return rep;

  const PdaParams predicted = predicted_params(p);
  if (predicted != rep.measured->params) {
    rep.pass = false;
    const auto& got = rep.measured->params;
    rep.mismatches.push_back(
        "validated (K,F,Z,S)=(" + std::to_string(got.K) + "," + std::to_string(got.F) +
        "," + std::to_string(got.Z) + "," + std::to_string(got.S) +
        ") differs from predicted (" + std::to_string(predicted.K) + "," +
        std::to_string(predicted.F) + "," + std::to_string(predicted.Z) + "," +
        std::to_string(predicted.S) + ") or gain profiles differ");
  }

  const DesignPoint d{p.H, p.r, p.b, p.lambda};
  const Gate gate = p.rule == Rule::kI ? Gate::kRuleI : Gate::kRuleII;
  if (!gate_violations(d, gate).empty()) return rep;
  rep.formula = p.rule == Rule::kI ? new_params_I(d) : new_params_II(d);
  const MeasuredScheme& m = *rep.measured;
  if (rep.formula->subpacketization != m.subpacketization) {
    rep.pass = false;
    rep.mismatches.push_back("F': formula " + std::to_string(rep.formula->subpacketization) +
                             ", array " + std::to_string(m.subpacketization));
  }
  if (rep.formula->memory_ratio != m.memory_ratio) {
    rep.pass = false;
    rep.mismatches.push_back("M/N: formula " + to_string(rep.formula->memory_ratio) +
                             ", array " + to_string(m.memory_ratio));
  }
  if (rep.formula->rate != m.rate) {
    rep.pass = false;
    rep.mismatches.push_back("R: formula " + to_string(rep.formula->rate) +
                             ", array " + to_string(m.rate));
  }
  return rep;
}

const std::set<SchemeKind>& all_scheme_kinds() {
  static const std::set<SchemeKind> all{
      SchemeKind::kOriginal, SchemeKind::kNewI,
      SchemeKind::kNewII,    SchemeKind::kNew,
      SchemeKind::kOriginalEnvelope, SchemeKind::kNewEnvelope};
  return all;
}

namespace {

bool record_less(const SchemeRecord& a, const SchemeRecord& b) {
  if (a.memory_ratio != b.memory_ratio) return a.memory_ratio < b.memory_ratio;
  if (a.scheme != b.scheme) return a.scheme < b.scheme;
  if (a.params.b != b.params.b) return a.params.b < b.params.b;
  return a.params.lambda < b.params.lambda;
}

}  // namespace

std::vector<SchemeRecord> lower_envelope(std::vector<SchemeRecord> records,
                                         SchemeKind as) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.memory_ratio != b.memory_ratio) return a.memory_ratio < b.memory_ratio;
    if (a.rate != b.rate) return a.rate < b.rate;
    return record_less(a, b);
  });
  std::vector<SchemeRecord> out;
  for (SchemeRecord& r : records) {
    if (!out.empty() && !(r.rate < out.back().rate)) continue;
    r.scheme = as;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SchemeRecord> sweep(unsigned H, unsigned r,
                                const std::set<SchemeKind>& schemes) {
  std::vector<SchemeRecord> originals;
  std::vector<SchemeRecord> firsts;
  std::vector<SchemeRecord> seconds;
  std::vector<SchemeRecord> best;

  for (unsigned b = 1; b < H; ++b) {
    for (unsigned lambda = 1; lambda < std::min(r, b); ++lambda) {
      const DesignPoint p{H, r, b, lambda};
      const bool original_ok = gate_violations(p, Gate::kOriginal).empty();
      const std::string flag = original_ok ? "" : std::string(kTableGapFlag);
      if (original_ok) originals.push_back(original_params(p));

      std::vector<SchemeRecord> here;
      if (gate_violations(p, Gate::kRuleI).empty()) {
        here.push_back(new_params_I(p));
        here.back().flag = flag;
        firsts.push_back(here.back());
      }
      if (gate_violations(p, Gate::kRuleII).empty()) {
        here.push_back(new_params_II(p));
        here.back().flag = flag;
        seconds.push_back(here.back());
      }
      if (!here.empty()) {
        // Ties go to the smaller memory ratio, then to rule I.
        SchemeRecord pick = *std::min_element(
            here.begin(), here.end(), [](const auto& x, const auto& y) {
              if (x.rate != y.rate) return x.rate < y.rate;
              return x.memory_ratio < y.memory_ratio;
            });
        pick.scheme = SchemeKind::kNew;
        best.push_back(std::move(pick));
      }
    }
  }

  std::vector<SchemeRecord> out;
  auto emit = [&](SchemeKind kind, const std::vector<SchemeRecord>& recs) {
    if (schemes.count(kind)) out.insert(out.end(), recs.begin(), recs.end());
  };
  emit(SchemeKind::kOriginal, originals);
  emit(SchemeKind::kNewI, firsts);
  emit(SchemeKind::kNewII, seconds);
  emit(SchemeKind::kNew, best);
  emit(SchemeKind::kOriginalEnvelope,
       lower_envelope(originals, SchemeKind::kOriginalEnvelope));
  emit(SchemeKind::kNewEnvelope, lower_envelope(best, SchemeKind::kNewEnvelope));
  std::stable_sort(out.begin(), out.end(), record_less);
  return out;
}

namespace {

constexpr std::string_view kCsvHeader =
    "scheme,H,r,b,lambda,K,memory_ratio_num,memory_ratio_den,rate_num,"
    "rate_den,subpacketization,zprime,flag";

std::int64_t parse_int(std::string_view field, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, 1, "bad integer field '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string to_csv(const std::vector<SchemeRecord>& records) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const SchemeRecord& r : records) {
    os << to_string(r.scheme) << ',' << r.params.H << ',' << r.params.r << ','
       << r.params.b << ',' << r.params.lambda << ',' << r.K << ','
       << r.memory_ratio.numerator() << ',' << r.memory_ratio.denominator() << ','
       << r.rate.numerator() << ',' << r.rate.denominator() << ','
       << r.subpacketization << ',' << r.zprime << ',' << r.flag << '\n';
  }
  return os.str();
}

std::vector<SchemeRecord> parse_csv(std::string_view text) {
  std::vector<SchemeRecord> out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(1, 1, "unexpected CSV header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 13) {
      throw ParseError(line_no, 1, "expected 13 fields, got " + std::to_string(f.size()));
    }
    SchemeRecord r;
    r.scheme = scheme_kind_from_string(f[0]);
    r.params = {static_cast<unsigned>(parse_int(f[1], line_no)),
                static_cast<unsigned>(parse_int(f[2], line_no)),
                static_cast<unsigned>(parse_int(f[3], line_no)),
                static_cast<unsigned>(parse_int(f[4], line_no))};
    r.K = static_cast<std::uint64_t>(parse_int(f[5], line_no));
    r.memory_ratio = Rational(parse_int(f[6], line_no), parse_int(f[7], line_no));
    r.rate = Rational(parse_int(f[8], line_no), parse_int(f[9], line_no));
    r.subpacketization = static_cast<std::uint64_t>(parse_int(f[10], line_no));
    r.zprime = static_cast<std::uint64_t>(parse_int(f[11], line_no));
    r.flag = std::string(f[12]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_svg(const std::vector<SchemeRecord>& records) {
  constexpr double kWidth = 640, kHeight = 480, kMargin = 60;
  std::map<SchemeKind, std::vector<std::pair<double, double>>> curves;
  double max_x = 0, max_y = 0;
  for (const SchemeRecord& r : records) {
    const double x = boost::rational_cast<double>(r.memory_ratio);
    const double y = boost::rational_cast<double>(r.rate);
    curves[r.scheme].emplace_back(x, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  if (max_x <= 0) max_x = 1;
  if (max_y <= 0) max_y = 1;
  auto px = [&](double x) { return kMargin + x / max_x * (kWidth - 2 * kMargin); };
  auto py = [&](double y) {
    return kHeight - kMargin - y / max_y * (kHeight - 2 * kMargin);
  };

  static const std::map<SchemeKind, std::string_view> colors{
      {SchemeKind::kOriginal, "#1f77b4"},         {SchemeKind::kNewI, "#2ca02c"},
      {SchemeKind::kNewII, "#9467bd"},            {SchemeKind::kNew, "#d62728"},
      {SchemeKind::kOriginalEnvelope, "#17becf"}, {SchemeKind::kNewEnvelope, "#ff7f0e"}};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
     << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
     << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\">memory ratio M/N (max " << max_x << ")</text>\n";
  os << "<text x=\"15\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 15 "
     << kHeight / 2 << ")\" text-anchor=\"middle\">rate R (max " << max_y
     << ")</text>\n";
  int legend = 0;
  for (auto& [kind, pts] : curves) {
    std::sort(pts.begin(), pts.end());
    const auto color = colors.at(kind);
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto& [x, y] : pts) os << px(x) << ',' << py(y) << ' ';
    os << "\"/>\n";
    for (const auto& [x, y] : pts) {
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\""
         << color << "\"/>\n";
    }
    os << "<text x=\"" << kWidth - kMargin - 130 << "\" y=\"" << kMargin + 16 * legend++
       << "\" fill=\"" << color << "\">" << to_string(kind) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pdacache
