#include "dseries/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dseries {

namespace {

std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

void write_echo(std::ostream &out, ConfigEcho const &echo)
{
  for (auto const &[k, v] : echo) { out << "# " << k << '=' << v << '\n'; }
}

std::string trim(std::string s)
{
  auto const b = s.find_first_not_of(" \t\r");
  auto const e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(std::string const &field, std::size_t line)
{
  std::string t = trim(field);
  if (!t.empty() && t[0] == '+') { t.erase(0, 1); }
  double v = 0;
  auto const [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || end != t.data() + t.size() || !std::isfinite(v)) {
    throw std::invalid_argument("coefficient CSV line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

json complex_to_json(std::complex<double> z) { return json::array({number_to_json(z.real()), number_to_json(z.imag())}); }

std::complex<double> complex_from_json(json const &j) { return {number_from_json(j.at(0)), number_from_json(j.at(1))}; }

json interval_to_json(Interval const &i) { return json::array({number_to_json(i.lo), number_to_json(i.hi)}); }

} // namespace

DirichletPoly<double> read_coefficients_csv(std::istream &in)
{
  std::vector<std::complex<double>> coeffs{0.0};
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string const t = trim(line);
    if (t.empty() || t[0] == '#') { continue; }
    if (!header_seen && (t[0] == 'n' || t[0] == 'N')) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(t);
    for (std::string f; std::getline(ss, f, ',');) { fields.push_back(f); }
    if (fields.size() < 2 || fields.size() > 3) {
      throw std::invalid_argument("coefficient CSV line " + std::to_string(lineno) + ": expected n,re,im");
    }
    double const n = parse_double(fields[0], lineno);
    if (n != static_cast<double>(coeffs.size())) {
      throw std::invalid_argument("coefficient CSV line " + std::to_string(lineno) + ": expected n = " +
                                  std::to_string(coeffs.size()));
    }
    double const re = parse_double(fields[1], lineno);
    double const im = fields.size() == 3 ? parse_double(fields[2], lineno) : 0.0;
    coeffs.emplace_back(re, im);
  }
  if (coeffs.size() < 2) { throw std::invalid_argument("coefficient CSV: no coefficients"); }
  return DirichletPoly<double>(coeffs);
}

DirichletPoly<double> read_coefficients_csv(std::string const &path)
{
  std::ifstream in(path);
  if (!in) { throw std::invalid_argument("cannot open '" + path + "'"); }
  return read_coefficients_csv(in);
}

void write_coefficients_csv(std::ostream &out, DirichletPoly<double> const &f, ConfigEcho const &echo)
{
  write_echo(out, echo);
  out << "n,re,im\n";
  for (Index n = 1; n <= f.size(); ++n) { out << n << ',' << fmt(f[n].real()) << ',' << fmt(f[n].imag()) << '\n'; }
}

json number_to_json(double x)
{
  if (std::isnan(x)) { return "nan"; }
  if (std::isinf(x)) { return x > 0 ? "inf" : "-inf"; }
  return x;
}

double number_from_json(json const &j)
{
  if (j.is_string()) {
    auto const s = j.get<std::string>();
    if (s == "inf") { return std::numeric_limits<double>::infinity(); }
    if (s == "-inf") { return -std::numeric_limits<double>::infinity(); }
    if (s == "nan") { return std::numeric_limits<double>::quiet_NaN(); }
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

json poly_to_json(MultiIndexPoly const &P)
{
  json terms = json::array();
  for (auto const &[idx, c] : P.terms) {
    json exps = json::array();
    for (auto const &[p, e] : idx.exponents) { exps.push_back(json::array({p, e})); }
    terms.push_back({{"exponents", exps}, {"re", number_to_json(c.real())}, {"im", number_to_json(c.imag())}});
  }
  return terms;
}

MultiIndexPoly poly_from_json(json const &j)
{
  if (!j.is_array()) { throw std::invalid_argument("polynomial JSON must be an array of terms"); }
  MultiIndexPoly P;
  for (auto const &t : j) {
    MultiIndex idx;
    for (auto const &pe : t.at("exponents")) {
      auto const p = pe.at(0).get<u64>();
      auto const e = pe.at(1).get<unsigned>();
      if (e == 0) { continue; }
      if (!idx.exponents.empty() && idx.exponents.back().first >= p) {
        throw std::invalid_argument("polynomial JSON: exponents must be sorted by prime");
      }
      idx.exponents.emplace_back(p, e);
    }
    std::complex<double> const c{number_from_json(t.at("re")), number_from_json(t.value("im", json(0.0)))};
    P.terms[idx] += c;
  }
  P.refresh_support();
  return P;
}

json config_to_json(ConfigEcho const &echo)
{
  json j = json::object();
  for (auto const &[k, v] : echo) { j[k] = v; }
  return j;
}

ConfigEcho config_from_json(json const &j)
{
  ConfigEcho echo;
  for (auto const &[k, v] : j.items()) { echo.emplace_back(k, v.get<std::string>()); }
  return echo;
}

json to_json_value(GrowthExperimentReport const &r)
{
  json rows = json::array();
  for (auto const &row : r.rows) {
    json sups = json::array();
    for (double s : row.sup_by_scale) { sups.push_back(number_to_json(s)); }
    rows.push_back({{"index", row.index},
                    {"seed", row.seed},
                    {"exponent", number_to_json(row.exponent)},
                    {"residual", number_to_json(row.residual)},
                    {"sup", number_to_json(row.sup)},
                    {"sup_normalized", number_to_json(row.sup_normalized)},
                    {"sup_by_scale", sups}});
  }
  json checks = json::array();
  for (auto const &c : r.kolmogorov_bound_checks) {
    checks.push_back({{"level", number_to_json(c.level)},
                      {"empirical", number_to_json(c.empirical)},
                      {"bound", number_to_json(c.bound)},
                      {"standard_error", number_to_json(c.standard_error)},
                      {"within", c.within}});
  }
  return {{"master_seed", r.config.master_seed},
          {"num_characters", r.config.num_characters},
          {"n_max", r.config.n_max},
          {"conjecture_mode", r.config.conjecture_mode},
          {"median_exponent", number_to_json(r.median_exponent())},
          {"scales", r.scales},
          {"characters", rows},
          {"kolmogorov_bound_checks", checks}};
}

GrowthExperimentReport growth_report_from_json(json const &j)
{
  GrowthExperimentReport r;
  r.config.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.config.num_characters = j.at("num_characters").get<int>();
  r.config.n_max = j.at("n_max").get<u64>();
  r.config.conjecture_mode = j.at("conjecture_mode").get<bool>();
  r.scales = j.at("scales").get<std::vector<u64>>();
  for (auto const &row : j.at("characters")) {
    CharacterRow c;
    c.index = row.at("index").get<std::uint64_t>();
    c.seed = row.at("seed").get<std::uint64_t>();
    c.exponent = number_from_json(row.at("exponent"));
    c.residual = number_from_json(row.at("residual"));
    c.sup = number_from_json(row.at("sup"));
    c.sup_normalized = number_from_json(row.at("sup_normalized"));
    for (auto const &s : row.at("sup_by_scale")) { c.sup_by_scale.push_back(number_from_json(s)); }
    r.rows.push_back(std::move(c));
  }
  for (auto const &c : j.at("kolmogorov_bound_checks")) {
    r.kolmogorov_bound_checks.push_back({number_from_json(c.at("level")), number_from_json(c.at("empirical")),
                                         number_from_json(c.at("bound")), number_from_json(c.at("standard_error")),
                                         c.at("within").get<bool>()});
  }
  return r;
}

void write_growth_report_csv(std::ostream &out, GrowthExperimentReport const &r, ConfigEcho const &echo)
{
  write_echo(out, echo);
  for (auto const &c : r.kolmogorov_bound_checks) {
    out << "# kolmogorov M=" << fmt(c.level) << " empirical=" << fmt(c.empirical) << " bound=" << fmt(c.bound)
        << " se=" << fmt(c.standard_error) << " within=" << (c.within ? "true" : "false") << '\n';
  }
  out << "index,seed,exponent,residual,sup,sup_normalized";
  for (u64 s : r.scales) { out << ",sup_at_" << s; }
  out << '\n';
  for (auto const &row : r.rows) {
    out << row.index << ',' << row.seed << ',' << fmt(row.exponent) << ',' << fmt(row.residual) << ',' << fmt(row.sup)
        << ',' << fmt(row.sup_normalized);
    for (double s : row.sup_by_scale) { out << ',' << fmt(s); }
    out << '\n';
  }
}

json to_json_value(CriterionVerdict const &v)
{
  json cert = json::object();
  for (auto const &[k, x] : v.certificate) { cert[k] = number_to_json(x); }
  json witness = json::array();
  for (auto const &[p, z] : v.witness) { witness.push_back({{"prime", p}, {"z", complex_to_json(z)}}); }
  return {{"status", to_string(v.status)}, {"rule", v.rule},         {"certificate", cert},
          {"witness", witness},            {"notes", v.notes},       {"boundary", v.boundary},
          {"tail_extrapolated", v.tail_extrapolated}};
}

CriterionVerdict verdict_from_json(json const &j)
{
  CriterionVerdict v;
  auto const status = j.at("status").get<std::string>();
  if (status == "Yes") {
    v.status = VerdictStatus::Yes;
  } else if (status == "No") {
    v.status = VerdictStatus::No;
  } else if (status == "Unknown") {
    v.status = VerdictStatus::Unknown;
  } else {
    throw std::invalid_argument("verdict JSON: unknown status '" + status + "'");
  }
  v.rule = j.at("rule").get<std::string>();
  for (auto const &[k, x] : j.at("certificate").items()) { v.certificate[k] = number_from_json(x); }
  for (auto const &w : j.at("witness")) { v.witness[w.at("prime").get<u64>()] = complex_from_json(w.at("z")); }
  v.notes = j.at("notes").get<std::vector<std::string>>();
  v.boundary = j.at("boundary").get<bool>();
  v.tail_extrapolated = j.at("tail_extrapolated").get<bool>();
  return v;
}

json to_json_value(ZetaChiReport const &r)
{
  json changes = json::array();
  for (double c : r.trace_max_change) { changes.push_back(number_to_json(c)); }
  return {{"exploratory", true},
          {"min_modulus", number_to_json(r.min_modulus)},
          {"argmin", complex_to_json(r.argmin)},
          {"trace_cutoffs", r.trace_cutoffs},
          {"trace_max_change", changes},
          {"inverse_consistency", number_to_json(r.inverse_consistency)}};
}

json to_json_value(SupNormResult const &r)
{
  json arg = json::array();
  for (double a : r.argmax) { arg.push_back(number_to_json(a)); }
  return {{"lower", number_to_json(r.lower)}, {"estimate", number_to_json(r.estimate)}, {"argmax", arg},
          {"dimension", r.dimension},         {"resolution", r.resolution},             {"mode", r.mode}};
}

json to_json_value(CarlsonReport const &r)
{
  return {{"sigma", number_to_json(r.sigma)},
          {"T", number_to_json(r.T)},
          {"closed_form_mean", number_to_json(r.closed_form_mean)},
          {"quadrature_mean", number_to_json(r.quadrature_mean)},
          {"target", number_to_json(r.target)},
          {"cross_term_bound", number_to_json(r.cross_term_bound)}};
}

json to_json_value(FrameBounds const &fb)
{
  return {{"min_eig", number_to_json(fb.min_eig)}, {"max_eig", number_to_json(fb.max_eig)}};
}

json to_json_value(AlternatingZerosResult const &r)
{
  json steps = json::array();
  for (auto const &s : r.steps) {
    steps.push_back({{"k", s.k},
                     {"block_begin", s.block_begin},
                     {"block_end", s.block_end},
                     {"sigma", number_to_json(s.sigma)},
                     {"middle", interval_to_json(s.middle)},
                     {"head", interval_to_json(s.head)},
                     {"tail", interval_to_json(s.tail)},
                     {"sign", s.sign},
                     {"certified", s.certified}});
  }
  json brackets = json::array();
  for (auto const &[lo, hi] : r.zero_brackets) { brackets.push_back(json::array({number_to_json(lo), number_to_json(hi)})); }
  return {{"requested", r.requested}, {"achieved", r.achieved}, {"complete", r.complete},
          {"breakpoints", r.breakpoints}, {"steps", steps}, {"zero_brackets", brackets}};
}

json to_json_value(VanishingInfimumResult const &r)
{
  json sums = json::array();
  for (auto const &[P, s] : r.sum_sq_partial) { sums.push_back({{"P", P}, {"sum_sq", number_to_json(s)}}); }
  json axis = json::array();
  for (auto const &[sigma, v] : r.phi_on_axis) {
    axis.push_back({{"sigma", number_to_json(sigma)}, {"Phi", number_to_json(v)}, {"S_phi", number_to_json(1.0 / v)}});
  }
  return {{"num_primes", r.b.size()},
          {"sum_sq_partial", sums},
          {"last_increment", number_to_json(r.last_increment)},
          {"phi_on_axis", axis}};
}

void write_gram_csv(std::ostream &out, GramSection<double> const &g, ConfigEcho const &echo)
{
  write_echo(out, echo);
  out << "j,k,re,im\n";
  for (Index j = 0; j < g.size(); ++j) {
    for (Index k = 0; k < g.size(); ++k) {
      out << j + 1 << ',' << k + 1 << ',' << fmt(g.G(j, k).real()) << ',' << fmt(g.G(j, k).imag()) << '\n';
    }
  }
}

} // namespace dseries
