#include "dseries/cli.hpp"

#include "dseries/bohrlift.hpp"
#include "dseries/carlson.hpp"
#include "dseries/constructions.hpp"
#include "dseries/criteria.hpp"
#include "dseries/dilation.hpp"
#include "dseries/errors.hpp"
#include "dseries/euler.hpp"
#include "dseries/experiments.hpp"
#include "dseries/io.hpp"
#include "dseries/parallel.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace dseries::cli {

namespace {

constexpr char const *kVersion = "1.0.0";
constexpr u64 kMaxSieveLimit = 200'000'000;

struct RunConfig
{
  std::uint64_t seed = 0;
  u64 limit = 0;  // 0: sized to the input
  int threads = 1;
  u64 truncation = 0;  // 0: keep input length
  double coeff_tol = 1e-12;
  double product_tol = 1e-10;
  std::string format = "json";
  std::string output;
  std::string command;
};

struct Options
{
  std::vector<std::string> inputs;
  u64 length = 1000;
  double sigma = 1.0;
  double t = 0.0;
  double T = 1000.0;
  std::string mode = "auto";
  int resolution = 64;
  int restarts = 64;
  int chars = 200;
  u64 n_max = 100'000;
  bool conjecture = false;
  u64 p_max = 10'000;
  double sigma_min = 0.8;
  GridSpec grid{};
  Index J = 16;
  u64 basis_limit = 0;
  std::string tail = "auto";
  int K = 3;
  u64 tail_cap = 10'000'000;
  std::string coefficients_out;
};

std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

ConfigEcho echo_of(RunConfig const &c)
{
  // thread count is an execution detail and goes to the sidecar only
  return {{"command", c.command},
          {"seed", std::to_string(c.seed)},
          {"limit", std::to_string(c.limit)},
          {"truncation", std::to_string(c.truncation)},
          {"coeff_tol", fmt(c.coeff_tol)},
          {"product_tol", fmt(c.product_tol)},
          {"format", c.format},
          {"version", kVersion}};
}

/// "gen:ones", "gen:power:<tau>", "gen:prime-inverse", "gen:unit", or a CSV path.
DirichletPoly<double> load_series(std::string const &src, u64 length, FactorTable const *table)
{
  if (src.rfind("gen:", 0) != 0) { return read_coefficients_csv(src); }
  std::string const what = src.substr(4);
  if (length < 1) { throw std::invalid_argument("generator length must be >= 1"); }
  DirichletPoly<double> f(static_cast<Index>(length));
  if (what == "ones") {
    for (u64 n = 1; n <= length; ++n) { f[static_cast<Index>(n)] = 1.0; }
  } else if (what == "unit") {
    f[1] = 1.0;
  } else if (what.rfind("power:", 0) == 0) {
    double const tau = std::stod(what.substr(6));
    for (u64 n = 1; n <= length; ++n) { f[static_cast<Index>(n)] = std::pow(static_cast<double>(n), -tau); }
  } else if (what == "prime-inverse") {
    if (!table) { throw std::invalid_argument("gen:prime-inverse needs a factor table"); }
    for (u64 p : table->primes()) {
      if (p > length) { break; }
      f[static_cast<Index>(p)] = 1.0 / static_cast<double>(p);
    }
  } else {
    throw std::invalid_argument("unknown generator '" + src + "'");
  }
  return f;
}

u64 required_length(std::string const &src, u64 length)
{
  if (src.rfind("gen:", 0) == 0) { return length; }
  return static_cast<u64>(read_coefficients_csv(src).size());
}

FactorTable make_table(RunConfig const &c, u64 needed)
{
  u64 const limit = c.limit ? c.limit : std::max<u64>(needed, 16);
  if (limit < needed) {
    throw std::invalid_argument("--limit " + std::to_string(c.limit) + " is below the required " + std::to_string(needed));
  }
  if (limit > kMaxSieveLimit) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds the cap " + std::to_string(kMaxSieveLimit));
  }
  return FactorTable(limit);
}

DirichletPoly<double> apply_truncation(DirichletPoly<double> f, RunConfig const &c)
{
  if (c.truncation == 0) { return f; }
  if (c.truncation > static_cast<u64>(f.size())) {
    throw std::invalid_argument("--truncation exceeds the input length " + std::to_string(f.size()));
  }
  return f.truncated(static_cast<Index>(c.truncation));
}

SineSystemSpec make_spec(DirichletPoly<double> const &a, std::string const &tail, FactorTable const &table)
{
  auto spec = SineSystemSpec::normalized(a, table, tail == "auto");
  if (tail != "auto") {
    spec.tail.kind = tail_kind_from_string(tail);
    spec.tail.primes.clear();
    if (spec.tail.kind != TailKind::Zero) {
      double const sign = spec.tail.kind == TailKind::TotallyMultiplicative ? 1.0 : -1.0;
      for (u64 p : table.primes()) {
        if (p > static_cast<u64>(spec.coeffs.size())) { break; }
        if (spec.coeffs[static_cast<Index>(p)] != std::complex<double>(0)) {
          spec.tail.primes[p] = sign * spec.coeffs[static_cast<Index>(p)];
        }
      }
    }
  }
  return spec;
}

void flatten(json const &j, std::string const &prefix, std::ostream &out)
{
  if (j.is_object()) {
    for (auto const &[k, v] : j.items()) { flatten(v, prefix.empty() ? k : prefix + "." + k, out); }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) { flatten(j[i], prefix + "." + std::to_string(i), out); }
  } else if (j.is_string()) {
    out << prefix << ',' << j.get<std::string>() << '\n';
  } else {
    out << prefix << ',' << j.dump() << '\n';
  }
}

// Emits a JSON document, or its flattened key,value form for --format csv.
void emit_json(std::ostream &out, RunConfig const &c, json result)
{
  if (c.format == "csv") {
    for (auto const &[k, v] : echo_of(c)) { out << "# " << k << '=' << v << '\n'; }
    out << "key,value\n";
    flatten(result, "", out);
    return;
  }
  json doc;
  doc["config"] = config_to_json(echo_of(c));
  doc["result"] = std::move(result);
  out << doc.dump(2) << '\n';
}

void emit_coefficients(std::ostream &out, RunConfig const &c, DirichletPoly<double> const &f)
{
  if (c.format == "csv") {
    write_coefficients_csv(out, f, echo_of(c));
    return;
  }
  json coeffs = json::array();
  for (Index n = 1; n <= f.size(); ++n) { coeffs.push_back(json::array({number_to_json(f[n].real()), number_to_json(f[n].imag())})); }
  emit_json(out, c, {{"coefficients", coeffs}});
}

json gram_json(FrameBounds const &fb, GramSection<double> const &g)
{
  json rows = json::array();
  for (Index j = 0; j < g.size(); ++j) {
    json row = json::array();
    for (Index k = 0; k < g.size(); ++k) { row.push_back(json::array({number_to_json(g.G(j, k).real()), number_to_json(g.G(j, k).imag())})); }
    rows.push_back(row);
  }
  return {{"J", g.size()}, {"frame_bounds", to_json_value(fb)}, {"gram", rows}};
}

void write_meta(RunConfig const &c, double seconds)
{
  if (c.output.empty() || c.output == "-") { return; }
  json meta = {{"command", c.command},
               {"threads", c.threads},
               {"wall_clock_seconds", seconds},
               {"version", kVersion},
               {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                           std::to_string(EIGEN_MINOR_VERSION)},
               {"compiler", __VERSION__}};
  std::ofstream(c.output + ".meta.json") << meta.dump(2) << '\n';
}

struct UsageError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

void execute(RunConfig const &c, Options const &o, std::ostream &out)
{
  auto const &cmd = c.command;
  auto input = [&](std::size_t i) -> std::string const & {
    if (o.inputs.size() <= i) { throw UsageError(cmd + ": missing input " + std::to_string(i + 1)); }
    return o.inputs[i];
  };

  if (cmd == "convolve") {
    auto const f = apply_truncation(load_series(input(0), o.length, nullptr), c);
    auto const g = apply_truncation(load_series(input(1), o.length, nullptr), c);
    emit_coefficients(out, c, convolve(f, g));
  } else if (cmd == "invert") {
    auto const f = apply_truncation(load_series(input(0), o.length, nullptr), c);
    emit_coefficients(out, c, reciprocal(f));
  } else if (cmd == "eval") {
    auto const f = apply_truncation(load_series(input(0), o.length, nullptr), c);
    auto const v = evaluate(f, std::complex<double>(o.sigma, o.t));
    emit_json(out, c, {{"sigma", o.sigma}, {"t", o.t}, {"re", number_to_json(v.real())}, {"im", number_to_json(v.imag())}});
  } else if (cmd == "norms") {
    auto const table = make_table(c, required_length(input(0), o.length));
    auto const f = apply_truncation(load_series(input(0), o.length, &table), c);
    auto const fit = estimate_sigma_c(f);
    json r = {{"length", f.size()},
              {"norm_h", number_to_json(norm_h(f))},
              {"norm_hd", number_to_json(norm_hd(f, table))},
              {"sigma_c_estimate", number_to_json(fit.estimate)},
              {"sigma_c_residual", number_to_json(fit.residual)}};
    if (f[1] != std::complex<double>(0)) {
      auto const tail = detect_tail(SineSystemSpec::normalized(f, table, false).coeffs, table);
      r["tail"] = to_string(tail.kind);
      if (tail.kind == TailKind::TotallyMultiplicative) {
        auto const en = euler_norms(tail.primes);
        r["euler"] = {{"norm_h_sq", number_to_json(en.norm_h_sq)},
                      {"norm_hd_sq", number_to_json(en.norm_hd_sq)},
                      {"reciprocal_norm_h_sq", number_to_json(en.reciprocal_norm_h_sq)},
                      {"reciprocal_norm_hd_sq", number_to_json(en.reciprocal_norm_hd_sq)}};
      }
    }
    emit_json(out, c, r);
  } else if (cmd == "supnorm" || cmd == "lift") {
    auto const table = make_table(c, required_length(input(0), o.length));
    auto const f = apply_truncation(load_series(input(0), o.length, &table), c);
    auto const P = lift(f, table);
    if (cmd == "lift") {
      emit_json(out, c, {{"terms", poly_to_json(P)}, {"prime_support", P.prime_support}});
      return;
    }
    SupNormOptions so;
    so.mode = o.mode == "grid" ? SupNormMode::Grid : o.mode == "multi-start" ? SupNormMode::MultiStart : SupNormMode::Auto;
    if (o.mode != "auto" && o.mode != "grid" && o.mode != "multi-start") {
      throw std::invalid_argument("--mode must be auto, grid or multi-start");
    }
    so.resolution = o.resolution;
    so.restarts = o.restarts;
    so.seed = c.seed;
    so.threads = c.threads;
    json r = to_json_value(sup_norm_polytorus(P, so));
    bool prime_linear = true;
    PrimeValues pv;
    for (auto const &[idx, coef] : P.terms) {
      if (idx.empty()) { continue; }
      if (idx.exponents.size() != 1 || idx.exponents[0].second != 1) {
        prime_linear = false;
        break;
      }
      pv[idx.exponents[0].first] = coef;
    }
    if (prime_linear && std::abs(f[1] - 1.0) == 0.0) { r["closed_form"] = number_to_json(prime_linear_sup_norm(pv)); }
    emit_json(out, c, r);
  } else if (cmd == "mc-growth" || cmd == "mc-primes") {
    std::string const src = o.inputs.empty() ? (cmd == "mc-growth" ? "gen:ones" : "gen:prime-inverse") : o.inputs[0];
    u64 const len = o.inputs.empty() ? o.n_max : required_length(src, o.length);
    auto const table = make_table(c, std::max(len, o.n_max));
    auto const f = load_series(src, len, &table);
    ExperimentConfig ec;
    ec.master_seed = c.seed;
    ec.num_characters = o.chars;
    ec.n_max = o.n_max;
    ec.threads = c.threads;
    ec.conjecture_mode = o.conjecture;
    auto const report = cmd == "mc-growth" ? growth_experiment(f, ec, table) : prime_supported_experiment(f, ec, table);
    if (c.format == "csv") {
      write_growth_report_csv(out, report, echo_of(c));
    } else {
      emit_json(out, c, to_json_value(report));
    }
  } else if (cmd == "mc-zeta") {
    auto const table = make_table(c, o.p_max);
    json rows = json::array();
    std::vector<ZetaChiReport> reports(static_cast<std::size_t>(std::max(o.chars, 0)));
    if (o.chars < 1) { throw std::invalid_argument("--chars must be >= 1"); }
    parallel_for(reports.size(), c.threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        reports[i] = zeta_chi_explore(Character::sample(character_seed(c.seed, i)), o.sigma_min, o.grid, o.p_max, table);
      }
    });
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      json r = to_json_value(reports[i]);
      r["index"] = i;
      r["seed"] = character_seed(c.seed, i);
      rows.push_back(r);
      worst = std::min(worst, reports[i].min_modulus);
    }
    emit_json(out, c, {{"exploratory", true}, {"min_modulus_over_characters", number_to_json(worst)}, {"characters", rows}});
  } else if (cmd == "carlson") {
    auto const f = apply_truncation(load_series(input(0), o.length, nullptr), c);
    emit_json(out, c, to_json_value(carlson_mean(f, o.sigma, o.T)));
  } else if (cmd == "gram") {
    auto const table = make_table(c, std::max(required_length(input(0), o.length), c.truncation));
    auto const a = load_series(input(0), o.length, &table);
    auto spec = make_spec(a, o.tail, table);
    if (c.truncation) { spec.coeffs = materialize(spec, c.truncation, table); }
    auto const g = gram_section(spec, o.J, c.threads, o.basis_limit);
    auto const fb = frame_bounds_estimate(g);
    if (c.format == "csv") {
      auto echo = echo_of(c);
      echo.emplace_back("min_eig", fmt(fb.min_eig));
      echo.emplace_back("max_eig", fmt(fb.max_eig));
      write_gram_csv(out, g, echo);
    } else {
      emit_json(out, c, gram_json(fb, g));
    }
  } else if (cmd == "riesz-check" || cmd == "complete-check") {
    auto const table = make_table(c, required_length(input(0), o.length));
    auto a = apply_truncation(load_series(input(0), o.length, &table), c);
    auto const spec = make_spec(a, o.tail, table);
    CheckOptions co;
    co.seed = c.seed;
    co.sup_norm.seed = c.seed;
    co.sup_norm.threads = c.threads;
    auto const v = cmd == "riesz-check" ? riesz_check(spec, table, co) : completeness_check(spec, table, co);
    json r = to_json_value(v);
    r["tail_model"] = to_string(spec.tail.kind);
    emit_json(out, c, r);
  } else if (cmd == "construct-413") {
    auto const res = construct_alternating_zeros(o.K, o.tail_cap);
    if (!o.coefficients_out.empty() && !res.breakpoints.empty()) {
      std::ofstream f(o.coefficients_out);
      write_coefficients_csv(f, res.coefficients(res.breakpoints.back()), echo_of(c));
    }
    emit_json(out, c, to_json_value(res));
    if (!res.complete) {
      throw ResourceError("tail cap reached after " + std::to_string(res.achieved) + " of " + std::to_string(res.requested) +
                          " alternations");
    }
  } else if (cmd == "construct-55") {
    auto const table = make_table(c, o.p_max);
    auto const res = construct_vanishing_infimum(o.p_max, table, std::min<u64>(o.p_max, o.length));
    json r = to_json_value(res);
    r["completeness"] = to_json_value(completeness_check(res.phi_spec, table));
    if (!o.coefficients_out.empty()) {
      std::ofstream f(o.coefficients_out);
      write_coefficients_csv(f, res.phi_spec.coeffs, echo_of(c));
    }
    emit_json(out, c, r);
  } else {
    throw CLI::CallForHelp();
  }
}

} // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  RunConfig c;
  Options o;
  CLI::App app{"Dirichlet series and dilation-system toolkit", args.empty() ? "dseries" : args[0]};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file; command-line flags win");
  app.add_option("--seed", c.seed, "master seed for all randomness");
  app.add_option("--limit", c.limit, "sieve limit (0 sizes it to the input)");
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--truncation", c.truncation, "truncation length N (0 keeps the input length)");
  app.add_option("--coeff-tol", c.coeff_tol, "coefficient tolerance")->check(CLI::Range(1e-300, 1e-2));
  app.add_option("--product-tol", c.product_tol, "Euler product tolerance")->check(CLI::Range(1e-300, 1e-2));
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", c.output, "output path (default stdout)");

  auto with_inputs = [&](CLI::App *sub, int count) {
    sub->add_option("inputs", o.inputs, "coefficient CSV files or gen:ones|gen:unit|gen:power:<tau>|gen:prime-inverse")
      ->expected(count);
    sub->add_option("--length", o.length, "length for gen: inputs");
  };
  std::vector<std::pair<std::string, std::string>> const commands = {
    {"convolve", "Dirichlet convolution of two series"},
    {"invert", "coefficients of 1/f"},
    {"eval", "evaluate f(s) for Re s > abscissa of absolute convergence"},
    {"norms", "H and divisor-weighted norms, growth estimate, Euler-product norms"},
    {"supnorm", "sup norm of the lifted polynomial over the polytorus"},
    {"lift", "lift to a polynomial in one variable per prime"},
    {"mc-growth", "partial-sum growth over random characters"},
    {"mc-primes", "prime-supported series: maximal-inequality check"},
    {"mc-zeta", "partial Euler products of random zeta_chi (exploratory)"},
    {"carlson", "mean square on a vertical line, closed form vs quadrature"},
    {"gram", "Gram section of the dilation system and its extreme eigenvalues"},
    {"riesz-check", "Riesz-basis decision on decidable subclasses"},
    {"complete-check", "completeness decision on decidable subclasses"},
    {"construct-413", "alternating-sign series with zeros accumulating at 1/2"},
    {"construct-55", "complete system whose transform has infimum 0 near 1/2"},
  };
  for (auto const &[name, desc] : commands) {
    auto *sub = app.add_subcommand(name, desc);
    sub->callback([&c, name = name] { c.command = name; });
    if (name == "convolve") { with_inputs(sub, 2); }
    if (name == "invert" || name == "norms" || name == "supnorm" || name == "lift" || name == "carlson" ||
        name == "gram" || name == "riesz-check" || name == "complete-check") {
      with_inputs(sub, 1);
    }
    if (name == "eval") {
      with_inputs(sub, 1);
      sub->add_option("--sigma", o.sigma);
      sub->add_option("--t", o.t);
    }
    if (name == "supnorm") {
      sub->add_option("--mode", o.mode, "auto, grid or multi-start");
      sub->add_option("--resolution", o.resolution);
      sub->add_option("--restarts", o.restarts);
    }
    if (name == "carlson") {
      sub->add_option("--sigma", o.sigma);
      sub->add_option("-T,--T", o.T);
    }
    if (name == "mc-growth" || name == "mc-primes") {
      sub->add_option("inputs", o.inputs, "coefficient CSV or gen: input (default gen:ones / gen:prime-inverse)")->expected(0, 1);
      sub->add_option("--length", o.length);
      sub->add_option("--chars", o.chars, "number of characters");
      sub->add_option("--nmax", o.n_max, "largest partial-sum index");
      sub->add_flag("--conjecture", o.conjecture, "also record sup |S_N| at N_max/8..N_max");
    }
    if (name == "mc-zeta") {
      sub->add_option("--chars", o.chars);
      sub->add_option("--pmax", o.p_max);
      sub->add_option("--sigma-min", o.sigma_min);
      sub->add_option("--sigma-lo", o.grid.sigma_lo);
      sub->add_option("--sigma-hi", o.grid.sigma_hi);
      sub->add_option("--t-lo", o.grid.t_lo);
      sub->add_option("--t-hi", o.grid.t_hi);
      sub->add_option("--n-sigma", o.grid.n_sigma);
      sub->add_option("--n-t", o.grid.n_t);
    }
    if (name == "gram") {
      sub->add_option("--J", o.J, "section size");
      sub->add_option("--basis-limit", o.basis_limit);
    }
    if (name == "gram" || name == "riesz-check" || name == "complete-check") {
      sub->add_option("--tail", o.tail, "auto, zero, tm or rtm");
    }
    if (name == "construct-413") {
      sub->add_option("--K", o.K, "sign alternations");
      sub->add_option("--tail-cap", o.tail_cap, "largest admissible block end");
      sub->add_option("--coefficients-out", o.coefficients_out);
    }
    if (name == "construct-55") {
      sub->add_option("--pmax", o.p_max);
      sub->add_option("--length", o.length, "coefficient length of the emitted spec");
      sub->add_option("--coefficients-out", o.coefficients_out);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) { reversed.pop_back(); }
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const &e) {
    out << app.help();
    return kOk;
  } catch (CLI::ParseError const &e) {
    if (e.get_exit_code() == 0) { return kOk; }
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  auto const start = std::chrono::steady_clock::now();
  try {
    std::ofstream file;
    std::ostream *sink = &out;
    if (!c.output.empty() && c.output != "-") {
      file.open(c.output);
      if (!file) { throw std::invalid_argument("cannot write '" + c.output + "'"); }
      sink = &file;
    }
    int status = kOk;
    try {
      execute(c, o, *sink);
    } catch (ResourceError const &e) {
      err << "resource cap: " << e.what() << '\n';
      status = kResourceCap;
    }
    sink->flush();
    double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_meta(c, seconds);
    err << c.command << ": " << fmt(seconds) << " s\n";
    return status;
  } catch (CLI::CallForHelp const &) {
    err << app.help();
    return kUsage;
  } catch (UsageError const &e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (ResourceError const &e) {
    err << "resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (std::exception const &e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
}

} // namespace dseries::cli
