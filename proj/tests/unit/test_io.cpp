#include "dseries/io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

using namespace dseries;
using Poly = DirichletPoly<double>;

TEST_CASE("coefficient CSV roundtrip is exact")
{
  std::mt19937_64 rng(81);
  Poly f(oracle::random_coeffs(rng, 500));
  f[7] = cd(-0.0, 1e-300);
  f[8] = cd(5e-324, -1.7976931348623157e308);
  std::stringstream ss;
  write_coefficients_csv(ss, f, {{"seed", "1"}, {"limit", "500"}});
  auto const text = ss.str();
  CHECK(text.rfind("# seed=1\n# limit=500\nn,re,im\n1,", 0) == 0);
  CHECK(text.find("-0,") == std::string::npos);
  auto const g = read_coefficients_csv(ss);
  CHECK(g.size() == 500);
  for (Index n = 1; n <= 500; ++n) { CHECK(g[n] == f[n]); }
}

TEST_CASE("coefficient CSV parsing")
{
  std::istringstream two_column("# comment\nn,re\n1,1\n2,0.5\n\n3,-2\n");
  auto const f = read_coefficients_csv(two_column);
  CHECK(f.size() == 3);
  CHECK(f[3] == cd(-2));

  std::istringstream no_header("1,1,0\n2,0,1\n");
  CHECK(read_coefficients_csv(no_header)[2] == cd(0, 1));

  std::istringstream gap("n,re,im\n1,1,0\n3,1,0\n");
  CHECK_THROWS_AS(read_coefficients_csv(gap), std::invalid_argument);
  std::istringstream junk("n,re,im\n1,abc,0\n");
  CHECK_THROWS_AS(read_coefficients_csv(junk), std::invalid_argument);
  std::istringstream wide("n,re,im\n1,1,0,4\n");
  CHECK_THROWS_AS(read_coefficients_csv(wide), std::invalid_argument);
  std::istringstream empty("n,re,im\n");
  CHECK_THROWS_AS(read_coefficients_csv(empty), std::invalid_argument);
  std::istringstream nonfinite("n,re,im\n1,inf,0\n");
  CHECK_THROWS_AS(read_coefficients_csv(nonfinite), std::invalid_argument);
  CHECK_THROWS_AS(read_coefficients_csv(std::string("/nonexistent/file.csv")), std::invalid_argument);
}

TEST_CASE("non-finite numbers in JSON")
{
  double const inf = std::numeric_limits<double>::infinity();
  CHECK(number_to_json(inf) == "inf");
  CHECK(number_to_json(-inf) == "-inf");
  CHECK(number_to_json(std::nan("")) == "nan");
  CHECK(number_from_json(number_to_json(inf)) == inf);
  CHECK(number_from_json(number_to_json(-inf)) == -inf);
  CHECK(std::isnan(number_from_json(number_to_json(std::nan("")))));
  CHECK(number_from_json(number_to_json(0.1)) == 0.1);
  CHECK_THROWS_AS(number_from_json(json("infinity")), std::invalid_argument);
}

TEST_CASE("polynomial JSON roundtrip")
{
  FactorTable t(2000);
  std::mt19937_64 rng(82);
  Poly f(oracle::random_coeffs(rng, 2000));
  auto const P = lift(f, t);
  auto const j = poly_to_json(P);
  auto const back = poly_from_json(json::parse(j.dump()));
  CHECK(back == P);
  CHECK(j[0]["exponents"].empty());
  CHECK(j[1]["exponents"] == json::parse("[[2,1]]"));

  CHECK_THROWS_AS(poly_from_json(json::parse("{\"re\": 1}")), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_json(json::parse("[{\"exponents\": [[3,1],[2,1]], \"re\": 1, \"im\": 0}]")), std::invalid_argument);
}

TEST_CASE("config echo roundtrip preserves order")
{
  ConfigEcho const echo{{"zeta", "1"}, {"alpha", "x y"}, {"mid", ""}};
  CHECK(config_from_json(json::parse(config_to_json(echo).dump())) == echo);
}

TEST_CASE("growth report roundtrip")
{
  FactorTable t(4096);
  Poly f(4096);
  for (u64 p : t.primes()) { f[static_cast<Index>(p)] = 1.0 / static_cast<double>(p); }
  ExperimentConfig cfg;
  cfg.master_seed = 99;
  cfg.num_characters = 12;
  cfg.n_max = 4096;
  cfg.conjecture_mode = true;
  auto const r = prime_supported_experiment(f, cfg, t);
  auto const j = to_json_value(r);
  auto const back = growth_report_from_json(json::parse(j.dump()));
  CHECK(back.config.master_seed == 99);
  CHECK(back.config.n_max == 4096);
  CHECK(back.scales == r.scales);
  REQUIRE(back.rows.size() == r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(back.rows[i].seed == r.rows[i].seed);
    CHECK(back.rows[i].exponent == r.rows[i].exponent);
    CHECK(back.rows[i].residual == r.rows[i].residual);
    CHECK(back.rows[i].sup == r.rows[i].sup);
    CHECK(back.rows[i].sup_by_scale == r.rows[i].sup_by_scale);
  }
  REQUIRE(back.kolmogorov_bound_checks.size() == 4);
  CHECK(back.kolmogorov_bound_checks[2].bound == r.kolmogorov_bound_checks[2].bound);
  CHECK(to_json_value(back).dump() == j.dump());

  // CSV rows re-read by a plain parser
  std::stringstream ss;
  write_growth_report_csv(ss, r, {{"seed", "99"}});
  std::string line;
  std::vector<std::string> data;
  int comments = 0;
  while (std::getline(ss, line)) {
    if (line.rfind('#', 0) == 0) {
      ++comments;
    } else {
      data.push_back(line);
    }
  }
  CHECK(comments == 5);
  CHECK(data.front() == "index,seed,exponent,residual,sup,sup_normalized,sup_at_512,sup_at_1024,sup_at_2048,sup_at_4096");
  REQUIRE(data.size() == 13);
  std::stringstream row(data[3]);
  std::vector<std::string> fields;
  for (std::string f2; std::getline(row, f2, ',');) { fields.push_back(f2); }
  REQUIRE(fields.size() == 10);
  CHECK(std::stoull(fields[1]) == r.rows[2].seed);
  CHECK(std::stod(fields[4]) == r.rows[2].sup);
}

TEST_CASE("verdict roundtrip")
{
  CriterionVerdict v;
  v.status = VerdictStatus::No;
  v.rule = "prime-linear-l1";
  v.certificate = {{"sum", 1.1}, {"big", std::numeric_limits<double>::infinity()}};
  v.witness = {{2, cd(-0.9, 0.0)}, {3, cd(0.1, -0.2)}};
  v.notes = {"a", "b"};
  v.boundary = true;
  auto const back = verdict_from_json(json::parse(to_json_value(v).dump()));
  CHECK(back.status == v.status);
  CHECK(back.rule == v.rule);
  CHECK(back.certificate == v.certificate);
  CHECK(back.witness == v.witness);
  CHECK(back.notes == v.notes);
  CHECK(back.boundary);
  CHECK_FALSE(back.tail_extrapolated);
  CHECK_THROWS_AS(verdict_from_json(json::parse("{\"status\": \"Maybe\"}")), std::invalid_argument);
}

TEST_CASE("Gram CSV re-parses to the same matrix")
{
  std::mt19937_64 rng(83);
  Poly a(oracle::random_coeffs(rng, 20));
  auto const g = gram_section(a, 5);
  std::stringstream ss;
  write_gram_csv(ss, g);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "j,k,re,im");
  int count = 0;
  while (std::getline(ss, line)) {
    int j = 0, k = 0;
    double re = 0, im = 0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &j, &k, &re, &im) == 4);
    CHECK(g.G(j - 1, k - 1) == cd(re, im));
    ++count;
  }
  CHECK(count == 25);
}

TEST_CASE("report values serialize and re-parse")
{
  auto const alt = construct_alternating_zeros(2);
  auto const j = to_json_value(alt);
  CHECK(json::parse(j.dump()) == j);
  CHECK(j.dump().find("NaN") == std::string::npos);

  FrameBounds fb{0.25, 4.0};
  CHECK(json::parse(to_json_value(fb).dump()) == to_json_value(fb));

  SupNormResult s;
  s.lower = 1.5;
  s.estimate = std::numeric_limits<double>::infinity();
  auto const sj = to_json_value(s);
  CHECK(json::parse(sj.dump()) == sj);
}
