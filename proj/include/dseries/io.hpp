#pragma once

#include "dseries/bohrlift.hpp"
#include "dseries/carlson.hpp"
#include "dseries/constructions.hpp"
#include "dseries/criteria.hpp"
#include "dseries/dilation.hpp"
#include "dseries/experiments.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dseries {

using json = nlohmann::ordered_json;

/// key=value pairs echoed into every artifact, in insertion order.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Coefficient CSV: header `n,re,im`, rows for n = 1..N in order. Lines
/// starting with '#' are comments. Throws std::invalid_argument on malformed
/// input or a gap in n.
DirichletPoly<double> read_coefficients_csv(std::istream &in);
DirichletPoly<double> read_coefficients_csv(std::string const &path);
void write_coefficients_csv(std::ostream &out, DirichletPoly<double> const &f, ConfigEcho const &echo = {});

/// Doubles as JSON; non-finite values become the strings "inf", "-inf", "nan".
json number_to_json(double x);
double number_from_json(json const &j);

json poly_to_json(MultiIndexPoly const &P);
MultiIndexPoly poly_from_json(json const &j);

json config_to_json(ConfigEcho const &echo);
ConfigEcho config_from_json(json const &j);

json to_json_value(GrowthExperimentReport const &r);
GrowthExperimentReport growth_report_from_json(json const &j);
/// One row per character: index, seed, exponent, residual, sup, sup_normalized,
/// then any per-scale sups; Kolmogorov checks follow as comment lines.
void write_growth_report_csv(std::ostream &out, GrowthExperimentReport const &r, ConfigEcho const &echo = {});

json to_json_value(CriterionVerdict const &v);
CriterionVerdict verdict_from_json(json const &j);

json to_json_value(ZetaChiReport const &r);
json to_json_value(SupNormResult const &r);
json to_json_value(CarlsonReport const &r);
json to_json_value(FrameBounds const &fb);
json to_json_value(AlternatingZerosResult const &r);
json to_json_value(VanishingInfimumResult const &r);

/// Long format: j,k,re,im.
void write_gram_csv(std::ostream &out, GramSection<double> const &g, ConfigEcho const &echo = {});

} // namespace dseries
