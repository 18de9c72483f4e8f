#pragma once

// JSON form of exact series: {den, trunc, terms: [[k, re, im, pi_exp], ...]}
// with rationals written as strings. Zeta series add "zden" and use
// [k, j, re, im, pi_exp] rows, j being the zeta exponent over zden.

#include <json.hpp>

#include "maass/qseries.hpp"

namespace maass {

nlohmann::json to_json(const ExactScalar& s);
ExactScalar scalar_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QSeries& s);
QSeries qseries_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ZetaQSeries& s);
ZetaQSeries zeta_qseries_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PiPolynomial& p);

}  // namespace maass
