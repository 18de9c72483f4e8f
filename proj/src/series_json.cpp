#include "maass/series_json.hpp"

namespace maass {

using nlohmann::json;

json to_json(const ExactScalar& s) {
  return json::array({s.re().get_str(), s.im().get_str(), s.pi_exp()});
}

ExactScalar scalar_from_json(const json& j) {
  return ExactScalar(parse_q(j.at(0).get<std::string>()), parse_q(j.at(1).get<std::string>()),
                     j.at(2).get<int>());
}

json to_json(const QSeries& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.terms()) {
    terms.push_back(json::array({k, c.re().get_str(), c.im().get_str(), c.pi_exp()}));
  }
  return json{{"den", s.den()}, {"trunc", s.trunc()}, {"terms", terms}};
}

QSeries qseries_from_json(const json& j) {
  QSeries s(j.at("den").get<long>(), j.at("trunc").get<long>());
  for (const auto& row : j.at("terms")) {
    s.set(row.at(0).get<long>(),
          ExactScalar(parse_q(row.at(1).get<std::string>()),
                      parse_q(row.at(2).get<std::string>()), row.at(3).get<int>()));
  }
  return s;
}

json to_json(const ZetaQSeries& s) {
  long zden = 1;
  for (const auto& kv : s.terms()) zden = std::lcm(zden, kv.second.zden());
  json terms = json::array();
  for (const auto& [k, poly] : s.terms()) {
    const ZetaPoly p = poly.rescaled(zden);
    for (const auto& [a, c] : p.terms()) {
      terms.push_back(
          json::array({k, a, c.re().get_str(), c.im().get_str(), c.pi_exp()}));
    }
  }
  return json{{"den", s.den()}, {"zden", zden}, {"trunc", s.trunc()}, {"terms", terms}};
}

ZetaQSeries zeta_qseries_from_json(const json& j) {
  const long zden = j.at("zden").get<long>();
  std::map<long, ZetaPoly> acc;
  for (const auto& row : j.at("terms")) {
    acc[row.at(0).get<long>()] += ZetaPoly::monomial(
        ExactScalar(parse_q(row.at(2).get<std::string>()),
                    parse_q(row.at(3).get<std::string>()), row.at(4).get<int>()),
        row.at(1).get<long>(), zden);
  }
  ZetaQSeries s(j.at("den").get<long>(), j.at("trunc").get<long>());
  for (const auto& [k, p] : acc) s.set(k, p);
  return s;
}

json to_json(const PiPolynomial& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) {
    terms.push_back(json::array({c.re().get_str(), c.im().get_str(), k}));
  }
  return terms;
}

}  // namespace maass
