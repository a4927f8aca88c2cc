#include <doctest.h>

#include "canp/errors.hpp"
#include "canp/serialization.hpp"

using namespace canp;
using nlohmann::json;

TEST_CASE("complex numbers") {
  const json j = std::complex<double>{0.3, -1.0};
  CHECK(j == json{{"re", 0.3}, {"im", -1.0}});
  CHECK(j.get<std::complex<double>>() == std::complex<double>{0.3, -1.0});
  CHECK(json(2.5).get<std::complex<double>>() == std::complex<double>{2.5, 0.0});
}

TEST_CASE("operators round trip") {
  const QuadraticOperator op{.n = 1.0, .aa = cplx{0.1, 0.2}, .adad = cplx{0.1, -0.2}, .a = 0.5, .ad = 0.5, .one = -0.5};
  CHECK(json(op).get<QuadraticOperator>() == op);
  CHECK(json::parse(R"({"n": 1})").get<QuadraticOperator>() == ops::number());
  CHECK_THROWS_AS(json::parse(R"({"nn": 1})").get<QuadraticOperator>(), ConfigError);
}

TEST_CASE("model parameters round trip") {
  const models::ModelParams p{.variant = models::Variant::LmgFrequency, .lambda = 0.4, .gamma = 3.0};
  const auto back = json(p).get<models::ModelParams>();
  CHECK(back.variant == p.variant);
  CHECK(back.lambda == p.lambda);
  CHECK(back.gamma == p.gamma);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"variant": "qrm-frequency", "gg": 0.5})").get<models::ModelParams>(),
                  ConfigError);
}
