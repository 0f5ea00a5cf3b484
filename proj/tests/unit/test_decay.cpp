#include <doctest.h>

#include <cmath>

#include "deepwave/decay.hpp"
#include "deepwave/error.hpp"
#include "oracles.hpp"

using namespace deepwave;

TEST_CASE("rational tail gives rho = 2") {
  const double L = 400;
  const Grid g = Grid::line(1 << 13, L);
  const DecayFit f = decay_rate_fit(Profile::sample(g, [](double x) { return 1 / (1 + x * x); }));
  // oracle: slope between the two window ends of the closed form
  const double a = L / 4, b = 3 * L / 4;
  const double slope = (std::log(1 / (1 + b * b)) - std::log(1 / (1 + a * a))) / (std::log(b) - std::log(a));
  CHECK(f.rho == doctest::Approx(-slope).epsilon(0.01));
  CHECK(std::abs(f.rho - 2.0) <= 0.1);
  CHECK_FALSE(f.superalgebraic);
  CHECK_FALSE(f.envelope);
  CHECK(f.x_lo >= L / 4 - g.spacing());
  CHECK(f.x_hi <= 0.95 * L);
  CHECK(f.fit_residual < 1e-3);
}

TEST_CASE("exponential tail is flagged superalgebraic") {
  const Grid g = Grid::line(1 << 12, 200);
  const DecayFit f = decay_rate_fit(Profile::sample(g, [](double x) { return std::exp(-std::abs(x)); }));
  CHECK(f.superalgebraic);
}

TEST_CASE("constant has rho = 0") {
  const Grid g = Grid::line(1024, 100);
  const DecayFit f = decay_rate_fit(Profile::constant(g, 2.5));
  CHECK(std::abs(f.rho) <= 0.01);
}

TEST_CASE("sign changes switch to the envelope of local maxima") {
  const Grid g = Grid::line(1 << 14, 400);
  const DecayFit f = decay_rate_fit(Profile::sample(g, [](double x) { return std::cos(x) / (1 + x * x); }));
  CHECK(f.envelope);
  CHECK(std::abs(f.rho - 2.0) <= 0.1);
}

TEST_CASE("too few envelope points is an error") {
  const Grid g = Grid::line(256, 100);
  try {
    decay_rate_fit(Profile::sample(g, [](double x) { return std::cos(0.05 * x) / (1 + x * x); }), FitWindow{30, 60});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_data);
  }
  CHECK_THROWS_AS(decay_rate_fit(Profile::zeros(Grid::periodic(64, 1.0))), Error);
}

TEST_CASE("fit is equivariant under rescaling x") {
  const Grid g = Grid::line(1 << 13, 400);
  for (double lambda : {0.5, 2.0, 3.0}) {
    const DecayFit f =
        decay_rate_fit(Profile::sample(g, [lambda](double x) { return 1 / (1 + lambda * lambda * x * x); }));
    CHECK(std::abs(f.rho - 2.0) <= 0.1);
  }
}

TEST_CASE("weighted holder norm: trivial values") {
  const Grid g = Grid::line(512, 20);
  CHECK(weighted_holder_norm(Profile::zeros(g), 0, 0.5, 2.0) == 0.0);
  CHECK(weighted_holder_norm(Profile::constant(g, 1.0), 0, 0.5, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(weighted_holder_norm(Profile::zeros(g), 2, 0.5, 1.0), Error);
  CHECK_THROWS_AS(weighted_holder_norm(Profile::zeros(g), 0, 1.0, 1.0), Error);
}

TEST_CASE("weighted holder norm of 1/(1+x^2) matches the pairwise oracle and is stable") {
  auto v = [](double x) { return 1 / (1 + x * x); };
  const double L = 20;
  const Grid g = Grid::line(256, L);
  const double exact = weighted_holder_norm(Profile::sample(g, v), 0, 0.5, 2.0, 1000);
  CHECK(exact == doctest::Approx(oracle::holder_pairwise(v, L, 256, 0.5, 2.0)).epsilon(1e-12));
  // the sup over pairs is sampled on the nodes, so it settles once h is well
  // below the unit pair distance
  double prev = weighted_holder_norm(Profile::sample(Grid::line(1024, L), v), 0, 0.5, 2.0);
  for (std::size_t n = 2048; n <= 8192; n *= 2) {
    const double cur = weighted_holder_norm(Profile::sample(Grid::line(n, L), v), 0, 0.5, 2.0);
    CHECK(std::isfinite(cur));
    CHECK(std::abs(cur - prev) <= 0.02 * prev);
    prev = cur;
  }
}

TEST_CASE("weighted holder norm is monotone in rho and in k") {
  const Grid g = Grid::line(1024, 30);
  const Profile v = Profile::sample(g, [](double x) { return std::exp(-x * x / 8) + 0.1 / (1 + x * x); });
  double prev = 0.0;
  for (double rho : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const double n0 = weighted_holder_norm(v, 0, 0.3, rho);
    const double n1 = weighted_holder_norm(v, 1, 0.3, rho);
    CHECK(n0 >= prev);
    CHECK(n1 >= n0);
    prev = n0;
  }
}
