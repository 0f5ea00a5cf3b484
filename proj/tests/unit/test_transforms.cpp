#include <doctest.h>

#include <cmath>
#include <numbers>

#include "deepwave/error.hpp"
#include "deepwave/templates.hpp"
#include "deepwave/transforms.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace deepwave;
using testing::max_diff;
using testing::max_error;
constexpr double pi = std::numbers::pi;

TEST_CASE("periodic hilbert on single modes") {
  const Grid g = Grid::periodic(64, 2 * pi);
  CHECK(max_error(hilbert_periodic(Profile::sample(g, [](double x) { return std::cos(x); })),
                  [](double x) { return std::sin(x); }) < 1e-14);
  CHECK(max_error(hilbert_periodic(Profile::constant(g, 1.0)), [](double) { return 0.0; }) == 0.0);
  CHECK(max_error(hilbert_periodic(Profile::sample(g, [](double x) { return std::sin(3 * x); })),
                  [](double x) { return -std::cos(3 * x); }) < 1e-14);
}

TEST_CASE("periodic hilbert zeroes the nyquist mode") {
  const Grid g = Grid::periodic(16, 2 * pi);
  const Profile nyq = Profile::sample(g, [](double x) { return std::cos(8 * x); });
  CHECK(sup_norm(hilbert_periodic(nyq)) < 1e-14);
}

TEST_CASE("periodic hilbert rejects line grids") {
  const Profile v = Profile::zeros(Grid::line(16, 1.0));
  try {
    hilbert_periodic(v);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("H^2 = -I, skew adjointness and the |k| multiplier for n = 2^8 .. 2^12") {
  SeededStream rng(7);
  for (std::size_t n = 256; n <= 4096; n *= 2) {
    CAPTURE(n);
    const Grid g = Grid::periodic(n, 2 * pi);
    const Profile u = testing::random_trig(g, static_cast<int>(n / 2 - 1), rng);
    const Profile v = testing::random_trig(g, static_cast<int>(n / 2 - 1), rng);
    CHECK(max_diff(hilbert_periodic(hilbert_periodic(u)), -u) <= 1e-12);
    const double skew = pairing(hilbert_periodic(u), v) + pairing(u, hilbert_periodic(v));
    CHECK(std::abs(skew) <= 1e-10 * l2_norm(u) * l2_norm(v));
    for (int k : {1, 2, 5, static_cast<int>(n / 2 - 1), static_cast<int>(n / 2)}) {
      const Profile c = Profile::sample(g, [k](double x) { return std::cos(k * x); });
      const Profile s = Profile::sample(g, [k](double x) { return std::sin(k * x); });
      CHECK(max_diff(conjugate_derivative(c), static_cast<double>(k) * c) <= 1e-10 * k);
      if (k < static_cast<int>(n / 2)) CHECK(max_diff(conjugate_derivative(s), static_cast<double>(k) * s) <= 1e-10 * k);
    }
  }
}

TEST_CASE("line hilbert of 1/(1+x^2) against principal value quadrature") {
  const Grid g = Grid::line(1 << 14, 200.0);
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  const Profile hv = hilbert_line(Profile::sample(g, f), LineOptions::unchecked());
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); i += 257) {
    const double ref = oracle::hilbert(f, g.node(i));
    err = std::max(err, std::abs(hv[i] - ref));
  }
  CHECK(err <= 1e-3);
  // oracle sanity against the closed form
  CHECK(oracle::hilbert(f, 3.0) == doctest::Approx(3.0 / 10.0).epsilon(1e-9));
}

TEST_CASE("line hilbert of zero") {
  const Profile z = Profile::zeros(Grid::line(256, 10.0));
  CHECK(sup_norm(hilbert_line(z)) == 0.0);
  CHECK(sup_norm(hilbert_line(z, {HilbertMethod::periodized})) == 0.0);
}

TEST_CASE("line hilbert of a gaussian: both methods against the oracle") {
  auto f = [](double x) { return std::exp(-x * x); };
  const Grid g = Grid::line(1 << 12, 40.0);
  const Profile v = Profile::sample(g, f);
  const Profile pv = hilbert_line(v);
  const Profile per = hilbert_line(v, {HilbertMethod::periodized});
  double err_pv = 0.0, err_per = 0.0;
  for (std::size_t i = 0; i < g.size(); i += 61) {
    const double ref = oracle::hilbert(f, g.node(i));
    err_pv = std::max(err_pv, std::abs(pv[i] - ref));
    err_per = std::max(err_per, std::abs(per[i] - ref));
  }
  // The quadrature rule reaches the oracle; periodization carries an O(1/L)
  // image error because int v != 0.
  CHECK(err_pv <= 1e-6);
  CHECK(err_per > 1e-6);
  CHECK(err_per <= 2.0 / g.half_width());
}

TEST_CASE("periodized and quadrature methods converge to each other like 1/L") {
  // compactly supported smooth bump
  auto bump = [](double x) { return std::abs(x) < 1 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; };
  double prev = 0.0;
  for (double L : {16.0, 32.0, 64.0}) {
    const Grid g = Grid::line(static_cast<std::size_t>(L * 64), L);
    const Profile v = Profile::sample(g, bump);
    const double d = max_diff(hilbert_line(v), hilbert_line(v, {HilbertMethod::periodized}));
    CHECK(d * L < 0.2);
    if (prev > 0) CHECK(prev / d == doctest::Approx(2.0).epsilon(0.1));
    prev = d;
  }
}

TEST_CASE("line hilbert rejects non-decaying input and names the endpoints") {
  const Grid g = Grid::line(256, 10.0);
  const Profile v = Profile::sample(g, [](double x) { return 1.0 / (1.0 + std::abs(x)); });
  try {
    hilbert_line(v);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::decay_violation);
    CHECK(std::string(e.what()).find("0.0909") != std::string::npos);
  }
  CHECK_NOTHROW(hilbert_line(v, LineOptions::unchecked()));
}

TEST_CASE("spectral derivative") {
  const Grid p = Grid::periodic(32, 2 * pi);
  CHECK(max_error(derivative(Profile::sample(p, [](double x) { return std::sin(x); })),
                  [](double x) { return std::cos(x); }) < 1e-13);
  CHECK(sup_norm(derivative(Profile::constant(p, 3.0))) < 1e-14);
  const Grid g = Grid::line(1 << 12, 20.0);
  const Profile d = derivative(Profile::sample(g, [](double x) { return x * std::exp(-x * x); }));
  CHECK(max_error(d, [](double x) { return (1 - 2 * x * x) * std::exp(-x * x); }) <= 1e-8);
}

TEST_CASE("detrended derivative handles arctan") {
  const Grid g = Grid::line(1 << 12, 100.0);
  const Profile d = derivative_detrended(Profile::sample(g, [](double x) { return std::atan(x); }));
  // the residual after detrending has an O(1/L^2) slope mismatch across the wrap
  CHECK(max_error(d, [](double x) { return 1.0 / (1.0 + x * x); }) < 1e-4);
}

TEST_CASE("conjugate derivative") {
  const Grid p = Grid::periodic(64, 2 * pi);
  CHECK(max_error(conjugate_derivative(Profile::sample(p, [](double x) { return std::cos(2 * x); })),
                  [](double x) { return 2 * std::cos(2 * x); }) < 1e-13);
  CHECK(sup_norm(conjugate_derivative(Profile::constant(p, 1.0))) < 1e-14);
  const Grid g = Grid::line(2048, 20.0);
  const Profile v = Profile::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(max_diff(conjugate_derivative(v), hilbert_line(derivative(v))) <= 1e-10);
}

TEST_CASE("fourier multiplier keeps the nyquist real part") {
  const Grid g = Grid::periodic(16, 2 * pi);
  const Profile nyq = Profile::sample(g, [](double x) { return std::cos(8 * x); });
  const Profile out = fourier_multiplier(nyq, [](double xi) { return std::complex<double>(std::abs(xi), 0.0); });
  CHECK(max_diff(out, 8.0 * nyq) < 1e-12);
}
