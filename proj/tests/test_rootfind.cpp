#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "surfcert/rootfind.hpp"

using namespace surfcert::rootfind;

TEST_CASE("winding counts zeros of holomorphic functions") {
  CFn cube = [](Complex z) { return z * z * z; };
  CHECK(winding_circle(cube, {0, 0}, 1.0) == 3);
  CHECK(winding_circle(cube, {2, 0}, 0.5) == 0);

  CFn two = [](Complex z) { return (z - Complex(0.2, 0.1)) * (z + Complex(0.3, -0.2)); };
  CHECK(winding_circle(two, {0, 0}, 1.0) == 2);
  CHECK(winding_circle(two, {0.2, 0.1}, 0.05) == 1);

  Box b{-0.5, -0.5, 0.5, 0.5};
  CHECK(winding_box([](Complex z) { return z; }, b) == 1);
  CHECK(winding_box([](Complex z) { return z - Complex(2, 0); }, b) == 0);
}

TEST_CASE("winding rejects contours through zeros") {
  CFn id = [](Complex z) { return z; };
  // the box corner sits exactly on the zero
  Box b{0.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(winding_box(id, b), WindingError);
  // the guarded version inflates its way out
  Box g = b;
  CHECK(winding_box_guarded(id, g) == 1);
}

TEST_CASE("newton polish converges quadratically") {
  CFn f = [](Complex z) { return z * z - 2.0; };
  auto r = newton_polish(f, {1.2, 0.3}, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.root - Complex(std::sqrt(2.0), 0)) < 1e-12);
  CHECK(r.residual < 1e-12);
}

TEST_CASE("find_coincidences locates all roots with multiplicities") {
  CFn f = [](Complex z) {
    return z * (z - Complex(0.2, 0.0)) * (z + Complex(0.1, 0.2));
  };
  CFn zero = [](Complex) { return Complex(0.0); };
  auto roots = find_coincidences(f, zero, Region::disc({0, 0}, 0.45));
  REQUIRE(roots.size() == 3);
  for (const auto& r : roots) {
    CHECK(r.multiplicity == 1);
    CHECK(r.residual <= 1e-10 * r.scale);
  }
  // sorted by real part: -0.1-0.2i, 0, 0.2
  CHECK(std::abs(roots[0].root - Complex(-0.1, -0.2)) < 1e-12);
  CHECK(std::abs(roots[1].root) < 1e-12);
  CHECK(std::abs(roots[2].root - Complex(0.2, 0.0)) < 1e-12);
}

TEST_CASE("double roots carry multiplicity two") {
  CFn f = [](Complex z) { return (z - 0.1) * (z - 0.1); };
  CFn zero = [](Complex) { return Complex(0.0); };
  auto roots = find_coincidences(f, zero, Region::disc({0, 0}, 0.45));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].multiplicity == 2);
  CHECK(std::abs(roots[0].root - Complex(0.1, 0)) < 1e-7);
}

TEST_CASE("roots outside the region are not reported but counts stay consistent") {
  CFn f = [](Complex z) { return (z - 0.2) * (z - 0.9); };  // 0.9 outside
  CFn zero = [](Complex) { return Complex(0.0); };
  auto roots = find_coincidences(f, zero, Region::disc({0, 0}, 0.45));
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].root - Complex(0.2, 0)) < 1e-12);
}

TEST_CASE("clear factor removes known poles") {
  const Complex q(0.3, 0.1);
  CFn f = [q](Complex z) { return (z - 0.1) / (1.0 - z / q); };
  CFn zero = [](Complex) { return Complex(0.0); };
  ClearFactor cf;
  cf.zeros = {q};
  cf.factor = [q](Complex z) { return 1.0 - z / q; };
  auto roots = find_coincidences(f, zero, Region::disc({0, 0}, 0.45), &cf);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].root - Complex(0.1, 0)) < 1e-12);
}

TEST_CASE("annulus regions subtract the inner winding") {
  CFn f = [](Complex z) { return z * (z - 0.3); };
  CFn zero = [](Complex) { return Complex(0.0); };
  auto roots = find_coincidences(f, zero, Region::annulus({0, 0}, 0.1, 0.45));
  REQUIRE(roots.size() == 1);  // only the root at 0.3; 0 is inside the hole
  CHECK(std::abs(roots[0].root - Complex(0.3, 0)) < 1e-12);
}

TEST_CASE("transversality certificate") {
  CFn f = [](Complex z) { return z * z - 0.25; };  // simple roots at +-0.5
  CFn zero = [](Complex) { return Complex(0.0); };
  auto tv = check_transversality(f, zero, {0.5, 0}, 1.0);
  CHECK_FALSE(tv.tangency_alarm);
  CHECK(tv.positive);
  CHECK(tv.derivative_gap > 0.9);

  // double root: tangency alarm
  CFn sq = [](Complex z) { return z * z; };
  auto tq = check_transversality(sq, zero, {0, 0}, 1.0);
  CHECK(tq.tangency_alarm);

  // anti-holomorphic section: not positive
  CFn conj = [](Complex z) { return std::conj(z) + 0.5; };
  CFn lin = [](Complex) { return Complex(0.0); };
  auto ta = check_transversality(conj, lin, {-0.5, 0}, 1.0);
  CHECK(ta.cr_residual_f > 0.4);
  CHECK_FALSE(ta.positive);
}

TEST_CASE("wirtinger derivatives split holomorphic and conjugate parts") {
  CFn s = [](Complex z) { return z * z + 3.0 * std::conj(z); };
  auto d = wirtinger(s, {0.2, 0.1}, 1e-6);
  CHECK(std::abs(d.dz - Complex(0.4, 0.2)) < 1e-8);
  CHECK(std::abs(d.dzbar - Complex(3.0, 0)) < 1e-8);
}
