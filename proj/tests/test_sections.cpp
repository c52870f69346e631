#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "surfcert/model.hpp"
#include "surfcert/params_io.hpp"

using namespace surfcert::model;

namespace {

ModelParams resolved_points(double lambda = 0.1) {
  ModelParams p = default_points();
  p.lambda = lambda;
  return p;
}

}  // namespace

TEST_CASE("default point layout is valid and degenerate layouts are rejected") {
  ModelParams p = default_points();
  CHECK_NOTHROW(p.validate_points());

  ModelParams dup = p;
  dup.nodes[3] = dup.nodes[7];
  CHECK_THROWS_AS(dup.validate_points(), std::invalid_argument);

  ModelParams bad_origin = p;
  bad_origin.nodes[10] = {0.1, 0.0};
  CHECK_THROWS_AS(bad_origin.validate_points(), std::invalid_argument);

  ModelParams pole_on_node = p;
  pole_on_node.pole_nodes[0] = p.nodes[2];
  CHECK_THROWS_AS(pole_on_node.validate_points(), std::invalid_argument);

  ModelParams big_lambda = p;
  big_lambda.lambda = 0.3;
  CHECK_THROWS_AS(big_lambda.validate_lambda(), std::invalid_argument);
}

TEST_CASE("bump plateaus and monotonicity") {
  Bump rho{0.5, 0.75};
  CHECK(rho(0.2) == 1.0);
  CHECK(rho(0.5) == 1.0);
  CHECK(rho(0.75) == 0.0);
  CHECK(rho(0.9) == 0.0);
  double prev = 1.0;
  for (int i = 1; i <= 100; ++i) {
    double v = rho(0.5 + 0.25 * i / 100.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("curve sections vanish at the marked points and equal 1 at the origin") {
  SectionFamily f(resolved_points());
  for (int j = 1; j <= 10; ++j) {
    for (int i = 1; i <= 10; ++i) {
      const Complex v = f.curve_section(j, f.marked_point_base(i));
      if (i == j)
        CHECK(std::abs(v) > 1.0);  // misses its own point by a definite margin
      else
        CHECK(std::abs(v) < 1e-12);  // zero up to complex-division rounding
    }
    CHECK(f.curve_section(j, 0.0) == Complex(1.0));
  }
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.3, 0.05)})
    CHECK(f.curve_section(11, z) == Complex(0.0));
}

TEST_CASE("branch sections pass through all eleven marked points") {
  SectionFamily f(resolved_points());
  for (int k = 1; k <= 3; ++k) {
    for (int i = 1; i <= 10; ++i)
      CHECK(std::abs(f.branch_section(k, f.marked_point_base(i))) < 1e-12);
    CHECK(f.branch_section(k, 0.0) == Complex(1.0));
    CHECK_THROWS_AS(f.branch_section(k, f.pole_point(k)), PoleError);
  }
}

TEST_CASE("normalization constant matches its defining product") {
  SectionFamily f(resolved_points());
  Complex prod = 1.0;
  for (int i = 0; i < 10; ++i) prod *= f.params().nodes[i];
  CHECK(std::abs(f.normalization() * prod + 1.0) < 1e-14);
}

TEST_CASE("chart transition identity on the overlap") {
  SectionFamily f(resolved_points());
  for (double r : {0.51, 0.6, 0.85, 0.99}) {
    for (double th : {0.1, 1.0, 2.5, 4.0, 5.9}) {
      const Complex z = std::polar(r, th);
      Complex z3 = z * z * z;
      const Complex t = 1.0 / (z3 * z3 * z3);
      for (int j = 1; j <= 10; ++j) {
        const Complex lhs = f.curve_section_V(j, z);
        const Complex rhs = t * f.curve_section(j, z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
      }
      for (int k = 1; k <= 3; ++k) {
        const Complex lhs = f.branch_section_V(k, z);
        const Complex rhs = t * f.branch_section(k, z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
      }
    }
  }
}

TEST_CASE("glued sections: plateau region and exact overlap region") {
  SectionFamily f(resolved_points());
  for (int j = 1; j <= 10; ++j) {
    // constant beyond 3/4
    const Complex c = f.curve_section_const(j);
    CHECK(f.curve_section_glued(j, std::polar(0.9, 1.3)) == c);
    CHECK(f.curve_section_glued(j, std::polar(0.76, 0.2)) == c);
    // equals the V-chart form where the plateau is 1
    const Complex z = std::polar(0.55, 2.1);
    CHECK(std::abs(f.curve_section_glued(j, z) - f.curve_section_V(j, z)) <=
          1e-13 * std::abs(f.curve_section_V(j, z)));
  }
  CHECK(f.curve_section_glued(11, std::polar(0.6, 0.0)) == Complex(0.0));
  for (int k = 1; k <= 3; ++k) {
    CHECK(f.branch_section_glued(k, std::polar(0.8, 4.4)) == f.branch_section_const(k));
    const Complex z = std::polar(0.5, 0.77);
    CHECK(std::abs(f.branch_section_glued(k, z) - f.branch_section_V(k, z)) <=
          1e-13 * std::abs(f.branch_section_V(k, z)));
  }
  CHECK_THROWS_AS(f.curve_section_glued(1, Complex(0.1, 0.0)), ChartError);
}

TEST_CASE("chart-checked evaluators enforce their domains") {
  SectionFamily f(resolved_points());
  CHECK_THROWS_AS(eval_curve_section(f, 1, Complex(1.2, 0), Chart::D), ChartError);
  CHECK_THROWS_AS(eval_curve_section(f, 1, Complex(0.3, 0), Chart::V), ChartError);
  CHECK_NOTHROW(eval_curve_section(f, 1, Complex(0.3, 0), Chart::D));
  CHECK_NOTHROW(eval_curve_section(f, 1, Complex(0.7, 0), Chart::V));
  CHECK_THROWS_AS(eval_curve_section_glued(f, 1, Complex(0.2, 0)), ChartError);
  CHECK_NOTHROW(eval_branch_section_glued(f, 1, Complex(0.3, 0), Chart::D));
}

TEST_CASE("params file parsing") {
  std::istringstream in(
      "# comment\n"
      "lambda = 0.08\n"
      "node1 = 0.4, 0.1   # inline comment\n"
      "pole2 = -0.2,0.05\n"
      "rho_profile = exp-smoothstep\n");
  ModelParams p = parse_params_text(in);
  CHECK(p.lambda == 0.08);
  CHECK(p.nodes[0] == Complex(0.4, 0.1));
  CHECK(p.pole_nodes[1] == Complex(-0.2, 0.05));

  std::istringstream unknown("foo = 1\n");
  CHECK_THROWS_AS(parse_params_text(unknown), ParamsError);
  std::istringstream badc("node2 = 0.5\n");
  CHECK_THROWS_AS(parse_params_text(badc), ParamsError);
  std::istringstream noeq("lambda 0.1\n");
  CHECK_THROWS_AS(parse_params_text(noeq), ParamsError);
  std::istringstream dup("node1 = 0.25,0.25\nnode2 = 0.25,0.25\n");
  CHECK_THROWS_AS(parse_params_text(dup), ParamsError);
  std::istringstream outr("node12 = 0.1,0.1\n");
  CHECK_THROWS_AS(parse_params_text(outr), ParamsError);
}
