#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcert/config_model.hpp"
#include "surfcert/config_report.hpp"

using namespace surfcert;
using namespace surfcert::model;

namespace {

const ResolvedModel& default_resolved() {
  static ResolvedModel r = resolve_model(default_points());
  return r;
}

}  // namespace

TEST_CASE("bound certificate on the default layout") {
  auto cert = certify_bounds(default_points());
  CHECK(cert.M0_uniform > 0.5);
  CHECK(cert.M0_uniform < 5.0);
  CHECK(cert.M_uniform > 0.1);
  CHECK(cert.M_uniform < 5.0);
  CHECK(cert.lambda_max > 0.01);
  CHECK(cert.lambda_max <= 0.25);
}

TEST_CASE("lambda certificate is maximal: beyond it a disc pair overlaps") {
  auto cert = certify_bounds(default_points());
  ModelParams p = default_points();
  const double m = 1e-6;
  // at lambda slightly above the certificate some pair of safety discs
  // meets (or a disc reaches the origin)
  const double lam = cert.lambda_max * 1.02;
  bool overlap = false;
  for (int j = 0; j < 10 && !overlap; ++j) {
    const double rj = cert.M0_uniform * std::abs(p.nodes[j]);
    if (std::abs(p.nodes[j]) <= rj * lam + m) overlap = true;
    for (int k = j + 1; k < 10; ++k) {
      const double rk = cert.M0_uniform * std::abs(p.nodes[k]);
      if (std::abs(p.nodes[j] - p.nodes[k]) <= (rj + rk) * lam + m) overlap = true;
    }
    for (int k = 0; k < 3; ++k) {
      const double rk = cert.M_uniform * std::abs(p.pole_nodes[k]);
      if (std::abs(p.nodes[j] - p.pole_nodes[k]) <= (rj + rk) * lam + m) overlap = true;
    }
  }
  for (int j = 0; j < 3 && !overlap; ++j)
    for (int k = j + 1; k < 3; ++k) {
      const double rj = cert.M_uniform * std::abs(p.pole_nodes[j]);
      const double rk = cert.M_uniform * std::abs(p.pole_nodes[k]);
      if (std::abs(p.pole_nodes[j] - p.pole_nodes[k]) <= (rj + rk) * lam + m)
        overlap = true;
    }
  CHECK(overlap);
}

TEST_CASE("model resolution picks certified parameters") {
  const auto& r = default_resolved();
  CHECK(r.report.passed());
  CHECK(r.params.lambda == doctest::Approx(0.5 * r.bounds.lambda_max));
  CHECK(r.params.eps > 0);
  // eps is a power of two
  double e = r.params.eps;
  int exp = 0;
  double mant = std::frexp(e, &exp);
  CHECK(mant == 0.5);
  // regime gates
  CHECK(r.params.eps * r.bounds.section_sup < r.params.fiber_radius);
  CHECK(r.params.eps / r.params.fiber_radius <= 0.5 * r.params.fiber_radius);
  CHECK(r.params.fiber_radius * r.bounds.section_sup < 1.0);
}

TEST_CASE("pinned lambda above the certificate fails the gate before any pair check") {
  ModelParams p = default_points();
  p.lambda = 0.24;  // far above the certified maximum for this layout
  auto res = full_configuration_report(p, 4);
  CHECK_FALSE(res.report.passed());
  bool pairs_skipped = false;
  for (const auto& c : res.report.children)
    if (c.claim == "config.pairs" && c.status == report::Status::skip) pairs_skipped = true;
  CHECK(pairs_skipped);
}

TEST_CASE("representative pair certificates") {
  const auto& r = default_resolved();
  SectionFamily f(r.params);

  auto c12 = certify_pair(f, {{false, 1}, {false, 2}});
  CHECK(c12.report.passed());
  CHECK(c12.roots.size() == 9);

  auto c1_11 = certify_pair(f, {{false, 1}, {false, 11}});
  CHECK(c1_11.report.passed());
  CHECK(c1_11.roots.size() == 9);
  for (const auto& root : c1_11.roots) CHECK(std::abs(root.root) > 1e-6);  // origin excluded

  auto c1_b1 = certify_pair(f, {{false, 1}, {true, 1}});
  CHECK(c1_b1.report.passed());
  CHECK(c1_b1.roots.size() == 10);

  auto c11_b2 = certify_pair(f, {{false, 11}, {true, 2}});
  CHECK(c11_b2.report.passed());
  CHECK(c11_b2.roots.size() == 10);

  auto b12 = certify_pair(f, {{true, 1}, {true, 2}});
  CHECK(b12.report.passed());
  CHECK(b12.roots.size() == 11);
}

TEST_CASE("scaling both sections by a power of two preserves roots exactly") {
  const auto& r = default_resolved();
  SectionFamily f(r.params);
  const double eps = 0.0625;  // 2^-4, exact in binary

  auto fD = d_chart_evaluator(f, {false, 2});
  auto gD = d_chart_evaluator(f, {false, 5});
  rootfind::CFn fE = [&](Complex z) { return eps * fD(z); };
  rootfind::CFn gE = [&](Complex z) { return eps * gD(z); };
  auto plain = rootfind::find_coincidences(fD, gD, rootfind::Region::disc({0, 0}, 0.45));
  auto scaled = rootfind::find_coincidences(fE, gE, rootfind::Region::disc({0, 0}, 0.45));
  REQUIRE(plain.size() == scaled.size());
  for (std::size_t i = 0; i < plain.size(); ++i) {
    CHECK(plain[i].root.real() == scaled[i].root.real());
    CHECK(plain[i].root.imag() == scaled[i].root.imag());
  }
}

TEST_CASE("chart, seam, membership and symplectic reports pass") {
  const auto& r = default_resolved();
  SectionFamily f(r.params);
  CHECK(chart_consistency_report(f).passed());
  CHECK(seam_continuity_report(f).passed());
  CHECK(membership_report(f).passed());
  CHECK(symplectic_report(f).passed());
}

TEST_CASE("graph density scans") {
  // holomorphic graphs have density >= 1
  auto hol = scan_graph_density([](Complex z) { return z * z; }, 0.5, 0.1, 0.8);
  CHECK(hol.min_density >= 1.0);
  // anti-holomorphic graph with eps = 2: density 1 - 4 < 0
  auto anti = scan_graph_density([](Complex z) { return std::conj(z); }, 2.0, 0.1, 0.8);
  CHECK(anti.min_density == doctest::Approx(-3.0).epsilon(1e-6));
}

TEST_CASE("assembly of the capped surface") {
  const auto& r = default_resolved();
  SectionFamily f(r.params);
  auto a = assemble_genus3_surface(f, r.bounds.section_sup);
  CHECK(a.report.passed());
  CHECK(a.euler == -4);
  CHECK(a.genus == 3);
  CHECK(a.no_new_intersections);

  // regime violation: eps too large for the cap annulus
  ModelParams bad = r.params;
  bad.eps = bad.fiber_radius;  // eps/c = 1 > c/2
  SectionFamily fb(bad);
  CHECK_THROWS_AS(assemble_genus3_surface(fb, r.bounds.section_sup), RegimeError);
}

TEST_CASE("glued genus bookkeeping") {
  CHECK(glued_genus({{Int(1), Int(1)}, {Int(1), Int(1)}}) == 2);
  CHECK(glued_genus({{Int(0), Int(1)}, {Int(0), Int(1)}}) == 0);
  CHECK_THROWS(glued_genus({{Int(1), Int(1)}}));
}

TEST_CASE("seam probe flags kinked and jumping functions") {
  // C^1 across the seam: passes
  auto smooth = [](Complex z) { return z * z + 2.0 * z; };
  auto p = model::detail::probe_seam(smooth, 0.6, 0.3, 1e-4);
  CHECK(p.value_jump <= p.value_tol);
  CHECK(p.deriv_jump <= p.deriv_tol);

  // derivative kink at r = 0.6: derivative jump flagged
  auto kinked = [](Complex z) {
    const double r = std::abs(z);
    return Complex(r < 0.6 ? r : 0.6 + 2.0 * (r - 0.6), 0.0);
  };
  auto k = model::detail::probe_seam(kinked, 0.6, 0.3, 1e-4);
  CHECK(k.deriv_jump > k.deriv_tol);

  // value jump at r = 0.6: flagged
  auto jumping = [](Complex z) {
    return Complex(std::abs(z) < 0.6 ? 0.0 : 1.0, 0.0);
  };
  auto j = model::detail::probe_seam(jumping, 0.6, 0.3, 1e-4);
  CHECK(j.value_jump > j.value_tol);
}

TEST_CASE("full configuration report passes end to end on defaults") {
  auto res = full_configuration_report(default_points(), 8);
  CHECK(res.report.passed());
  // 91 pair children under config.pairs
  for (const auto& c : res.report.children) {
    if (c.claim != "config.pairs") continue;
    CHECK(c.children.size() == 91);
    std::size_t total_roots = 0;
    for (const auto& w : c.witnesses)
      if (w.label == "total-roots") total_roots = std::stoul(w.value);
    // 55 * 9 + 33 * 10 + 3 * 11 = 858
    CHECK(total_roots == 858);
  }
}
