#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "surfcert/config_model.hpp"
#include "surfcert/model.hpp"
#include "surfcert/parallel.hpp"
#include "surfcert/report.hpp"
#include "surfcert/rootfind.hpp"

namespace surfcert::model {

// The fourteen section evaluators of the configuration: eleven curve
// sections (c01..c11) and the three branches of the capped surface
// (b1..b3).
struct SectionId {
  bool branch = false;
  int idx = 1;

  std::string label() const {
    if (branch) return "b" + std::to_string(idx);
    return idx < 10 ? "c0" + std::to_string(idx) : "c" + std::to_string(idx);
  }
};

inline std::vector<SectionId> all_sections() {
  std::vector<SectionId> v;
  for (int j = 1; j <= 11; ++j) v.push_back({false, j});
  for (int k = 1; k <= 3; ++k) v.push_back({true, k});
  return v;
}

struct SectionPair {
  SectionId a, b;
  std::string label() const { return a.label() + "-" + b.label(); }
};

inline std::vector<SectionPair> all_pairs() {
  auto s = all_sections();
  std::vector<SectionPair> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) out.push_back({s[i], s[j]});
  return out;
}

inline rootfind::CFn d_chart_evaluator(const SectionFamily& f, SectionId id) {
  if (id.branch) return [&f, id](Complex z) { return f.branch_section(id.idx, z); };
  return [&f, id](Complex z) { return f.curve_section(id.idx, z); };
}

inline rootfind::CFn glued_v_evaluator(const SectionFamily& f, SectionId id) {
  if (id.branch) return [&f, id](Complex z) { return f.branch_section_glued(id.idx, z); };
  return [&f, id](Complex z) { return f.curve_section_glued(id.idx, z); };
}

inline Complex plateau_constant(const SectionFamily& f, SectionId id) {
  return id.branch ? f.branch_section_const(id.idx) : f.curve_section_const(id.idx);
}

// Denominator-clearing factor for pairs that involve branch sections
// (their D-chart form has a simple pole at the associated pole point).
inline rootfind::ClearFactor clear_factor_for(const SectionFamily& f, SectionId a,
                                              SectionId b) {
  std::vector<Complex> poles;
  if (a.branch) poles.push_back(f.pole_point(a.idx));
  if (b.branch) poles.push_back(f.pole_point(b.idx));
  rootfind::ClearFactor cf;
  cf.zeros = poles;
  cf.factor = [poles](Complex z) {
    Complex v = 1.0;
    for (Complex q : poles) v *= 1.0 - z / q;
    return v;
  };
  return cf;
}

// Coincidence set each pair must produce: the marked base points common
// to both graphs.
inline std::vector<Complex> expected_coincidences(const SectionFamily& f, SectionId a,
                                                  SectionId b) {
  std::vector<Complex> pts;
  auto curve_misses = [](SectionId id, int i) {
    // curve j passes through every marked point except the j-th
    return !id.branch && id.idx == i;
  };
  for (int i = 1; i <= 11; ++i) {
    if (curve_misses(a, i) || curve_misses(b, i)) continue;
    pts.push_back(f.marked_point_base(i));
  }
  return pts;
}

struct PairCertification {
  SectionPair pair;
  std::vector<rootfind::RootRecord> roots;
  report::CertReport report = report::CertReport::pass("unset");
};

// Full certification for one pair: located coincidences on the core disc
// with argument-principle exhaustiveness, match against the expected
// point set, simplicity and transversality at every root, nonvanishing
// of the difference on the gluing annulus, and distinct plateau
// constants beyond it.
inline PairCertification certify_pair(const SectionFamily& f, const SectionPair& pr,
                                      const Tolerances& tol = {}, const GridSpec& grid = {}) {
  using report::CertReport;
  using report::Provenance;
  using report::Witness;

  PairCertification out;
  out.pair = pr;
  CertReport rep = CertReport::pass("pair." + pr.label());

  const auto fD = d_chart_evaluator(f, pr.a);
  const auto gD = d_chart_evaluator(f, pr.b);
  const auto clear = clear_factor_for(f, pr.a, pr.b);
  const rootfind::Region core = rootfind::Region::disc({0, 0}, 0.45);
  rootfind::FindOptions opts;
  opts.residual_rel_tol = tol.root_residual_rel;

  std::vector<rootfind::RootRecord> roots;
  try {
    roots = rootfind::find_coincidences(fD, gD, core, clear.zeros.empty() ? nullptr : &clear,
                                        opts);
  } catch (const std::runtime_error& e) {
    rep.status = report::Status::fail;
    rep.detail = e.what();
    out.report = std::move(rep);
    return out;
  }

  const auto expected = expected_coincidences(f, pr.a, pr.b);
  rep.with(Witness::exact_value("expected-count", Int(expected.size()), Provenance::derived));
  rep.with(Witness::exact_value("located-count", Int(roots.size()), Provenance::derived));
  rep.check("count-matches", roots.size() == expected.size(), Provenance::derived);

  // multiset match: every expected point claimed by exactly one root
  const double match_tol = 1e-8;
  bool match = roots.size() == expected.size();
  if (match) {
    std::vector<bool> used(roots.size(), false);
    for (Complex e : expected) {
      bool hit = false;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i] || std::abs(roots[i].root - e) > match_tol) continue;
        used[i] = true;
        hit = true;
        break;
      }
      if (!hit) match = false;
    }
  }
  rep.check("roots-at-expected-points", match, Provenance::derived);

  bool all_simple = true;
  double max_residual_rel = 0, min_gap = std::numeric_limits<double>::infinity();
  bool all_transverse = true, all_positive = true;
  int total_multiplicity = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    if (r.multiplicity != 1) all_simple = false;
    total_multiplicity += r.multiplicity;
    max_residual_rel = std::max(max_residual_rel, r.residual / (r.scale + 1e-300));
    auto tv = rootfind::check_transversality(fD, gD, r.root, core.r_outer);
    min_gap = std::min(min_gap, tv.derivative_gap);
    if (tv.tangency_alarm) all_transverse = false;
    if (!tv.positive) all_positive = false;
    const std::string tag = "root-" + std::to_string(i + 1);
    rep.with(Witness::floating(tag + "-re", r.root.real(), 1e-8, Provenance::derived));
    rep.with(Witness::floating(tag + "-im", r.root.imag(), 1e-8, Provenance::derived));
    rep.with(Witness::floating(tag + "-residual", r.residual,
                               tol.root_residual_rel * (r.scale + 1e-300),
                               Provenance::derived));
    rep.with(Witness::exact_value(tag + "-multiplicity", Int(r.multiplicity),
                                  Provenance::derived));
  }
  rep.with(Witness::exact_value("total-multiplicity", Int(total_multiplicity),
                                Provenance::derived));
  rep.check("all-roots-simple", all_simple, Provenance::derived);
  rep.with(Witness::floating("max-residual-rel", max_residual_rel, tol.root_residual_rel,
                             Provenance::derived));
  if (!roots.empty())
    rep.with(Witness::floating("min-derivative-gap", min_gap, 1e-30, Provenance::derived));
  rep.check("transverse", all_transverse, Provenance::derived);
  rep.check("positive", all_positive, Provenance::derived);

  // gluing annulus: the difference of the glued sections never vanishes.
  // Below the chart seam the D-chart difference is transported by z^-9,
  // which changes no zero set.
  const auto gvA = glued_v_evaluator(f, pr.a);
  const auto gvB = glued_v_evaluator(f, pr.b);
  auto ann_diff = [&](Complex z) {
    if (std::abs(z) >= 0.5) return std::abs(gvA(z) - gvB(z));
    return std::abs(z_pow_minus9(z) * (fD(z) - gD(z)));
  };
  double ann_min = std::numeric_limits<double>::infinity(), ann_jump = 0;
  {
    std::vector<double> prev;
    for (unsigned ir = 0; ir <= grid.radial; ++ir) {
      const double r = 0.45 + (0.78 - 0.45) * ir / grid.radial;
      std::vector<double> row(grid.angular);
      for (unsigned ia = 0; ia < grid.angular; ++ia) {
        const Complex z = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
        row[ia] = ann_diff(z);
        ann_min = std::min(ann_min, row[ia]);
        if (ia > 0) ann_jump = std::max(ann_jump, std::abs(row[ia] - row[ia - 1]));
      }
      ann_jump = std::max(ann_jump, std::abs(row.front() - row.back()));
      if (!prev.empty())
        for (unsigned ia = 0; ia < grid.angular; ++ia)
          ann_jump = std::max(ann_jump, std::abs(row[ia] - prev[ia]));
      prev = std::move(row);
    }
  }
  rep.with(Witness::floating("annulus-min-separation", ann_min, ann_jump + 1e-300,
                             Provenance::derived));
  rep.check("annulus-separated", ann_min > ann_jump, Provenance::derived);

  // plateau constants are distinct, so the sections stay apart on the
  // rest of the surface where both are constant
  const Complex ca = plateau_constant(f, pr.a), cb = plateau_constant(f, pr.b);
  rep.check("plateau-constants-distinct",
            std::abs(ca - cb) > tol.disc_margin * (std::abs(ca) + std::abs(cb) + 1.0),
            Provenance::derived);

  out.roots = std::move(roots);
  out.report = std::move(rep);
  return out;
}

// The V-chart product form agrees with the transported D-chart form to
// relative precision across the whole overlap annulus.
inline report::CertReport chart_consistency_report(const SectionFamily& f,
                                                   const Tolerances& tol = {},
                                                   unsigned radial = 25,
                                                   unsigned angular = 400) {
  using report::CertReport;
  using report::Provenance;
  using report::Witness;
  CertReport rep = CertReport::pass("config.charts");
  double worst = 0;
  for (unsigned ir = 0; ir <= radial; ++ir) {
    const double r = 0.502 + (0.998 - 0.502) * ir / radial;
    for (unsigned ia = 0; ia < angular; ++ia) {
      const Complex z = std::polar(r, 2 * std::numbers::pi * ia / angular);
      const Complex t = z_pow_minus9(z);
      for (int j = 1; j <= 10; ++j) {
        const Complex lhs = f.curve_section_V(j, z);
        const Complex rhs = t * f.curve_section(j, z);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
      }
      for (int k = 1; k <= 3; ++k) {
        const Complex lhs = f.branch_section_V(k, z);
        const Complex rhs = t * f.branch_section(k, z);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
      }
    }
  }
  rep.with(Witness::floating("max-relative-mismatch", worst, tol.chart_rel,
                             Provenance::derived));
  rep.check("transition-identity", worst <= tol.chart_rel, Provenance::derived);
  rep.with(Witness::exact_value("grid-points", Int((radial + 1) * angular),
                                Provenance::direct));
  return rep;
}

namespace detail {

struct SeamProbe {
  double value_jump;
  double deriv_jump;
  double value_tol;
  double deriv_tol;
};

// Radial continuity probe across a seam radius. Tolerances come from
// secants and second differences taken strictly on one side of the
// seam, so a genuine jump or kink cannot inflate its own tolerance.
template <class S>
SeamProbe probe_seam(S s, double r0, double theta, double delta) {
  auto at = [&](double r) { return s(std::polar(r, theta)); };
  const Complex vm3 = at(r0 - 3 * delta), vm2 = at(r0 - 2 * delta), vm1 = at(r0 - delta);
  const Complex v0 = at(r0);
  const Complex vp1 = at(r0 + delta), vp2 = at(r0 + 2 * delta), vp3 = at(r0 + 3 * delta);

  const Complex dm = (v0 - vm1) / delta, dp = (vp1 - v0) / delta;
  const double dfar_m = std::abs(vm1 - vm2) / delta;
  const double dfar_p = std::abs(vp2 - vp1) / delta;
  const double curv_m = std::abs(vm1 - 2.0 * vm2 + vm3) / (delta * delta);
  const double curv_p = std::abs(vp3 - 2.0 * vp2 + vp1) / (delta * delta);
  const double vscale = std::abs(v0) + std::abs(vp1) + std::abs(vm1);

  SeamProbe p;
  p.value_jump = std::abs(vp1 - vm1);
  p.deriv_jump = std::abs(dp - dm);
  p.value_tol =
      3 * delta * (dfar_p + dfar_m) + 4 * delta * delta * (curv_p + curv_m) +
      1e-10 * vscale;
  // the last term floors the secant difference at its rounding noise
  p.deriv_tol = 8 * delta * (curv_p + curv_m) + 1e-9 * (dfar_p + dfar_m) +
                1e-13 * vscale / delta;
  return p;
}

}  // namespace detail

// Value and first-derivative continuity of the glued sections across the
// chart seam and the plateau seams.
inline report::CertReport seam_continuity_report(const SectionFamily& f,
                                                 const Tolerances& tol = {}) {
  using report::CertReport;
  using report::Provenance;
  using report::Witness;
  CertReport rep = CertReport::pass("config.seams");
  const double delta = 1e-4;

  // section value in the V chart on both sides of the chart seam
  auto curve_vchart = [&](int j) {
    return [&f, j](Complex z) {
      if (std::abs(z) >= 0.5) return f.curve_section_glued(j, z);
      return z_pow_minus9(z) * f.curve_section(j, z);
    };
  };
  auto branch_vchart = [&](int k) {
    return [&f, k](Complex z) {
      if (std::abs(z) >= 0.5) return f.branch_section_glued(k, z);
      return z_pow_minus9(z) * f.branch_section(k, z);
    };
  };

  const double thetas[] = {0.3, 1.7, 2.9, 4.1, 5.3};
  bool values_ok = true, derivs_ok = true;
  double worst_value = 0, worst_deriv = 0;
  auto run = [&](auto section, double seam) {
    for (double th : thetas) {
      auto p = detail::probe_seam(section, seam, th, delta);
      if (p.value_jump > p.value_tol) values_ok = false;
      if (p.deriv_jump > p.deriv_tol) derivs_ok = false;
      worst_value = std::max(worst_value, p.value_jump / (p.value_tol + 1e-300));
      worst_deriv = std::max(worst_deriv, p.deriv_jump / (p.deriv_tol + 1e-300));
    }
  };
  for (int j = 1; j <= 10; ++j) {
    run(curve_vchart(j), 0.5);
    run(curve_vchart(j), 2.0 / 3.0);
    run(curve_vchart(j), 0.75);
  }
  for (int k = 1; k <= 3; ++k) {
    run(branch_vchart(k), 0.5);
    run(branch_vchart(k), 0.75);
  }
  (void)tol;
  rep.with(Witness::floating("worst-value-jump-ratio", worst_value, 1.0,
                             Provenance::derived));
  rep.with(Witness::floating("worst-deriv-jump-ratio", worst_deriv, 1.0,
                             Provenance::derived));
  rep.check("values-continuous", values_ok, Provenance::derived);
  rep.check("derivatives-continuous", derivs_ok, Provenance::derived);
  return rep;
}

// Marked-point incidence: curve j passes through every marked point but
// its own, the branches pass through all eleven. The eleventh point sits
// at height eps over the origin after scaling.
inline report::CertReport membership_report(const SectionFamily& f,
                                            const Tolerances& tol = {}) {
  using report::CertReport;
  using report::Provenance;
  using report::Witness;
  CertReport rep = CertReport::pass("config.points");
  const double eps = f.params().eps;
  if (!(eps > 0)) throw RegimeError("model not resolved: eps required");

  bool through = true, missed = true;
  for (int j = 1; j <= 11; ++j) {
    for (int i = 1; i <= 10; ++i) {
      const double v = std::abs(eps * f.curve_section(j, f.marked_point_base(i)));
      if (i == j) {
        if (!(v > tol.disc_margin * eps)) missed = false;  // must miss its own point
      } else {
        if (!(v <= 1e-12 * eps)) through = false;
      }
    }
    // eleventh marked point (0, eps): height of the scaled section at 0
    const Complex at0 = eps * f.curve_section(j, 0.0);
    if (j == 11) {
      if (!(std::abs(at0 - Complex(eps)) > tol.disc_margin * eps)) missed = false;
    } else {
      if (!(std::abs(at0 - Complex(eps)) <= 1e-12 * eps)) through = false;
    }
  }
  rep.check("curves-pass-through-their-points", through, Provenance::reference);
  rep.check("each-curve-misses-exactly-its-own-point", missed, Provenance::reference);

  bool branch_through = true;
  for (int k = 1; k <= 3; ++k) {
    for (int i = 1; i <= 10; ++i)
      if (!(std::abs(eps * f.branch_section(k, f.marked_point_base(i))) <= 1e-12 * eps))
        branch_through = false;
    if (!(std::abs(eps * f.branch_section(k, 0.0) - Complex(eps)) <= 1e-12 * eps))
      branch_through = false;
  }
  rep.check("branches-pass-through-all-points", branch_through, Provenance::reference);
  rep.with(Witness::floating("point-height", eps, 0.5 * eps, Provenance::derived));
  return rep;
}

// Graph symplecticity for every glued section at the resolved eps.
inline report::CertReport symplectic_report(const SectionFamily& f, const Tolerances& tol = {},
                                            const GridSpec& grid = {}) {
  using report::CertReport;
  using report::Provenance;
  using report::Witness;
  CertReport rep = CertReport::pass("config.symplectic");
  const double eps = f.params().eps;
  double global_min = std::numeric_limits<double>::infinity();
  Complex global_argmin{0, 0};
  auto fold = [&](const DensityScan& s) {
    if (s.min_density < global_min) {
      global_min = s.min_density;
      global_argmin = s.argmin;
    }
  };
  for (int j = 1; j <= 10; ++j) {
    fold(scan_graph_density([&](Complex z) { return f.curve_section_glued(j, z); }, eps,
                            0.5, 0.8, grid));
    fold(scan_graph_density([&](Complex z) { return f.curve_section(j, z); }, eps, 0.02,
                            0.48, grid));
  }
  for (int k = 1; k <= 3; ++k)
    fold(scan_graph_density([&](Complex z) { return f.branch_section_glued(k, z); }, eps,
                            0.5, 0.8, grid));
  rep.with(Witness::floating("min-density", global_min, tol.positivity_margin,
                             Provenance::derived));
  rep.with(Witness::floating("min-density-at-re", global_argmin.real(), 1e-8,
                             Provenance::derived));
  rep.with(Witness::floating("min-density-at-im", global_argmin.imag(), 1e-8,
                             Provenance::derived));
  rep.check("density-positive", global_min > tol.positivity_margin, Provenance::derived);
  return rep;
}

inline report::CertReport conventions_report(const SectionFamily& f) {
  using report::CertReport;
  using report::Provenance;
  using report::Witness;
  CertReport rep = CertReport::pass("config.conventions");
  rep.with(Witness::text("rho-profile", f.params().rho_profile, Provenance::direct));
  rep.with(Witness::text("rho-curve-plateaus", "1 on r<=2/3, 0 on r>=3/4",
                         Provenance::direct));
  rep.with(Witness::text("rho-branch-plateaus", "1 on r<=1/2, 0 on r>=3/4",
                         Provenance::direct));
  rep.with(Witness::text(
      "curve-plateau-constant",
      "glued curve sections plateau at lambda^-9 * A * node_j (the normalized form; "
      "the unnormalized A * node_j differs by the lambda^-9 factor)",
      Provenance::direct));
  rep.with(Witness::text("bound-certificate",
                         "remainder bounds recorded both uniformly over lambda <= 1/4 "
                         "and at the resolved lambda",
                         Provenance::direct));
  return rep;
}

struct FullConfigResult {
  ResolvedModel resolved;
  report::CertReport report = report::CertReport::pass("config");
};

// Runs the whole certification: bounds and parameter gates, chart and
// seam identities, all pair coincidence certificates (fanned out to the
// worker pool, merged deterministically), point incidences, graph
// symplecticity, and the capped-surface assembly.
inline FullConfigResult full_configuration_report(const ModelParams& user, unsigned workers,
                                                  const Tolerances& tol = {},
                                                  const GridSpec& grid = {}) {
  FullConfigResult out;
  out.resolved = resolve_model(user, tol, grid);
  SectionFamily family(out.resolved.params);

  std::vector<report::CertReport> children;
  children.push_back(out.resolved.report);

  if (!out.resolved.report.passed()) {
    // certification gates failed: report and stop before any false pass
    children.push_back(report::CertReport::skip("config.pairs", "bounds gate failed"));
    out.report = report::merge(std::move(children), "config");
    return out;
  }

  children.push_back(chart_consistency_report(family, tol));
  children.push_back(seam_continuity_report(family, tol));
  children.push_back(membership_report(family, tol));
  children.push_back(symplectic_report(family, tol, grid));

  auto pairs = all_pairs();
  auto certs = parallel_map(pairs.size(), workers, [&](std::size_t i) {
    return certify_pair(family, pairs[i], tol, grid);
  });
  std::vector<report::CertReport> pair_reports;
  std::size_t total_roots = 0;
  for (auto& c : certs) {
    total_roots += c.roots.size();
    pair_reports.push_back(std::move(c.report));
  }
  auto pairs_rep = report::merge(std::move(pair_reports), "config.pairs");
  pairs_rep.with(report::Witness::exact_value("pair-count", Int(pairs.size()),
                                              report::Provenance::direct));
  pairs_rep.with(report::Witness::exact_value("total-roots", Int(total_roots),
                                              report::Provenance::derived));
  children.push_back(std::move(pairs_rep));

  auto assembly = assemble_genus3_surface(family, out.resolved.bounds.section_sup, tol, grid);
  children.push_back(std::move(assembly.report));
  children.push_back(conventions_report(family));

  out.report = report::merge(std::move(children), "config");
  return out;
}

}  // namespace surfcert::model
