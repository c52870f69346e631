#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "surfcert/divisor.hpp"
#include "surfcert/model.hpp"
#include "surfcert/report.hpp"
#include "surfcert/rootfind.hpp"

namespace surfcert::model {

using report::CertReport;
using report::Provenance;
using report::Witness;

struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pinned numeric policy: double precision with two orders of safety.
struct Tolerances {
  double root_residual_rel = 1e-10;
  double disc_margin = 1e-6;       // absolute, disc disjointness
  double positivity_margin = 1e-8;  // symplectic density
  double chart_rel = 1e-12;         // chart-consistency identity
};

struct GridSpec {
  unsigned radial = 16;
  unsigned angular = 128;
  unsigned lambda_samples = 24;
};

// z^-9 by repeated multiplication (a handful of ulps, no exp/log).
inline Complex z_pow_minus9(Complex z) {
  const Complex z3 = z * z * z;
  return 1.0 / (z3 * z3 * z3);
}

struct SupEstimate {
  double grid_sup = 0;
  double neighbor_jump = 0;  // max |difference| between adjacent samples

  // grid sup, inflated by the largest observed neighbor jump plus 10%
  double certified() const { return 1.1 * grid_sup + neighbor_jump; }
};

namespace detail {

template <class F>
SupEstimate sup_on_annulus(F value, double r0, double r1, const GridSpec& grid) {
  SupEstimate est;
  std::vector<double> prev_row;
  for (unsigned ir = 0; ir <= grid.radial; ++ir) {
    const double r = r0 + (r1 - r0) * ir / grid.radial;
    std::vector<double> row(grid.angular);
    for (unsigned ia = 0; ia < grid.angular; ++ia) {
      const Complex z = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
      row[ia] = value(z);
      est.grid_sup = std::max(est.grid_sup, row[ia]);
      if (ia > 0) est.neighbor_jump = std::max(est.neighbor_jump, std::abs(row[ia] - row[ia - 1]));
    }
    est.neighbor_jump = std::max(est.neighbor_jump, std::abs(row.front() - row.back()));
    if (!prev_row.empty())
      for (unsigned ia = 0; ia < grid.angular; ++ia)
        est.neighbor_jump = std::max(est.neighbor_jump, std::abs(row[ia] - prev_row[ia]));
    prev_row = std::move(row);
  }
  if (est.neighbor_jump > 0.5 * est.grid_sup + 1e-30)
    throw ResolutionError("sup grid too coarse (jump " + std::to_string(est.neighbor_jump) +
                          " vs sup " + std::to_string(est.grid_sup) +
                          "); refine radial/angular resolution");
  return est;
}

}  // namespace detail

// Remainder bounds for both section families and the largest clustering
// scale for which every marked-point disc stays disjoint. The uniform
// bounds cover all lambda in (0, 1/4]; the at-lambda values record the
// bound for the resolved scale alone.
struct BoundCertificate {
  double M0_uniform = 0;
  double M_uniform = 0;
  double M0_at_lambda = 0;
  double M_at_lambda = 0;
  double lambda_max = 0;
  double section_sup = 0;  // uniform bound N for all glued sections
};

inline ModelParams with_lambda(ModelParams p, double lambda) {
  p.lambda = lambda;
  return p;
}

struct RemainderSups {
  double M0;
  double M;
};

inline RemainderSups remainder_sups_at(const ModelParams& p, double lambda,
                                       const GridSpec& grid) {
  SectionFamily family(with_lambda(p, 0.25));
  SupEstimate m0 = detail::sup_on_annulus(
      [&](Complex z) {
        double m = 0;
        for (int j = 1; j <= 10; ++j)
          m = std::max(m, std::abs(family.curve_remainder(j, z, lambda)));
        return m;
      },
      0.5, 1.0, grid);
  SupEstimate mg = detail::sup_on_annulus(
      [&](Complex z) {
        double m = 0;
        for (int k = 1; k <= 3; ++k)
          m = std::max(m, std::abs(family.branch_remainder(k, z, lambda)));
        return m;
      },
      0.5, 1.0, grid);
  return {m0.certified(), mg.certified()};
}

inline double certified_lambda_max(const ModelParams& p, double M0, double M,
                                   double margin) {
  double lmax = 0.25;
  auto cap = [&lmax](double v) { lmax = std::min(lmax, v); };
  for (int j = 0; j < 10; ++j) {
    const double zj = std::abs(p.nodes[j]);
    cap((zj - margin) / (M0 * zj));  // disc must avoid the origin
    for (int k = j + 1; k < 10; ++k) {
      const double zk = std::abs(p.nodes[k]);
      cap((std::abs(p.nodes[j] - p.nodes[k]) - margin) / (M0 * (zj + zk)));
    }
    for (int k = 0; k < 3; ++k) {
      const double wk = std::abs(p.pole_nodes[k]);
      cap((std::abs(p.nodes[j] - p.pole_nodes[k]) - margin) / (M0 * zj + M * wk));
    }
  }
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      const double wj = std::abs(p.pole_nodes[j]), wk = std::abs(p.pole_nodes[k]);
      cap((std::abs(p.pole_nodes[j] - p.pole_nodes[k]) - margin) / (M * (wj + wk)));
    }
  return lmax;
}

// Remainder sups on the overlap annulus, uniform over the lambda range.
// The remainders extend holomorphically in 1/z, so the sup over
// |z| >= 1/2 is attained near the inner circle; the annulus grid plus
// margin certifies it.
inline BoundCertificate certify_bounds(const ModelParams& p, const Tolerances& tol = {},
                                       const GridSpec& grid = {}) {
  p.validate_points();
  std::vector<double> lambdas{1e-8, 1e-4};
  for (unsigned i = 1; i <= grid.lambda_samples; ++i)
    lambdas.push_back(0.25 * i / grid.lambda_samples);

  BoundCertificate cert;
  for (double lam : lambdas) {
    RemainderSups s = remainder_sups_at(p, lam, grid);
    cert.M0_uniform = std::max(cert.M0_uniform, s.M0);
    cert.M_uniform = std::max(cert.M_uniform, s.M);
  }
  cert.lambda_max = certified_lambda_max(p, cert.M0_uniform, cert.M_uniform, tol.disc_margin);
  if (cert.lambda_max <= 0)
    throw ResolutionError("no positive clustering scale keeps the discs disjoint");
  return cert;
}

// Ball radius around the k-th pole point used for the transversal cap:
// well separated from every marked point, the other poles, and the chart
// seam.
inline double pole_ball_radius(const SectionFamily& f, int k) {
  const Complex q = f.pole_point(k);
  double d = 0.5 - std::abs(q);
  for (int i = 1; i <= 11; ++i) d = std::min(d, std::abs(q - f.marked_point_base(i)));
  for (int l = 1; l <= 3; ++l)
    if (l != k) d = std::min(d, std::abs(q - f.pole_point(l)));
  return 0.4 * d;
}

// Uniform bound N on every glued section, and on the branch sections
// outside their pole balls (the branch sections exceed N only inside
// those balls).
inline double certify_section_sup(const SectionFamily& f, const GridSpec& grid = {}) {
  double sup = 0;
  // D chart, |z| <= 1/2
  for (unsigned ir = 0; ir <= 2 * grid.radial; ++ir) {
    const double r = 0.5 * ir / (2 * grid.radial);
    for (unsigned ia = 0; ia < grid.angular; ++ia) {
      const Complex z = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
      for (int j = 1; j <= 10; ++j) sup = std::max(sup, std::abs(f.curve_section(j, z)));
      for (int k = 1; k <= 3; ++k) {
        if (std::abs(z - f.pole_point(k)) <= pole_ball_radius(f, k)) continue;
        sup = std::max(sup, std::abs(f.branch_section(k, z)));
      }
    }
  }
  // V chart, overlap annulus and the constant plateau
  for (unsigned ir = 0; ir <= grid.radial; ++ir) {
    const double r = 0.5 + 0.5 * ir / grid.radial;
    for (unsigned ia = 0; ia < grid.angular; ++ia) {
      const Complex z = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
      for (int j = 1; j <= 10; ++j) sup = std::max(sup, std::abs(f.curve_section_glued(j, z)));
      for (int k = 1; k <= 3; ++k) sup = std::max(sup, std::abs(f.branch_section_glued(k, z)));
    }
  }
  for (int j = 1; j <= 10; ++j) sup = std::max(sup, std::abs(f.curve_section_const(j)));
  for (int k = 1; k <= 3; ++k) sup = std::max(sup, std::abs(f.branch_section_const(k)));
  return 1.1 * sup;
}

struct DensityScan {
  double min_density = 0;
  Complex argmin{0, 0};
};

// Pullback area density of the graph z -> (z, eps * s(z)) against the
// product form: 1 + eps^2 (|ds/dz|^2 - |ds/dzbar|^2), scanned on a polar
// grid. Positive density certifies the graph symplectic.
template <class S>
DensityScan scan_graph_density(S section, double eps, double r0, double r1,
                               const GridSpec& grid = {}, double fd_step = 1e-5) {
  DensityScan out;
  out.min_density = std::numeric_limits<double>::infinity();
  rootfind::CFn fn = [&](Complex z) { return section(z); };
  for (unsigned ir = 0; ir <= grid.radial; ++ir) {
    const double r = r0 + (r1 - r0) * ir / grid.radial;
    for (unsigned ia = 0; ia < grid.angular; ++ia) {
      const Complex z = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
      const auto d = rootfind::wirtinger(fn, z, fd_step);
      const double density =
          1.0 + eps * eps * (std::norm(d.dz) - std::norm(d.dzbar));
      if (density < out.min_density) {
        out.min_density = density;
        out.argmin = z;
      }
    }
  }
  return out;
}

// Density scan for the transversal cap z' = eps * rho(|v|/c) / v over
// the v-annulus eps/c <= |v| <= c (log-spaced radii).
inline DensityScan scan_cap_density(double eps, double c, const Bump& rho,
                                    const GridSpec& grid = {}) {
  DensityScan out;
  out.min_density = std::numeric_limits<double>::infinity();
  const double r_in = eps / c, r_out = c;
  rootfind::CFn cap = [&](Complex v) { return eps * rho(std::abs(v) / c) / v; };
  for (unsigned ir = 0; ir <= 2 * grid.radial; ++ir) {
    const double r = r_in * std::pow(r_out / r_in, double(ir) / (2 * grid.radial));
    for (unsigned ia = 0; ia < grid.angular; ++ia) {
      const Complex v = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
      const auto d = rootfind::wirtinger(cap, v, 1e-6 * r);
      const double density = 1.0 + std::norm(d.dz) - std::norm(d.dzbar);
      if (density < out.min_density) {
        out.min_density = density;
        out.argmin = v;
      }
    }
  }
  return out;
}

struct ResolvedModel {
  ModelParams params;
  BoundCertificate bounds;
  CertReport report = CertReport::pass("config.bounds");
};

// Fills in lambda, eps and the fiber radius: lambda at half the certified
// maximum, the radius just under the reciprocal section bound, eps the
// largest power of two passing every regime and positivity gate.
inline ResolvedModel resolve_model(const ModelParams& user, const Tolerances& tol = {},
                                   const GridSpec& grid = {}) {
  ResolvedModel out;
  out.params = user;
  out.params.validate_points();

  out.bounds = certify_bounds(out.params, tol, grid);
  CertReport& rep = out.report;
  rep.with(Witness::floating("M0", out.bounds.M0_uniform, 0.1 * out.bounds.M0_uniform,
                             Provenance::derived));
  rep.with(Witness::floating("M", out.bounds.M_uniform, 0.1 * out.bounds.M_uniform,
                             Provenance::derived));
  rep.with(Witness::floating("lambda-max", out.bounds.lambda_max, tol.disc_margin,
                             Provenance::derived));

  if (out.params.lambda <= 0) out.params.lambda = std::min(0.25, 0.5 * out.bounds.lambda_max);
  out.params.validate_lambda();
  rep.with(Witness::floating("lambda", out.params.lambda, 0.0625 * out.params.lambda,
                             Provenance::derived));
  rep.check("lambda-within-certified-range", out.params.lambda <= out.bounds.lambda_max,
            Provenance::derived);
  {
    RemainderSups at = remainder_sups_at(out.params, out.params.lambda, grid);
    out.bounds.M0_at_lambda = at.M0;
    out.bounds.M_at_lambda = at.M;
  }

  SectionFamily family(out.params);
  out.bounds.section_sup = certify_section_sup(family, grid);
  rep.with(Witness::floating("section-sup", out.bounds.section_sup,
                             0.1 * out.bounds.section_sup, Provenance::derived));

  const double c_auto = 0.9 / out.bounds.section_sup;
  if (out.params.fiber_radius <= 0)
    out.params.fiber_radius = c_auto;
  else
    out.params.fiber_radius = std::min(out.params.fiber_radius, c_auto);
  const double c = out.params.fiber_radius;
  rep.with(Witness::floating("fiber-radius", c, 0.1 * c, Provenance::derived));
  rep.check("radius-below-reciprocal-sup", c * out.bounds.section_sup < 1.0,
            Provenance::derived);

  auto gates_pass = [&](double eps) {
    if (!(eps * out.bounds.section_sup < 0.9 * c)) return false;       // graphs inside B_c
    if (!(eps / c <= 0.5 * c)) return false;                           // cap annulus nonempty
    GridSpec coarse{8, 48, grid.lambda_samples};
    for (int j = 1; j <= 10; ++j) {
      auto s = [&](Complex z) { return family.curve_section_glued(j, z); };
      if (!(scan_graph_density(s, eps, 0.5, 0.8, coarse).min_density >
            tol.positivity_margin))
        return false;
    }
    for (int k = 1; k <= 3; ++k) {
      auto s = [&](Complex z) { return family.branch_section_glued(k, z); };
      if (!(scan_graph_density(s, eps, 0.5, 0.8, coarse).min_density >
            tol.positivity_margin))
        return false;
    }
    if (!(scan_cap_density(eps, c, family.rho_branch(), coarse).min_density >
          tol.positivity_margin))
      return false;
    return true;
  };

  if (out.params.eps <= 0) {
    double eps = 1.0;
    bool found = false;
    for (int k = 0; k < 400 && eps > 1e-300; ++k, eps *= 0.5) {
      if (eps / c > 0.5 * c) continue;  // fast-skip until the cap regime opens
      if (gates_pass(eps)) {
        found = true;
        break;
      }
    }
    if (!found) throw ResolutionError("no power-of-two section scale passes the gates");
    out.params.eps = eps;
  }
  rep.with(Witness::floating("eps", out.params.eps, 0.5 * out.params.eps,
                             Provenance::derived));
  rep.check("eps-gates", gates_pass(out.params.eps), Provenance::derived);
  out.params.validate();
  return out;
}

struct AssemblyPiece {
  Int genus;
  Int boundary_circles;
};

struct AssemblyResult {
  Int euler;
  Int genus;
  std::vector<AssemblyPiece> pieces;
  bool no_new_intersections = false;
  CertReport report = CertReport::pass("config.assembly");
};

// Closed-surface bookkeeping: chi of each bounded piece is 2 - 2g - b;
// gluing along circle pairs adds nothing, so the closed result has
// chi = sum of pieces and genus (2 - chi) / 2.
inline Int glued_genus(const std::vector<AssemblyPiece>& pieces) {
  Int chi = 0, boundaries = 0;
  for (const auto& p : pieces) {
    chi += 2 - 2 * p.genus - p.boundary_circles;
    boundaries += p.boundary_circles;
  }
  if (boundaries % 2 != 0) throw std::invalid_argument("unmatched boundary circles");
  if ((2 - chi) % 2 != 0) throw std::invalid_argument("odd euler characteristic");
  return (2 - chi) / 2;
}

// Builds and certifies the capped genus-3 surface: three punctured
// graph tori glued to a three-holed sphere through the caps
// z' = eps * rho(|v|/c) / v, with the regime gates that keep the caps
// clear of every other graph.
inline AssemblyResult assemble_genus3_surface(const SectionFamily& family, double section_sup,
                                              const Tolerances& tol = {},
                                              const GridSpec& grid = {}) {
  const double eps = family.params().eps;
  const double c = family.params().fiber_radius;
  if (!(eps > 0) || !(c > 0)) throw RegimeError("model not resolved: eps and radius required");
  if (eps / c > 0.5 * c)
    throw RegimeError("cap regime violated: eps/c exceeds c/2");
  if (!(eps * section_sup < c))
    throw RegimeError("graph regime violated: eps * N reaches the fiber radius");

  AssemblyResult out;
  CertReport& rep = out.report;
  out.pieces = {{Int(1), Int(1)}, {Int(1), Int(1)}, {Int(1), Int(1)}, {Int(0), Int(3)}};
  Int chi = 0;
  for (const auto& p : out.pieces) chi += 2 - 2 * p.genus - p.boundary_circles;
  out.euler = chi;
  out.genus = glued_genus(out.pieces);
  rep.with(Witness::exact_value("euler", out.euler, Provenance::derived));
  rep.with(Witness::exact_value("genus", out.genus, Provenance::derived));
  rep.check("euler-is-minus-4", out.euler == -4, Provenance::derived);
  rep.check("genus-is-3", out.genus == 3, Provenance::reference);

  // cap geometry: stays inside the fiber disc, meets the pure graph
  // z' = eps/v at the inner rim, and closes onto the zero section at the
  // outer rim
  const Bump& rho = family.rho_branch();
  const double r_in = eps / c;
  bool inside = true, inner_match = true, outer_zero = true, above_graphs = true;
  for (unsigned ir = 0; ir <= 2 * grid.radial; ++ir) {
    const double r = r_in * std::pow(c / r_in, double(ir) / (2 * grid.radial));
    for (unsigned ia = 0; ia < grid.angular; ++ia) {
      const Complex v = std::polar(r, 2 * std::numbers::pi * ia / grid.angular);
      const Complex w = eps * rho(std::abs(v) / c) / v;
      if (!(std::abs(w) <= c * (1 + 1e-12))) inside = false;
      if (!(std::abs(v) >= r_in * (1 - 1e-12))) above_graphs = false;
    }
  }
  for (unsigned ia = 0; ia < grid.angular; ++ia) {
    const Complex v_in = std::polar(r_in, 2 * std::numbers::pi * ia / grid.angular);
    const Complex v_out = std::polar(c, 2 * std::numbers::pi * ia / grid.angular);
    if (std::abs(eps * rho(std::abs(v_in) / c) / v_in - eps / v_in) >
        1e-12 * std::abs(eps / v_in))
      inner_match = false;
    if (std::abs(eps * rho(std::abs(v_out) / c) / v_out) > 1e-300) outer_zero = false;
  }
  rep.check("cap-inside-fiber-disc", inside, Provenance::derived);
  rep.check("cap-matches-pure-graph-at-inner-rim", inner_match, Provenance::derived);
  rep.check("cap-closes-on-zero-section", outer_zero, Provenance::derived);

  // every other graph sits below eps * N < eps / c <= |v| on the caps
  const bool separated = section_sup < 1.0 / c;
  out.no_new_intersections = separated && above_graphs;
  rep.check("caps-above-all-graphs", out.no_new_intersections, Provenance::derived);

  // cap symplecticity at the resolved eps
  DensityScan cap = scan_cap_density(eps, c, rho, grid);
  rep.with(Witness::floating("cap-min-density", cap.min_density, tol.positivity_margin,
                             Provenance::derived));
  rep.check("cap-density-positive", cap.min_density > tol.positivity_margin,
            Provenance::derived);

  // adjunction bookkeeping for the degree-10 model curve with eleven
  // ordinary triple points
  const Int plane_genus = divisor::plane_curve_genus(Int(10), std::vector<Int>(11, Int(3)));
  rep.with(Witness::exact_value("plane-curve-genus", plane_genus, Provenance::reference));
  rep.check("plane-genus-bookkeeping", plane_genus == out.genus, Provenance::reference);
  return out;
}

}  // namespace surfcert::model
