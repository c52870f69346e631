#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfcert::rootfind {

using Complex = std::complex<double>;
using CFn = std::function<Complex(Complex)>;

struct WindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UndetectedRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PolishError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RootRecord {
  Complex root;
  double residual = 0;    // |h(root)|
  double scale = 1;       // max |h| on the multiplicity contour
  int multiplicity = 0;
};

struct Region {
  enum class Kind { disc, annulus };
  Kind kind = Kind::disc;
  Complex center{0, 0};
  double r_inner = 0;  // 0 for a disc
  double r_outer = 0;

  static Region disc(Complex center, double r) { return {Kind::disc, center, 0.0, r}; }
  static Region annulus(Complex center, double r_in, double r_out) {
    return {Kind::annulus, center, r_in, r_out};
  }

  bool contains(Complex z) const {
    double d = std::abs(z - center);
    return d <= r_outer && d >= r_inner;
  }
};

namespace detail {

// Argument increment along one contour segment, bisecting until each
// accepted step turns by less than maxstep radians. This is the exact
// trapezoid sum of d(log h) along the polyline, so no numerical
// derivative of h enters. The forced minimum depth keeps leaf segments
// short: a long leaf whose endpoint phases happen to match could
// otherwise hide a full turn around a nearby zero cluster.
inline double darg_segment(const CFn& h, Complex z0, Complex z1, Complex v0, Complex v1,
                           double floor, int depth, double maxstep) {
  const double a0 = std::abs(v0), a1 = std::abs(v1);
  if (!(a0 > floor) || !(a1 > floor))
    throw WindingError("contour sample too close to a zero");
  const double d = std::arg(v1 / v0);
  if (std::abs(d) <= maxstep && depth >= 3) return d;
  if (depth > 48) throw WindingError("contour refinement did not converge");
  const Complex zm = 0.5 * (z0 + z1);
  const Complex vm = h(zm);
  return darg_segment(h, z0, zm, v0, vm, floor, depth + 1, maxstep) +
         darg_segment(h, zm, z1, vm, v1, floor, depth + 1, maxstep);
}

inline int winding_polyline(const CFn& h, const std::vector<Complex>& pts, double floor) {
  double total = 0;
  std::vector<Complex> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = h(pts[i]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t j = (i + 1) % pts.size();
    total += darg_segment(h, pts[i], pts[j], vals[i], vals[j], floor, 0, 0.8);
  }
  const double w = total / (2 * std::numbers::pi);
  const double nearest = std::round(w);
  if (std::abs(w - nearest) > 0.25)
    throw WindingError("winding sum " + std::to_string(w) + " is not close to an integer");
  return static_cast<int>(nearest);
}

}  // namespace detail

inline int winding_circle(const CFn& h, Complex center, double radius, int base_samples = 64,
                          double floor = 1e-300) {
  std::vector<Complex> pts(static_cast<std::size_t>(base_samples));
  for (int i = 0; i < base_samples; ++i)
    pts[static_cast<std::size_t>(i)] =
        center + std::polar(radius, 2 * std::numbers::pi * i / base_samples);
  return detail::winding_polyline(h, pts, floor);
}

struct Box {
  double x0, y0, x1, y1;
  Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  Box inflated(double factor) const {
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double hw = 0.5 * (x1 - x0) * factor, hh = 0.5 * (y1 - y0) * factor;
    return Box{cx - hw, cy - hh, cx + hw, cy + hh};
  }
  bool contains(Complex z, double slack = 0) const {
    return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack &&
           z.imag() <= y1 + slack;
  }
};

inline int winding_box(const CFn& h, const Box& b, double floor = 1e-300) {
  const int per_edge = 8;
  std::vector<Complex> pts;
  pts.reserve(4 * per_edge);
  for (int i = 0; i < per_edge; ++i)
    pts.emplace_back(b.x0 + (b.x1 - b.x0) * i / per_edge, b.y0);
  for (int i = 0; i < per_edge; ++i)
    pts.emplace_back(b.x1, b.y0 + (b.y1 - b.y0) * i / per_edge);
  for (int i = 0; i < per_edge; ++i)
    pts.emplace_back(b.x1 - (b.x1 - b.x0) * i / per_edge, b.y1);
  for (int i = 0; i < per_edge; ++i)
    pts.emplace_back(b.x0, b.y1 - (b.y1 - b.y0) * i / per_edge);
  return detail::winding_polyline(h, pts, floor);
}

// Winding of a box contour with vanish-guard retries: if a sample lands
// on (or provably near) a zero, the box is inflated slightly and the
// count retried. Returns the box actually used.
inline int winding_box_guarded(const CFn& h, Box& b) {
  static constexpr double kInflations[] = {1.0, 1.013, 1.041, 1.087, 1.132, 1.171};
  for (double f : kInflations) {
    Box attempt = b.inflated(f);
    try {
      int w = winding_box(h, attempt);
      b = attempt;
      return w;
    } catch (const WindingError&) {
      continue;
    }
  }
  throw WindingError("could not find a clean contour around a subdivision cell");
}

struct NewtonResult {
  Complex root;
  double residual;
  bool converged;
};

// Newton iteration with a central finite-difference derivative.
// Convergence means the residual is negligible against the values of h
// one finite-difference step away, which stays meaningful for roots at
// or near the origin where relative step criteria degenerate.
inline NewtonResult newton_polish(const CFn& h, Complex z0, double coord_scale,
                                  int max_iter = 100) {
  Complex z = z0;
  double best_res = std::numeric_limits<double>::infinity();
  Complex best_z = z0;
  for (int it = 0; it < max_iter; ++it) {
    const double step = 1e-7 * std::max(std::abs(z), 1e-3 * coord_scale);
    const Complex hp = h(z + step), hm = h(z - step);
    const Complex d = (hp - hm) / (2 * step);
    const Complex hz = h(z);
    const double res = std::abs(hz);
    if (res < best_res) {
      best_res = res;
      best_z = z;
    }
    if (res <= 1e-6 * (std::abs(hp) + std::abs(hm)) && it > 0)
      return {best_z, best_res, true};
    if (std::abs(d) == 0.0) break;
    z -= hz / d;
  }
  return {best_z, best_res, false};
}

struct FindOptions {
  double residual_rel_tol = 1e-10;  // residual <= tol * local scale
  double isolation_floor = 1e-6;    // stop splitting below this cell size (x r_outer)
  int max_roots = 4096;
};

// Optional factor multiplied into f - g to clear known denominators. The
// listed points must not be coincidences of (f, g); this is checked.
struct ClearFactor {
  CFn factor;                  // entire function
  std::vector<Complex> zeros;  // zeros of `factor` inside the region
};

namespace detail {

struct Candidate {
  Complex root;
  double residual;
};

inline int dedupe_count(std::vector<Candidate> cands, double dedupe) {
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
    return a.root.imag() < b.root.imag();
  });
  int n = 0;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (i == 0 || std::abs(cands[i].root - cands[i - 1].root) >= dedupe) ++n;
  return n;
}

inline void subdivide_collect(const CFn& h, Box box, double coord_scale, int depth,
                              const FindOptions& opts, std::vector<Candidate>& out) {
  int w = winding_box_guarded(h, box);
  if (w == 0) return;
  if (depth > 60) throw WindingError("subdivision exceeded the depth limit");

  const double size = std::max(box.width(), box.height());
  if (w == 1 || size < opts.isolation_floor * coord_scale) {
    // isolated root, or a cluster too tight to separate (treated as one
    // root whose multiplicity contour will report the total order).
    // Containment must be tight: accepting a root outside this cell
    // would record a duplicate and silently drop the cell's own root.
    NewtonResult nr = newton_polish(h, box.center(), coord_scale);
    if (nr.converged && box.contains(nr.root, 1e-9 * size)) {
      out.push_back({nr.root, nr.residual});
      return;
    }
    if (size < 1e-12 * coord_scale)
      throw PolishError("newton polish failed to converge in box around (" +
                        std::to_string(box.center().real()) + ", " +
                        std::to_string(box.center().imag()) + ")");
    // fall through and split further
  }

  // split just off center so symmetric roots do not land on cell edges
  const double fx = 0.5173, fy = 0.4851;
  const double mx = box.x0 + fx * box.width(), my = box.y0 + fy * box.height();
  subdivide_collect(h, Box{box.x0, box.y0, mx, my}, coord_scale, depth + 1, opts, out);
  subdivide_collect(h, Box{mx, box.y0, box.x1, my}, coord_scale, depth + 1, opts, out);
  subdivide_collect(h, Box{box.x0, my, mx, box.y1}, coord_scale, depth + 1, opts, out);
  subdivide_collect(h, Box{mx, my, box.x1, box.y1}, coord_scale, depth + 1, opts, out);
}

}  // namespace detail

// Locates every coincidence f = g inside the region, certifying
// exhaustiveness with the argument principle on the region boundary.
// Assumes f - g (after clearing) is holomorphic on the region; the
// winding bookkeeping is wrong otherwise and the caller must not use
// this routine for merely-smooth sections.
inline std::vector<RootRecord> find_coincidences(const CFn& f, const CFn& g,
                                                 const Region& region,
                                                 const ClearFactor* clear = nullptr,
                                                 const FindOptions& opts = {}) {
  CFn h;
  if (clear) {
    h = [&f, &g, clear](Complex z) { return (f(z) - g(z)) * clear->factor(z); };
  } else {
    h = [&f, &g](Complex z) { return f(z) - g(z); };
  }

  // boundary count over the region
  int boundary = winding_circle(h, region.center, region.r_outer, 128);
  if (region.kind == Region::Kind::annulus)
    boundary -= winding_circle(h, region.center, region.r_inner, 128);

  // locate candidates on the bounding box (slightly inflated and
  // off-center so symmetric configurations avoid the subdivision grid)
  const double R = region.r_outer;
  const Complex off = region.center + Complex(0.00731 * R, 0.00389 * R);
  Box root_box{off.real() - 1.06 * R, off.imag() - 1.06 * R, off.real() + 1.06 * R,
               off.imag() + 1.06 * R};
  std::vector<detail::Candidate> cands;
  detail::subdivide_collect(h, root_box, R, 0, opts, cands);
  if (cands.size() > static_cast<std::size_t>(opts.max_roots))
    throw UndetectedRootError("too many roots located");
  const double dedupe = 1e-6 * R;

  // Recovery sweeps: if the box census comes up short (tight clusters
  // can still alias a cell count), deflate the roots already in hand and
  // subdivide again; the missing zeros are simple zeros of the deflated
  // function. Recovered roots are re-polished on the undeflated h.
  for (int sweep = 0; sweep < 3; ++sweep) {
    try {
      Box census_box = root_box;
      const int have = detail::dedupe_count(cands, dedupe);
      const int box_total = winding_box_guarded(h, census_box);
      if (have >= box_total) break;
      std::vector<Complex> known;
      for (const auto& c : cands) known.push_back(c.root);
      CFn deflated = [&h, known](Complex z) {
        Complex v = h(z);
        for (Complex r : known) {
          Complex d = z - r;
          if (std::abs(d) == 0.0) return Complex(0, 0);
          v /= d;
        }
        return v;
      };
      std::vector<detail::Candidate> extra;
      detail::subdivide_collect(deflated, root_box, R, 0, opts, extra);
      bool gained = false;
      for (const auto& c : extra) {
        bool fresh = true;
        for (const auto& k : cands) fresh = fresh && std::abs(k.root - c.root) >= dedupe;
        if (!fresh) continue;
        NewtonResult nr = newton_polish(h, c.root, R);
        if (!nr.converged) continue;
        cands.push_back({nr.root, nr.residual});
        gained = true;
      }
      if (!gained) break;
    } catch (const std::runtime_error&) {
      break;  // the final census check reports the mismatch
    }
  }

  // cluster duplicates (cells may overlap after inflation retries)
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
    return a.root.imag() < b.root.imag();
  });
  std::vector<detail::Candidate> uniq;
  for (const auto& c : cands) {
    if (!uniq.empty() && std::abs(uniq.back().root - c.root) < dedupe) {
      if (c.residual < uniq.back().residual) uniq.back() = c;
      continue;
    }
    uniq.push_back(c);
  }

  // keep roots inside the region; reject clear-factor zeros masquerading
  // as coincidences
  std::vector<RootRecord> records;
  for (const auto& c : uniq) {
    if (!region.contains(c.root)) continue;
    if (clear) {
      for (Complex zf : clear->zeros)
        if (std::abs(zf - c.root) < dedupe)
          throw UndetectedRootError("clear factor zero coincides with a located root");
    }
    records.push_back({c.root, c.residual, 1.0, 0});
  }

  // multiplicity via a small contour around each root
  for (std::size_t i = 0; i < records.size(); ++i) {
    double sep = 0.5 * R;
    for (std::size_t j = 0; j < records.size(); ++j)
      if (j != i) sep = std::min(sep, std::abs(records[i].root - records[j].root));
    const double radius = 0.3 * std::max(sep, 1e-9 * R);
    records[i].multiplicity = winding_circle(h, records[i].root, radius, 32);
    double scale = 0;
    for (int a = 0; a < 32; ++a) {
      const Complex zc =
          records[i].root + std::polar(radius, 2 * std::numbers::pi * a / 32.0);
      scale = std::max(scale, std::abs(h(zc)));
    }
    records[i].scale = scale;
    if (records[i].residual > opts.residual_rel_tol * scale)
      throw PolishError("root residual exceeds tolerance at (" +
                        std::to_string(records[i].root.real()) + ", " +
                        std::to_string(records[i].root.imag()) + ")");
  }

  int located = 0;
  for (const auto& r : records) located += r.multiplicity;
  if (located != boundary)
    throw UndetectedRootError("argument principle counts " + std::to_string(boundary) +
                              " roots but " + std::to_string(located) + " were located");

  std::sort(records.begin(), records.end(), [](const RootRecord& a, const RootRecord& b) {
    if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
    return a.root.imag() < b.root.imag();
  });
  return records;
}

struct Wirtinger {
  Complex dz;
  Complex dzbar;
};

inline Wirtinger wirtinger(const CFn& h, Complex z, double step) {
  const Complex hx = (h(z + step) - h(z - step)) / (2 * step);
  const Complex hy = (h(z + Complex(0, step)) - h(z - Complex(0, step))) / (2 * step);
  return {0.5 * (hx - Complex(0, 1) * hy), 0.5 * (hx + Complex(0, 1) * hy)};
}

struct TransversalityResult {
  double derivative_gap;  // |d(f-g)/dz| at the root
  bool positive;          // both evaluators holomorphic near the root
  bool tangency_alarm;
  double cr_residual_f;
  double cr_residual_g;
};

// Simple-root certificate: the difference has nonvanishing derivative
// and both sections are holomorphic nearby (Cauchy-Riemann residual
// below tolerance), which makes the graph intersection positive.
// Tangency is detected by comparing the linear prediction gap * delta
// against the actual variation of f - g at probe distance delta: the
// ratio is near 1 at a simple root and collapses at a multiple root.
inline TransversalityResult check_transversality(const CFn& f, const CFn& g, Complex root,
                                                 double coord_scale,
                                                 double rel_tol = 1e-6) {
  const double step = 1e-6 * std::max(std::abs(root), 1e-2 * coord_scale);
  const CFn h = [&](Complex z) { return f(z) - g(z); };
  const Wirtinger dh = wirtinger(h, root, step);
  const Wirtinger df = wirtinger(f, root, step);
  const Wirtinger dg = wirtinger(g, root, step);

  const double gap = std::abs(dh.dz);
  const double denom_f = std::abs(df.dz) + std::abs(df.dzbar) + 1e-300;
  const double denom_g = std::abs(dg.dz) + std::abs(dg.dzbar) + 1e-300;
  const double crf = std::abs(df.dzbar) / denom_f;
  const double crg = std::abs(dg.dzbar) / denom_g;

  const double delta = 1e-3 * std::max(std::abs(root), 1e-2 * coord_scale);
  double probe = 0;
  for (int q = 0; q < 4; ++q)
    probe = std::max(probe,
                     std::abs(h(root + std::polar(delta, q * std::numbers::pi / 2))));

  TransversalityResult r;
  r.derivative_gap = gap;
  r.cr_residual_f = crf;
  r.cr_residual_g = crg;
  r.tangency_alarm = !(gap * delta > rel_tol * probe);
  r.positive = !r.tangency_alarm && crf < rel_tol && crg < rel_tol;
  return r;
}

}  // namespace surfcert::rootfind
