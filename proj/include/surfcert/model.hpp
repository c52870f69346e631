#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace surfcert::model {

using Complex = std::complex<double>;

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ChartError : std::domain_error {
  using std::domain_error::domain_error;
};

// Smooth non-increasing plateau function: 1 on (-inf, a], 0 on [b, inf).
// Built from phi(t) = exp(-1/t) so all derivatives vanish at the seams.
struct Bump {
  double a, b;

  static double phi(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }

  double operator()(double r) const {
    if (r <= a) return 1.0;
    if (r >= b) return 0.0;
    const double pa = phi(r - a), pb = phi(b - r);
    return pb / (pa + pb);
  }
};

inline constexpr const char* kDefaultRhoProfile = "exp-smoothstep";

// Parameters of the local model: ten distinct base points on the unit
// disc plus the origin, three further points for the punctured sections,
// the clustering scale lambda, the section scale eps, and the fiber
// radius of the plumbing.
struct ModelParams {
  std::array<Complex, 11> nodes{};      // nodes[10] must be 0
  std::array<Complex, 3> pole_nodes{};  // distinct from every node
  double lambda = 0;                    // 0 < lambda <= 1/4
  double eps = 0;                       // > 0 once resolved
  double fiber_radius = 0;              // > 0 once resolved
  std::string rho_profile = kDefaultRhoProfile;

  void validate_points() const {
    if (std::abs(nodes[10]) != 0.0)
      throw std::invalid_argument("the eleventh node must be the origin");
    for (int i = 0; i < 10; ++i) {
      if (std::abs(nodes[i]) >= 1.0)
        throw std::invalid_argument("nodes must lie in the open unit disc");
      if (std::abs(nodes[i]) == 0.0)
        throw std::invalid_argument("only the eleventh node may be the origin");
      for (int j = i + 1; j < 11; ++j)
        if (nodes[i] == nodes[j]) throw std::invalid_argument("nodes must be distinct");
    }
    for (int k = 0; k < 3; ++k) {
      if (std::abs(pole_nodes[k]) >= 1.0)
        throw std::invalid_argument("pole nodes must lie in the open unit disc");
      for (int j = 0; j < 11; ++j)
        if (pole_nodes[k] == nodes[j])
          throw std::invalid_argument("pole nodes must avoid the nodes");
      for (int j = k + 1; j < 3; ++j)
        if (pole_nodes[k] == pole_nodes[j])
          throw std::invalid_argument("pole nodes must be distinct");
    }
    if (rho_profile != kDefaultRhoProfile)
      throw std::invalid_argument("unknown rho profile '" + rho_profile + "'");
  }

  void validate_lambda() const {
    if (!(lambda > 0) || lambda > 0.25)
      throw std::invalid_argument("lambda must lie in (0, 1/4]");
  }

  void validate() const {
    validate_points();
    validate_lambda();
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(fiber_radius > 0)) throw std::invalid_argument("fiber radius must be positive");
  }
};

// Ten equally spaced nodes on the radius-1/2 circle plus the origin;
// three pole nodes on the radius-1/4 circle offset between node rays.
// lambda/eps/fiber_radius stay unset until certification picks them.
inline ModelParams default_points() {
  ModelParams p;
  constexpr double tau = 2 * std::numbers::pi;
  for (int j = 1; j <= 10; ++j)
    p.nodes[j - 1] = 0.5 * std::polar(1.0, tau * j / 10.0);
  p.nodes[10] = 0.0;
  for (int k = 1; k <= 3; ++k)
    p.pole_nodes[k - 1] = 0.25 * std::polar(1.0, tau * (k - 0.5) / 3.0);
  return p;
}

enum class Chart { D, V };

// The two section families of the local model, evaluated over the disc
// chart (coordinate z, |z| < 1) and the complement chart (transition
// z^9 on the overlap 1/2 < |z| < 1).
//
// Curve sections (j = 1..11): the j-th one vanishes at lambda*node_i for
// i != j and equals 1 at the origin; the eleventh is identically zero.
// Branch sections (k = 1..3): pass through all eleven marked points and
// have a simple pole at lambda*pole_node_k.
class SectionFamily {
 public:
  explicit SectionFamily(const ModelParams& params) : p_(params) {
    p_.validate_points();
    p_.validate_lambda();
    Complex prod = 1.0;
    for (int i = 0; i < 10; ++i) prod *= p_.nodes[i];
    norm_ = -1.0 / prod;
    lam9_ = std::pow(p_.lambda, -9.0);
  }

  const ModelParams& params() const { return p_; }
  // normalization constant -(node_1 ... node_10)^(-1)
  Complex normalization() const { return norm_; }

  Complex marked_point_base(int j) const {  // base coordinate of P_j
    require_range(j, 11, "marked point");
    return j <= 10 ? p_.lambda * p_.nodes[j - 1] : Complex(0.0);
  }
  Complex pole_point(int k) const {  // base coordinate of the k-th pole
    require_range(k, 3, "pole point");
    return p_.lambda * p_.pole_nodes[k - 1];
  }

  // D-chart product form, defined on the whole disc.
  Complex curve_section(int j, Complex z) const {
    require_range(j, 11, "curve section");
    if (j == 11) return 0.0;
    Complex prod = 1.0;
    for (int i = 0; i < 10; ++i) {
      if (i == j - 1) continue;
      prod *= 1.0 - z / (p_.lambda * p_.nodes[i]);
    }
    return prod;
  }

  // V-chart form lambda^-9 * A * node_j * prod(1 - lambda*node_i / z),
  // equal to z^-9 * curve_section on the overlap.
  Complex curve_section_V(int j, Complex z) const {
    require_range(j, 11, "curve section");
    if (j == 11) return 0.0;
    Complex prod = 1.0;
    for (int i = 0; i < 10; ++i) {
      if (i == j - 1) continue;
      prod *= 1.0 - p_.lambda * p_.nodes[i] / z;
    }
    return lam9_ * norm_ * p_.nodes[j - 1] * prod;
  }

  // bounded remainder: curve_section_V = const * (1 + lambda * remainder)
  Complex curve_remainder(int j, Complex z) const { return curve_remainder(j, z, p_.lambda); }
  Complex curve_remainder(int j, Complex z, double lambda) const {
    require_range(j, 10, "curve remainder");
    Complex prod = 1.0;
    for (int i = 0; i < 10; ++i) {
      if (i == j - 1) continue;
      prod *= 1.0 - lambda * p_.nodes[i] / z;
    }
    return (prod - 1.0) / lambda;
  }

  // glued V-chart section: interpolates to the constant value on
  // |z| >= 3/4 (plateau up to 2/3 keeps the D-chart extension exact)
  Complex curve_section_glued(int j, Complex z) const {
    require_range(j, 11, "curve section");
    if (j == 11) return 0.0;
    const double r = std::abs(z);
    // tolerate probes slightly below the seam: the plateau keeps the
    // formula equal to the transported D-chart section there
    if (r < 0.49) throw ChartError("glued section requested below the overlap");
    if (r >= 0.75) return curve_section_const(j);
    const double rho = rho_curve_(r);
    return lam9_ * norm_ * p_.nodes[j - 1] *
           (1.0 + p_.lambda * rho * curve_remainder(j, z));
  }

  Complex curve_section_const(int j) const {
    require_range(j, 11, "curve section");
    if (j == 11) return 0.0;
    return lam9_ * norm_ * p_.nodes[j - 1];
  }

  // D-chart branch section with its simple pole
  Complex branch_section(int k, Complex z) const {
    require_range(k, 3, "branch section");
    const Complex pole = pole_point(k);
    const Complex denom = 1.0 - z / pole;
    if (std::abs(denom) < 1e-14)
      throw PoleError("branch section evaluated at its pole");
    Complex prod = 1.0;
    for (int i = 0; i < 10; ++i) prod *= 1.0 - z / (p_.lambda * p_.nodes[i]);
    return prod / denom;
  }

  Complex branch_section_V(int k, Complex z) const {
    require_range(k, 3, "branch section");
    return lam9_ * norm_ * p_.pole_nodes[k - 1] *
           (1.0 + p_.lambda * branch_remainder(k, z));
  }

  Complex branch_remainder(int k, Complex z) const { return branch_remainder(k, z, p_.lambda); }
  Complex branch_remainder(int k, Complex z, double lambda) const {
    require_range(k, 3, "branch remainder");
    Complex prod = 1.0;
    for (int i = 0; i < 10; ++i) prod *= 1.0 - lambda * p_.nodes[i] / z;
    const Complex denom = 1.0 - lambda * p_.pole_nodes[k - 1] / z;
    return (prod / denom - 1.0) / lambda;
  }

  // glued branch section on the V chart (plateau below 1/2 here)
  Complex branch_section_glued(int k, Complex z) const {
    require_range(k, 3, "branch section");
    const double r = std::abs(z);
    if (r < 0.49) throw ChartError("glued section requested below the overlap");
    if (r >= 0.75) return branch_section_const(k);
    const double rho = rho_branch_(r);
    return lam9_ * norm_ * p_.pole_nodes[k - 1] *
           (1.0 + rho * p_.lambda * branch_remainder(k, z));
  }

  Complex branch_section_const(int k) const {
    require_range(k, 3, "branch section");
    return lam9_ * norm_ * p_.pole_nodes[k - 1];
  }

  const Bump& rho_curve() const { return rho_curve_; }
  const Bump& rho_branch() const { return rho_branch_; }

 private:
  static void require_range(int idx, int max, const char* what) {
    if (idx < 1 || idx > max)
      throw std::out_of_range(std::string(what) + " index out of range");
  }

  ModelParams p_;
  Complex norm_;
  double lam9_;
  Bump rho_curve_{2.0 / 3.0, 0.75};
  Bump rho_branch_{0.5, 0.75};
};

// Chart-checked evaluators matching the published operation contracts.

inline Complex eval_curve_section(const SectionFamily& f, int j, Complex z, Chart chart) {
  if (chart == Chart::D) {
    if (std::abs(z) >= 1.0) throw ChartError("D chart requires |z| < 1");
    return f.curve_section(j, z);
  }
  if (std::abs(z) <= 0.5) throw ChartError("V chart requires |z| > 1/2");
  return f.curve_section_V(j, z);
}

inline Complex eval_curve_section_glued(const SectionFamily& f, int j, Complex z) {
  if (std::abs(z) < 0.5) throw ChartError("glued sections live on |z| >= 1/2");
  return f.curve_section_glued(j, z);
}

inline Complex eval_branch_section_glued(const SectionFamily& f, int k, Complex z,
                                         Chart chart) {
  if (chart == Chart::D) {
    if (std::abs(z) >= 1.0) throw ChartError("D chart requires |z| < 1");
    return f.branch_section(k, z);
  }
  if (std::abs(z) < 0.5) throw ChartError("glued sections live on |z| >= 1/2");
  return f.branch_section_glued(k, z);
}

}  // namespace surfcert::model
