#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "surfcert/int_types.hpp"
#include "surfcert/lattice.hpp"
#include "surfcert/numtheory.hpp"
#include "surfcert/report.hpp"

namespace surfcert::seifert {

using lattice::HomologyClass;
using report::CertReport;
using report::Provenance;
using report::Witness;

struct SeifertCurve {
  Int genus;
  Int m;  // isotropy multiplicity
  Int selfint;
};

// Base data of a semi-regular Seifert circle bundle over a 4-manifold
// with disjoint isotropy surfaces: multiplicities m_i, orbit invariants
// b_i (coprime to m_i), and an auxiliary class B = sum a_i [C_i].
struct SeifertData {
  std::uint64_t p;
  std::vector<SeifertCurve> curves;
  std::vector<Int> b;
  std::vector<Int> a;
  Int mu;

  SeifertData(std::uint64_t p_, std::vector<SeifertCurve> curves_, std::vector<Int> b_,
              std::vector<Int> a_)
      : p(p_), curves(std::move(curves_)), b(std::move(b_)), a(std::move(a_)) {
    if (!nt::is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (curves.empty()) throw std::invalid_argument("empty curve list");
    if (b.size() != curves.size() || a.size() != curves.size())
      throw std::invalid_argument("orbit invariants and class coefficients must match curves");
    mu = 1;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (curves[i].m < 1) throw std::invalid_argument("multiplicities must be >= 1");
      if (gcd(b[i], curves[i].m) != 1)
        throw std::invalid_argument("orbit invariant b_" + std::to_string(i + 1) +
                                    " must be coprime to its multiplicity");
      mu = lcm(mu, curves[i].m);
    }
  }
};

// Basis of proper-transform curve classes: eleven classes of square -1
// and one of square +1, mutually disjoint.
inline lattice::BasisPtr curve_basis() {
  std::vector<Int> diag(11, Int(-1));
  diag.emplace_back(1);
  std::vector<std::string> labels;
  for (int i = 1; i <= 12; ++i) labels.push_back("C" + std::to_string(i));
  return lattice::make_basis("curve-12", labels, IntMatrix::diagonal(diag));
}

// The reference configuration: eleven elliptic curves with
// self-intersection -1 and one genus-3 curve with self-intersection +1,
// multiplicities p, p^2, ..., p^12.
inline SeifertData reference_configuration(std::uint64_t p, std::vector<Int> a = {},
                                       std::vector<Int> b = {}) {
  std::vector<SeifertCurve> curves;
  Int mk = 1;
  for (int i = 1; i <= 12; ++i) {
    mk *= p;
    curves.push_back({i <= 11 ? Int(1) : Int(3), mk, i <= 11 ? Int(-1) : Int(1)});
  }
  if (a.empty()) a.assign(12, Int(0));
  if (b.empty()) b.assign(12, Int(1));
  return SeifertData(p, std::move(curves), std::move(b), std::move(a));
}

struct TorsionSummand {
  Int modulus;
  Int exponent;  // number of Z/modulus factors
};

struct H2Decomposition {
  Int free_rank;
  std::vector<TorsionSummand> torsion;  // one entry per curve with m > 1

  bool operator==(const H2Decomposition& o) const {
    if (free_rank != o.free_rank || torsion.size() != o.torsion.size()) return false;
    for (std::size_t i = 0; i < torsion.size(); ++i)
      if (torsion[i].modulus != o.torsion[i].modulus ||
          torsion[i].exponent != o.torsion[i].exponent)
        return false;
    return true;
  }
};

// H2 of the Seifert total space: Z^k plus (Z/m_i)^(2 g_i) per isotropy
// curve. Requires the base to carry b2 = k+1 disjoint curves spanning
// rational homology.
inline H2Decomposition seifert_homology(const Int& k, const std::vector<SeifertCurve>& curves) {
  if (k < 0) throw std::domain_error("free rank must be nonnegative");
  if (curves.empty()) throw std::invalid_argument("empty curve list");
  H2Decomposition h;
  h.free_rank = k;
  for (const SeifertCurve& c : curves) {
    if (c.m > 1) h.torsion.push_back({c.m, 2 * c.genus});
  }
  return h;
}

// Condition 2 of the vanishing-H1 criterion, reduced to arithmetic: for
// disjoint smooth curves, restriction of an integral class to D_i lands
// in H^2(D_i, Z/m_i) = Z/m_i as its pairing value, so surjectivity means
// some basis class pairs with D_i to a unit mod m_i, i.e. the gcd of the
// i-th pairing column with m_i is 1.
inline std::vector<bool> surjectivity_check(const IntMatrix& pairings,
                                            const std::vector<Int>& m) {
  if (pairings.cols() != m.size())
    throw std::invalid_argument("one pairing column per curve required");
  std::vector<bool> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Int g = m[i];
    for (std::size_t r = 0; r < pairings.rows(); ++r) g = gcd(g, pairings.at(r, i));
    out[i] = g == 1;
  }
  return out;
}

// Coefficients of mu * c1(B) + sum b_i (mu / m_i) [C_i] in the curve
// basis, with c1(B) = sum a_i [C_i]. For b_i = 1 and m_i = p^i this is
// sum p^(12-i) (p^i a_i + 1) [C_i].
inline HomologyClass chern_coefficients(const SeifertData& data,
                                        const lattice::BasisPtr& curve_basis) {
  if (curve_basis->rank() != data.curves.size())
    throw std::invalid_argument("basis rank must match curve count");
  std::vector<Int> coeff(data.curves.size());
  for (std::size_t i = 0; i < data.curves.size(); ++i)
    coeff[i] = data.mu * data.a[i] + data.b[i] * (data.mu / data.curves[i].m);
  return HomologyClass(curve_basis, std::move(coeff));
}

// Forbidden residues for the first class coefficient: a_1 hits the set
// iff gcd(p*a_1 + 1, p^2*a_2 + 1) > 1. Stored per prime factor q_j of
// p^2*a_2 + 1 as the residue alpha_j with 1 + alpha_j*p = 0 mod q_j.
struct ResidueSet {
  std::vector<nt::PrimePower> factors;
  std::vector<std::uint64_t> residues;  // parallel to factors
  std::uint64_t modulus = 1;            // product of the distinct primes
  std::uint64_t allowed_count = 1;      // number of allowed residues mod modulus

  bool forbids(const Int& a1) const {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Int r = a1 % Int(factors[i].prime);
      if (r < 0) r += Int(factors[i].prime);
      if (r == Int(residues[i])) return true;
    }
    return false;
  }
  std::uint64_t excluded_count() const { return modulus - allowed_count; }
};

// Builds the forbidden set for gcd(p*a1 + 1, p^2*a2 + 1) = 1. The target
// p^2*a2 + 1 must fit in 64 bits (desk scale); larger inputs are
// rejected.
inline ResidueSet admissible_a1(std::uint64_t p, const Int& a2) {
  if (!nt::is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  Int target = Int(p) * Int(p) * a2 + 1;
  if (target == 0) throw std::domain_error("p^2*a2 + 1 must be nonzero");
  Int mag = abs(target);
  if (mag >= Int(1) << 63)
    throw std::overflow_error("p^2*a2 + 1 exceeds the 64-bit factorization ceiling");
  ResidueSet rs;
  if (mag == 1) return rs;  // no constraints
  rs.factors = nt::factorize_u64(mag.convert_to<std::uint64_t>());
  for (const auto& f : rs.factors) {
    if (f.prime == p)
      throw std::logic_error("prime p cannot divide p^2*a2 + 1");
    // 1 + alpha*p = 0 mod q  =>  alpha = -p^{-1} mod q
    std::uint64_t inv = nt::inverse_mod(p % f.prime, f.prime);
    rs.residues.push_back((f.prime - inv) % f.prime);
    rs.modulus *= f.prime;
    rs.allowed_count *= f.prime - 1;
  }
  return rs;
}

// Adds the parity constraint q0 = 2 (forbidding odd a_1, the residue with
// 1 + alpha*p even for odd p). Only meaningful for odd p with the other
// factors odd.
inline ResidueSet augment_with_parity(ResidueSet rs, std::uint64_t p) {
  if (p % 2 == 0) throw std::invalid_argument("parity augmentation requires odd p");
  for (const auto& f : rs.factors)
    if (f.prime == 2)
      throw std::invalid_argument("factor 2 already present; parity augmentation redundant");
  rs.factors.insert(rs.factors.begin(), nt::PrimePower{2, 1});
  rs.residues.insert(rs.residues.begin(), 1);  // 1 + p is even for odd p
  rs.modulus *= 2;
  rs.allowed_count *= 1;  // only the even residue survives mod 2
  return rs;
}

struct SpinResult {
  bool spin;
  std::size_t kernel_dim;
};

// Second Stiefel-Whitney class of the Seifert total space. For p = 2 the
// pullback on mod-2 cohomology vanishes, so the space is spin. For odd p
// the pullback kernel is the line spanned by c1(B) + sum b_i [C_i] mod 2,
// and the space is spin iff w2 of the base lies on that line.
inline SpinResult spin_class(const SeifertData& data, const std::vector<Int>& w2_base) {
  if (w2_base.size() != data.curves.size())
    throw std::invalid_argument("w2 must be given in the curve basis");
  if (data.p == 2) return SpinResult{true, data.curves.size()};
  bool w2_zero = true, w2_on_line = true;
  for (std::size_t i = 0; i < data.curves.size(); ++i) {
    Int w = w2_base[i] & 1;
    Int v = (data.a[i] + data.b[i]) & 1;
    if (w != 0) w2_zero = false;
    if (w != v) w2_on_line = false;
  }
  return SpinResult{w2_zero || w2_on_line, 1};
}

// w2 of the blown-up plane expressed in the curve basis: the sum of all
// twelve curve classes reduces to h + e_1 + ... + e_11 mod 2.
inline std::vector<Int> w2_curve_coordinates() { return std::vector<Int>(12, Int(1)); }

// Seiberg-Witten basic-class arithmetic for the torus-sum manifold with
// b2 = 36: every basic class has square -2, while Noether bookkeeping
// forces the square of a canonical class of a complex surface with these
// invariants to be 22. Both routes are exact.
inline CertReport sw_basic_class_check() {
  using lattice::basis_vector;
  using lattice::make_basis;

  CertReport rep = CertReport::pass("sw.basic-classes",
                                    "basic-class squares vs Noether canonical square");

  IntMatrix gram(5, 5);
  gram.at(3, 3) = -1;
  gram.at(4, 4) = -1;  // three torus classes square 0; two exceptional square -1
  auto basis = make_basis("torus-sum", {"T12", "T13", "T14", "E1", "E2"}, gram);

  bool all_minus2 = true;
  for (int mask = 0; mask < 32; ++mask) {
    std::vector<Int> coords(5);
    for (int i = 0; i < 5; ++i) coords[i] = (mask >> i) & 1 ? 1 : -1;
    HomologyClass kappa(basis, coords);
    if (lattice::self_intersection(kappa) != -2) all_minus2 = false;
  }
  rep.check("all-32-squares-are-minus-2", all_minus2, Provenance::reference);

  const Int chiO = 5, c2 = 38;
  const Int K2 = 12 * chiO - c2;
  rep.with(Witness::exact_value("noether-ksq", K2, Provenance::reference));
  rep.check("noether-ksq-22", K2 == 22, Provenance::reference);
  rep.check("noether-identity", rat(K2 + c2, 12) == Rat(chiO), Provenance::direct);

  const Int p_g = 4, h11 = 28;
  const Int b2_plus = 1 + p_g;
  const Int b2_minus = h11 + p_g - 1;
  rep.with(Witness::exact_value("b2+", b2_plus, Provenance::reference));
  rep.with(Witness::exact_value("b2-", b2_minus, Provenance::reference));
  rep.check("b2+-is-5", b2_plus == 5, Provenance::reference);
  rep.check("b2--is-31", b2_minus == 31, Provenance::reference);
  rep.check("b2-total-36", b2_plus + b2_minus == 36, Provenance::direct);

  rep.check("contradiction-22-vs-minus-2", K2 != -2, Provenance::reference);
  if (rep.status == report::Status::pass)
    rep.detail = "no complex structure: kappa^2 = -2 for all 32 sign patterns but K^2 = 22";
  return rep;
}

}  // namespace surfcert::seifert
