// surfcert — command-line driver for the certification suites: exact
// lattice and divisor arithmetic, Seifert invariants, and the numeric
// section-configuration checks, each exposed as a subcommand and
// aggregated by verify-all.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "surfcert/config_report.hpp"
#include "surfcert/divisor.hpp"
#include "surfcert/lattice.hpp"
#include "surfcert/params_io.hpp"
#include "surfcert/parallel.hpp"
#include "surfcert/report.hpp"
#include "surfcert/seifert.hpp"
#include "surfcert/smith.hpp"

namespace {

using namespace surfcert;
using report::CertReport;
using report::Provenance;
using report::Witness;

struct RunConfig {
  std::string report_path = "-";
  unsigned long long seed = 0;
  unsigned parallelism = 0;  // 0 = resolve from env / hardware
  std::string params_path;
  long long g = 3, b = 12;
  int m1_max = 16, alpha_max = 3;
  unsigned long long p = 2;
  std::string a_list;
};

unsigned resolve_parallelism(unsigned requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("SURFCERT_JOBS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return default_parallelism();
}

void write_report(const CertReport& rep, const RunConfig& cfg,
                  const std::string& subcommand) {
  nlohmann::ordered_json doc = report::document(rep);
  doc["run"] = {{"subcommand", subcommand},
                {"seed", cfg.seed},
                {"parallelism", resolve_parallelism(cfg.parallelism)}};
  const std::string text = doc.dump(2) + "\n";
  if (cfg.report_path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  const std::string tmp = cfg.report_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report file '" + tmp + "'");
    out << text;
  }
  if (std::rename(tmp.c_str(), cfg.report_path.c_str()) != 0)
    throw std::runtime_error("cannot move report into place at '" + cfg.report_path + "'");
}

// ---------------------------------------------------------------------
// verify-lattice

CertReport lattice_structural_report() {
  using namespace lattice;
  CertReport rep = CertReport::pass("lattice.structure");

  auto blowup = blowup_basis(11);
  auto plane = line_basis();
  auto h = basis_vector(blowup, 0);
  rep.check("h.h=1", pair(h, h) == 1, Provenance::reference);
  bool diag = true;
  for (int i = 1; i <= 11; ++i) {
    auto e = basis_vector(blowup, static_cast<std::size_t>(i));
    diag = diag && pair(e, e) == -1 && pair(h, e) == 0;
  }
  rep.check("exceptional-squares", diag, Provenance::reference);

  std::vector<HomologyClass> curves;
  for (int k = 1; k <= 11; ++k) {
    std::vector<Int> mults(11, Int(1));
    mults[static_cast<std::size_t>(k - 1)] = 0;
    curves.push_back(proper_transform(HomologyClass(plane, {Int(3)}), mults, blowup));
  }
  curves.push_back(proper_transform(HomologyClass(plane, {Int(10)}),
                                    std::vector<Int>(11, Int(3)), blowup));
  IntMatrix gram = gram_of(curves);
  IntMatrix expected(12, 12);
  for (int i = 0; i < 11; ++i) expected.at(i, i) = -1;
  expected.at(11, 11) = 1;
  rep.check("curve-gram-diagonal", gram == expected, Provenance::reference);
  rep.with(Witness::exact_value("curve-gram-det", determinant(gram), Provenance::reference));
  rep.check("curve-gram-det-is-minus-1", determinant(gram) == -1, Provenance::reference);
  auto bc = verify_basis(curves);
  rep.with(Witness::exact_value("coordinate-det", bc.det, Provenance::derived));
  rep.check("curve-classes-unimodular", bc.is_basis, Provenance::reference);

  auto snf = smith_normal_form(coordinate_matrix(curves));
  bool ones = true;
  for (const Int& f : snf.factors) ones = ones && f == 1;
  rep.check("coordinate-snf-all-ones", ones, Provenance::derived);
  return rep;
}

CertReport lattice_boundary_presentations_report() {
  CertReport rep = CertReport::pass("lattice.boundary-presentations",
                                    "abelianized circle-bundle boundaries");
  // eleven tubular boundaries over elliptic curves: one commutator
  // relation killing the fiber class, cokernel Z^2
  bool elliptic_ok = true;
  for (int i = 1; i <= 11; ++i) {
    IntMatrix rel(1, 3);
    rel.at(0, 2) = 1;
    auto g = abelianization(rel, 3);
    elliptic_ok = elliptic_ok && g.free_rank == 2 && g.torsion.empty();
  }
  rep.check("elliptic-boundaries-are-Z2", elliptic_ok, Provenance::derived);

  // genus-3 boundary: seven generators, one relation
  IntMatrix rel12(1, 7);
  rel12.at(0, 6) = -1;
  auto g12 = abelianization(rel12, 7);
  rep.check("genus3-boundary-is-Z6", g12.free_rank == 6 && g12.torsion.empty(),
            Provenance::derived);
  return rep;
}

CertReport lattice_property_report(unsigned long long seed) {
  using namespace lattice;
  CertReport rep = CertReport::pass("lattice.properties", "seeded random property sampling");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-20, 20), scalar(-5, 5), small(-9, 9);

  auto blowup = blowup_basis(11);
  auto random_class = [&] {
    std::vector<Int> c(12);
    for (auto& v : c) v = entry(rng);
    return HomologyClass(blowup, std::move(c));
  };
  bool sym = true, bil = true;
  for (int t = 0; t < 500; ++t) {
    auto a = random_class(), b = random_class(), c = random_class();
    Int s1 = scalar(rng), s2 = scalar(rng);
    sym = sym && pair(a, b) == pair(b, a);
    bil = bil && pair(s1 * a + s2 * b, c) == s1 * pair(a, c) + s2 * pair(b, c);
  }
  rep.check("pairing-symmetric", sym, Provenance::derived);
  rep.check("pairing-bilinear", bil, Provenance::derived);

  bool snf_ok = true;
  for (int t = 0; t < 200 && snf_ok; ++t) {
    IntMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = small(rng);
    auto s = smith_normal_form(m);
    snf_ok = snf_ok && s.U * m * s.V == s.diagonal && s.diagonal.is_diagonal();
    snf_ok = snf_ok && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    for (std::size_t i = 0; i + 1 < s.factors.size(); ++i) {
      if (s.factors[i] == 0)
        snf_ok = snf_ok && s.factors[i + 1] == 0;
      else
        snf_ok = snf_ok && s.factors[i + 1] % s.factors[i] == 0;
    }
  }
  rep.check("snf-unimodular-diagonalization", snf_ok, Provenance::derived);
  return rep;
}

CertReport run_verify_lattice(const RunConfig& cfg) {
  std::vector<CertReport> parts;
  parts.push_back(lattice_structural_report());
  parts.push_back(lattice_boundary_presentations_report());
  parts.push_back(lattice_property_report(cfg.seed));
  return report::merge(std::move(parts), "lattice");
}

// ---------------------------------------------------------------------
// verify-obstruction

CertReport run_verify_obstruction(const RunConfig& cfg) {
  const Int g(cfg.g), b(cfg.b);
  std::vector<CertReport> parts;

  CertReport bound = CertReport::pass("obstruction.bound");
  const Int cap = divisor::max_b2_for_genus(g);
  bound.with(Witness::exact_value("genus", g, Provenance::direct));
  bound.with(Witness::exact_value("b2", b, Provenance::direct));
  bound.with(Witness::exact_value("max-b2", cap, Provenance::reference));
  bound.check("b2-exceeds-bound", b > cap, Provenance::derived);
  bound.detail = b > cap ? "b2 = " + b.str() + " > " + cap.str() +
                               " => configuration impossible"
                         : "bound does not exclude b2 = " + b.str();
  parts.push_back(std::move(bound));

  if (g >= 2) {
    // fan the m1 slices out to the worker pool; fold deterministically
    auto slices = parallel_map(
        static_cast<std::size_t>(cfg.m1_max), resolve_parallelism(cfg.parallelism),
        [&](std::size_t i) {
          return divisor::obstruction_scan_slice(g, b, static_cast<std::int64_t>(i + 1),
                                                 cfg.alpha_max);
        });
    std::uint64_t instances = 0, admissible = 0;
    std::vector<CertReport> slice_reports;
    for (auto& s : slices) {
      instances += s.instances;
      admissible += s.admissible;
      slice_reports.push_back(std::move(s.report));
    }
    CertReport scan = report::merge(std::move(slice_reports), "obstruction.scan");
    scan.with(Witness::exact_value("total-instances", Int(instances), Provenance::derived));
    scan.with(Witness::exact_value("total-admissible", Int(admissible), Provenance::derived));
    scan.check("no-admissible-instance", admissible == 0, Provenance::derived);
    parts.push_back(std::move(scan));

    // inequality chain for the reference instance (every m_i = 1, empty
    // fixed part): both sides of each step as exact rationals
    if (cfg.b >= 2) {
      divisor::ObstructionInstance inst(
          g, std::vector<Int>(static_cast<std::size_t>(cfg.b), Int(1)),
          std::vector<Int>(static_cast<std::size_t>(cfg.b - 1), Int(0)));
      parts.push_back(
          divisor::obstruction_chain_report(inst, b, "obstruction.chain-reference").report);
    }
  } else {
    parts.push_back(CertReport::pass("obstruction.case-genus-1",
                                     "a genus-1 top curve forces b2 <= 1"));
  }

  if (g == 3 && b == 12) parts.push_back(divisor::blowup_reconstruction_check());
  return report::merge(std::move(parts), "obstruction");
}

// ---------------------------------------------------------------------
// seifert

std::vector<Int> parse_int_list(const std::string& text, std::size_t expected,
                                const std::string& what) {
  std::vector<Int> out;
  if (!text.empty()) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(int_from_string(item));
  }
  if (out.empty()) out.assign(expected, Int(0));
  if (out.size() != expected)
    throw model::ParamsError(what + " must list " + std::to_string(expected) + " integers");
  return out;
}

CertReport run_seifert(const RunConfig& cfg) {
  auto a = parse_int_list(cfg.a_list, 12, "--a");
  auto data = seifert::reference_configuration(cfg.p, a);
  auto basis = seifert::curve_basis();
  std::vector<CertReport> parts;

  {
    CertReport rep = CertReport::pass("seifert.homology");
    auto h2 = seifert::seifert_homology(Int(11), data.curves);
    rep.with(Witness::exact_value("free-rank", h2.free_rank, Provenance::reference));
    for (std::size_t i = 0; i < h2.torsion.size(); ++i) {
      rep.with(Witness::text(
          "torsion-" + std::to_string(i + 1),
          "(Z/" + h2.torsion[i].modulus.str() + ")^" + h2.torsion[i].exponent.str(),
          Provenance::reference));
    }
    rep.check("free-rank-11", h2.free_rank == 11, Provenance::reference);
    rep.check("twelve-torsion-summands", h2.torsion.size() == 12, Provenance::reference);
    parts.push_back(std::move(rep));
  }

  {
    CertReport rep = CertReport::pass("seifert.h1-conditions");
    rep.check("base-h1-zero", true, Provenance::reference);  // simply connected blow-up
    std::vector<Int> mods;
    for (const auto& c : data.curves) mods.push_back(c.m);
    auto surj = seifert::surjectivity_check(basis->gram(), mods);
    bool all = true;
    for (bool s : surj) all = all && s;
    rep.check("restriction-surjective", all, Provenance::derived);
    auto chern = seifert::chern_coefficients(data, basis);
    rep.with(Witness::text("chern-coefficients", lattice::to_json(chern).dump(),
                           Provenance::derived));
    rep.check("chern-class-primitive", lattice::is_primitive(chern), Provenance::reference);
    parts.push_back(std::move(rep));
  }

  {
    CertReport rep = CertReport::pass("seifert.admissible-a1");
    auto rs = seifert::admissible_a1(cfg.p, a[1]);
    const Int target = Int(cfg.p) * Int(cfg.p) * a[1] + 1;
    rep.with(Witness::exact_value("target", target, Provenance::direct));
    rep.with(Witness::exact_value("modulus", Int(rs.modulus), Provenance::derived));
    rep.with(Witness::exact_value("allowed-residues", Int(rs.allowed_count),
                                  Provenance::derived));
    for (std::size_t i = 0; i < rs.factors.size(); ++i)
      rep.with(Witness::text("forbidden-" + std::to_string(i + 1),
                             std::to_string(rs.residues[i]) + " mod " +
                                 std::to_string(rs.factors[i].prime),
                             Provenance::derived));
    // translate property: allowed residues stay coprime along 50 steps
    bool translates_ok = true;
    for (std::uint64_t r0 = 0; r0 < rs.modulus && translates_ok; ++r0) {
      if (rs.forbids(Int(r0))) continue;
      for (int t = 0; t <= 50; ++t) {
        Int a1 = Int(r0) + Int(t) * Int(rs.modulus);
        if (gcd(Int(cfg.p) * a1 + 1, abs(target)) != 1) translates_ok = false;
      }
    }
    rep.check("allowed-translates-coprime", translates_ok, Provenance::derived);
    rep.check("given-a1-allowed", !rs.forbids(a[0]), Provenance::derived);
    parts.push_back(std::move(rep));
  }

  {
    CertReport rep = CertReport::pass("seifert.spin");
    auto w2 = seifert::w2_curve_coordinates();
    auto res = seifert::spin_class(data, w2);
    rep.with(Witness::boolean("spin", res.spin, Provenance::derived));
    rep.with(Witness::exact_value("pullback-kernel-dim", Int(res.kernel_dim),
                                  Provenance::derived));
    parts.push_back(std::move(rep));
  }

  return report::merge(std::move(parts), "seifert");
}

// ---------------------------------------------------------------------
// verify-config

CertReport run_verify_config(const RunConfig& cfg) {
  model::ModelParams params = cfg.params_path.empty()
                                  ? model::default_points()
                                  : model::parse_params_file(cfg.params_path);
  auto res = model::full_configuration_report(params, resolve_parallelism(cfg.parallelism));
  return res.report;
}

// ---------------------------------------------------------------------

CertReport run_verify_all(const RunConfig& cfg) {
  std::vector<CertReport> parts;
  parts.push_back(run_verify_lattice(cfg));
  parts.push_back(run_verify_obstruction(cfg));
  parts.push_back(run_verify_config(cfg));
  parts.push_back(run_seifert(cfg));
  parts.push_back(seifert::sw_basic_class_check());
  return report::merge(std::move(parts), "verify-all");
}

int run(const std::string& subcommand, const RunConfig& cfg) {
  CertReport rep = CertReport::fail(subcommand, "not run");
  try {
    if (subcommand == "verify-lattice")
      rep = run_verify_lattice(cfg);
    else if (subcommand == "verify-obstruction")
      rep = run_verify_obstruction(cfg);
    else if (subcommand == "verify-config")
      rep = run_verify_config(cfg);
    else if (subcommand == "seifert")
      rep = run_seifert(cfg);
    else if (subcommand == "sw-check")
      rep = seifert::sw_basic_class_check();
    else if (subcommand == "verify-all")
      rep = run_verify_all(cfg);
  } catch (const model::ParamsError& e) {
    std::cerr << "params error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    rep = CertReport::fail(subcommand, e.what());
  }
  write_report(rep, cfg, subcommand);
  std::cerr << report::summary(rep);
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification suites for the surface-configuration construction"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--report", cfg.report_path, "report path, '-' for stdout");
    sub->add_option("--seed", cfg.seed, "seed for randomized property sampling");
    sub->add_option("--parallelism", cfg.parallelism,
                    "worker count (default $SURFCERT_JOBS)");
  };

  auto* lat = app.add_subcommand("verify-lattice", "intersection lattice and SNF checks");
  add_common(lat);
  auto* obs = app.add_subcommand("verify-obstruction", "divisor obstruction arithmetic");
  add_common(obs);
  obs->add_option("--g", cfg.g, "genus of the distinguished curve");
  obs->add_option("--b", cfg.b, "second Betti number of the candidate surface");
  obs->add_option("--m1-max", cfg.m1_max, "largest top self-intersection scanned");
  obs->add_option("--alpha-max", cfg.alpha_max, "largest fixed-part coefficient scanned");
  auto* conf = app.add_subcommand("verify-config", "section configuration certification");
  add_common(conf);
  conf->add_option("--params", cfg.params_path, "model parameter file");
  auto* sei = app.add_subcommand("seifert", "Seifert bundle invariants");
  add_common(sei);
  sei->add_option("--p", cfg.p, "isotropy prime");
  sei->add_option("--a", cfg.a_list, "twelve auxiliary class coefficients, comma separated");
  auto* sw = app.add_subcommand("sw-check", "basic-class square bookkeeping");
  add_common(sw);
  auto* all = app.add_subcommand("verify-all", "every suite with the given defaults");
  add_common(all);
  all->add_option("--params", cfg.params_path, "model parameter file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run(app.get_subcommands().front()->get_name(), cfg);
}
