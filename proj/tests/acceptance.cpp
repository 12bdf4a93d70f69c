// End-to-end acceptance battery.  Each check prints one [PASS]/[FAIL] line
// (plus indented evidence where a report is part of the requirement) and the
// process exits nonzero if anything failed, so CI can pin the whole set of
// reproduced results in one run.

#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mubwig/fixtures.hpp"
#include "mubwig/tomo.hpp"

using namespace mubwig;

namespace {

int failures = 0;
std::vector<std::string> detail;

void run(const std::string& name, const std::function<bool()>& body) {
  bool ok = false;
  std::string error;
  detail.clear();
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
  for (const auto& line : detail) std::cout << "       " << line << '\n';
  if (!error.empty()) std::cout << "       threw: " << error << '\n';
  if (!ok) ++failures;
}

const std::vector<std::string>& all_tables() {
  static const std::vector<std::string> ids{"table1", "table2a", "table2b", "table2c",
                                            "table2d", "table2e", "table3", "table4",
                                            "table5",  "table6"};
  return ids;
}

// The 63 cells of the first generator table as printed, frozen independently
// of the library's expansion code.
const char* kPrintedTable1[9][7] = {
    {"ZII", "IIZ", "IZI", "ZIZ", "IZZ", "ZZZ", "ZZI"},
    {"XII", "IXI", "IIX", "XXI", "IXX", "XXX", "XIX"},
    {"YII", "IXZ", "IZX", "YXZ", "IYY", "YYY", "YZX"},
    {"XIZ", "IYI", "ZIY", "XYZ", "ZYY", "YYX", "YIX"},
    {"XZI", "ZXZ", "IZY", "YYZ", "ZYX", "YXX", "XIY"},
    {"YIZ", "IYZ", "ZZY", "YYI", "ZXX", "XXY", "XZX"},
    {"XZZ", "ZYZ", "ZZX", "YXI", "IXY", "XYX", "YIY"},
    {"YZZ", "ZYI", "ZIX", "XXZ", "IYX", "YXY", "XZY"},
    {"YZI", "ZXI", "IIY", "XYI", "ZXY", "XYY", "YZY"},
};

GeneratorTable expand(const std::string& id) {
  return expand_seed(parse_seed(fixtures::seed_fixture(id).text));
}

std::string cell(const std::string& grid, int row_from_top, int col) {
  std::istringstream in(grid);
  std::string line;
  for (int r = 0; r <= row_from_top; ++r) std::getline(in, line);
  std::istringstream cells(line);
  std::string tok;
  for (int c = 0; c <= col; ++c) cells >> tok;
  return tok;
}

}  // namespace

int main() {
  const Field f(3);
  const TranslationMap tmap(f);
  auto el = [&](int k) { return f.primitive_pow(k); };

  run("field: self-dual expansions of 1, u, u^2, u^4 and the Gram matrix", [&] {
    bool ok = true;
    auto sum3 = [&](int a, int b, int c) { return f.add(f.add(el(a), el(b)), el(c)); };
    ok &= sum3(3, 5, 6) == f.one();
    ok &= f.add(el(5), el(6)) == el(1);
    ok &= f.add(el(3), el(5)) == el(2);
    ok &= f.add(el(3), el(6)) == el(4);
    auto basis = default_self_dual_basis(f);
    ok &= basis == std::vector<FieldElement>{el(3), el(5), el(6)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        ok &= f.trace(f.mul(basis[i], basis[j])) == (i == j ? 1 : 0);
    return ok;
  });

  run("tables: seed expansion reproduces all 63 printed cells", [&] {
    GeneratorTable t = expand("table1");
    int good = 0;
    for (int r = 0; r < 9; ++r)
      for (int c = 0; c < 7; ++c)
        good += same_class(t.rows[r][c], parse_pauli(kPrintedTable1[r][c]));
    detail.push_back(std::to_string(good) + "/63 cells match");
    return good == 63;
  });

  run("mub: every fixture passes unbiasedness on all 2304 overlaps", [&] {
    bool ok = true;
    for (const auto& id : all_tables()) {
      MubReport rep = verify_mub(table_bases(expand(id)));
      ok &= rep.pass && rep.pairs == 2304 && rep.max_dev <= 1e-12 && rep.max_self_dev <= 1e-12;
      if (!rep.pass) detail.push_back(id + " failed, dev " + std::to_string(rep.max_dev));
    }
    return ok;
  });

  run("structure: entanglement signatures match the published labels", [&] {
    bool ok = true;
    for (const auto& id : all_tables()) {
      std::string want = id == "table3" || id == "table4" ? "(3,0,6)"
                         : id == "table5"                 ? "(1,6,2)"
                         : id == "table6"                 ? "(0,9,0)"
                                                          : "(2,3,4)";
      std::string got = signature_string(structure_signature(expand(id)));
      if (got != want) {
        detail.push_back(id + ": got " + got + ", want " + want);
        ok = false;
      }
    }
    return ok;
  });

  run("figures: pinned grids exact; geometry and diff reports for the rest", [&] {
    bool ok = true;
    // Byte-exact requirements.
    auto exact = [&](const std::string& fig_id, bool displaced) {
      auto fig = fixtures::figure_fixture(fig_id);
      auto st = table_striations(expand(fig.table_id), tmap);
      std::optional<PhasePoint> d;
      if (displaced) d = PhasePoint{f.parse(fig.alpha), f.parse(fig.beta)};
      bool match = render_grid(st, tmap, GridLabels::paper, d) == fig.grid;
      detail.push_back(fig_id + ": " + (match ? "64/64 exact" : "MISMATCH"));
      return match;
    };
    ok &= exact("fig1", false);
    ok &= exact("fig3-left", false);
    ok &= exact("fig3-right", true);
    auto fig1 = fixtures::figure_fixture("fig1").grid;
    ok &= fig1.substr(fig1.size() - 16) == "o 1 1 1 1 1 1 1\n";
    ok &= cell(fig1, 0, 4) == "4";  // (u^3, u^6)

    // Geometry invariants hold for every fixture table.
    for (const auto& id : all_tables()) {
      GeometryReport geo = verify_geometry(table_striations(expand(id), tmap), tmap);
      if (!geo.pass) {
        detail.push_back(id + " geometry: " + geo.failures.front());
        ok = false;
      }
    }

    // Cell-level diff report; residuals must stay inside the known-suspect
    // row (beta = u^3 of the fourth two-axis variant).
    for (const char* fig_id : {"fig2-left", "fig2-right", "fig4", "fig5", "fig6"}) {
      auto fig = fixtures::figure_fixture(fig_id);
      std::string ours = render_grid(table_striations(expand(fig.table_id), tmap), tmap);
      GridDiff diff = diff_grids(ours, fig.grid, tmap);
      std::ostringstream line;
      line << fig_id << ": " << diff.matches << "/64 raw, " << diff.relabeled_matches
           << "/64 after relabeling, " << diff.residual.size() << " suspected typo(s)";
      detail.push_back(line.str());
      for (const auto& r : diff.residual) detail.push_back("  suspected typo " + r);
      for (const auto& r : diff.residual)
        if (r.find(",u^3)") == std::string::npos) ok = false;  // outside the known row
      if (std::string(fig_id) != "fig2-right" && !diff.residual.empty()) ok = false;
    }
    return ok;
  });

  run("curves: implicit/explicit forms verified, printed typos confirmed", [&] {
    bool ok = true;
    Curve c3 = curve_from_row(expand("table1").rows[2], tmap);
    ok &= count_implicit_misses(c3, {el(1), f.one(), el(1)}, f) == 0;
    CurveFormReport r3 = fit_curve_forms(c3, f);
    ok &= r3.fitted && r3.fitted->c1 == el(6) && r3.fitted->c2 == el(3) && r3.fitted->c4 == el(5);
    // Printed parametric form: k = 1 must land off the curve (on ray 5).
    auto orbit = parametric_orbit({{el(3), el(5), el(6)}, {el(2), f.one(), el(4)}}, f);
    bool off_curve = false;
    for (size_t i = 0; i < orbit.size(); ++i)
      if (f.elements()[i] == f.one()) {
        off_curve = true;
        for (const auto& p : c3.points) off_curve &= !(p == orbit[i]);
        detail.push_back("third curve, parametric k=1 lands at (" + f.str(orbit[i].alpha) +
                         "," + f.str(orbit[i].beta) + "), off the curve: " +
                         (off_curve ? "confirmed inconsistent" : "NOT confirmed"));
      }
    ok &= off_curve;

    GeneratorTable t5 = expand("table5");
    Curve c1 = curve_from_row(t5.rows[1], tmap);
    ok &= count_implicit_misses(c1, {el(4), el(3), el(2)}, f) == 0;
    std::set<int> orbit_idx, curve_idx;
    for (const auto& p : parametric_orbit({{f.zero(), f.zero(), el(2)}, {el(2), f.one(), el(1)}}, f))
      orbit_idx.insert(tmap.point_index(p));
    for (const auto& p : c1.points) curve_idx.insert(tmap.point_index(p));
    ok &= orbit_idx == curve_idx;
    int printed_misses = count_explicit_misses(c1, {el(3), el(5), el(6)}, f);
    CurveFormReport r1 = fit_curve_forms(c1, f);
    ok &= printed_misses > 0 && r1.fitted && r1.fitted->c1 == el(6) && r1.fitted->c2 == el(5) &&
          r1.fitted->c4 == el(6);
    detail.push_back("first curve of the (1,6,2) table: printed explicit form misses " +
                     std::to_string(printed_misses) + " points; fit gives {u^6 a, u^5 a^2, u^6 a^4}");

    Curve c6 = curve_from_row(t5.rows[6], tmap);
    int at_zero = 0, at_u4 = 0;
    for (const auto& p : c6.points) {
      at_zero += p.beta == f.zero();
      at_u4 += p.beta == el(4);
    }
    ok &= at_zero == 4 && at_u4 == 4;
    return ok;
  });

  run("wigner: point-operator identities, normalization, inversion, overlaps", [&] {
    MubSystem sys = load_system("table1");
    QuantumNet net = default_net(sys);
    auto ops = all_point_operators(net);
    bool ok = ops.size() == 64;
    for (int p = 0; p < 64 && ok; ++p) {
      ok &= std::abs(ops[p].trace().real() - 1.0) <= 1e-12;
      for (int q = 0; q < 64; ++q)
        ok &= std::abs((ops[p] * ops[q]).trace().real() - (p == q ? 8.0 : 0.0)) <= 1e-12;
    }
    Rng rng(1001);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      Matrix rho = trial % 2 ? random_mixed(rng, 8) : random_pure(rng, 8);
      WignerTable w = wigner(rho, net);
      ok &= std::abs(w.sum() - 1.0) <= 1e-12;
      ok &= max_abs(Matrix(invert_wigner(w, net) - rho)) <= 1e-12;
    }
    for (int trial = 0; trial < 50 && ok; ++trial) {
      Matrix a = random_mixed(rng, 8), b = random_pure(rng, 8);
      WignerTable wa = wigner(a, net), wb = wigner(b, net);
      double cross = 0;
      for (int i = 0; i < 64; ++i) cross += wa.values[i] * wb.values[i];
      ok &= std::abs((a * b).trace().real() - 8.0 * cross) <= 1e-12;
    }
    return ok;
  });

  run("covariance: displaced states give rigidly displaced W everywhere", [&] {
    MubSystem sys = load_system("table1");
    QuantumNet net = default_net(sys);
    Rng rng(2002);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix rho = random_mixed(rng, 8);
      for (const auto& v : sys.map.all_points())
        if (!check_covariance(net, v, rho, 1e-12)) return false;
    }
    return true;
  });

  run("marginals: every line sum is the corresponding Born probability", [&] {
    Rng rng(3003);
    for (const auto& id : all_tables()) {
      MubSystem sys = load_system(id);
      QuantumNet net = default_net(sys);
      for (int trial = 0; trial < 20; ++trial) {
        Matrix rho = random_mixed(rng, 8);
        WignerTable w = wigner(rho, net);
        for (int k = 0; k < sys.rows(); ++k)
          for (int li = 0; li < sys.dim(); ++li) {
            const Matrix& proj = sys.bases[k].projectors[net.line_state[k][li]];
            if (std::abs(marginal(w, net, k, li) - (rho * proj).trace().real()) > 1e-12)
              return false;
          }
      }
    }
    return true;
  });

  run("search: one double-axis class, two single/double classes", [&] {
    SeedSearch a = enumerate_seeds(SeedPattern::single_single);
    std::set<std::string> members;
    for (const auto& cls : a.classes)
      for (const auto& seed : cls.members) members.insert(format_seed(seed));
    std::set<std::string> expected;
    for (const char* id : {"table1", "table2a", "table2b", "table2c", "table2d", "table2e"})
      expected.insert(fixtures::seed_fixture(id).text);
    bool ok = a.classes.size() == 1 && members == expected;
    detail.push_back("two-single-axis pattern: " + std::to_string(a.classes.size()) +
                     " equivalence class (" + std::to_string(a.valid.size()) + " valid seeds)");

    SeedSearch b = enumerate_seeds(SeedPattern::double_single);
    std::string key3 = table_equivalence_key(expand("table3"));
    std::string key4 = table_equivalence_key(expand("table4"));
    bool found3 = false, found4 = false;
    for (const auto& cls : b.classes) {
      found3 |= cls.canonical_key == key3;
      found4 |= cls.canonical_key == key4;
    }
    ok &= b.classes.size() == 2 && found3 && found4 && key3 != key4;
    detail.push_back("one-double-entry pattern: " + std::to_string(b.classes.size()) +
                     " equivalence classes (" + std::to_string(b.valid.size()) + " valid seeds)");
    return ok;
  });

  run("nets: exhaustive counts for one and two qubits, formulas for three", [&] {
    NetCount one = count_nets(1), two = count_nets(2), three = count_nets(3);
    detail.push_back("n=1: " + std::to_string(one.total) + " nets, " + std::to_string(one.classes) +
                     " classes of " + std::to_string(one.class_size) + " (exhaustive)");
    detail.push_back("n=2: " + std::to_string(two.total) + " nets, " + std::to_string(two.classes) +
                     " classes of " + std::to_string(two.class_size) + " (exhaustive)");
    detail.push_back("n=3: " + std::to_string(three.total) + " nets, " +
                     std::to_string(three.classes) + " classes of " +
                     std::to_string(three.class_size) + " (by formula)");
    return one.verified && one.total == 8 && one.classes == 2 && one.class_size == 4 &&
           two.verified && two.total == 1024 && two.classes == 64 && two.class_size == 16 &&
           !three.verified && three.total == 134217728 && three.classes == 2097152 &&
           three.class_size == 64;
  });

  run("tomography: exact inversion everywhere; error scales like 1/sqrt(shots)", [&] {
    Rng rng(4004);
    for (const auto& id : all_tables()) {
      MubSystem sys = load_system(id);
      QuantumNet net = default_net(sys);
      Matrix rho = random_mixed(rng, 8);
      Reconstruction rec = reconstruct_probabilities(born_probabilities(rho, sys), net);
      if (max_abs(Matrix(rec.rho - rho)) > 1e-12) {
        detail.push_back(id + ": exact reconstruction off");
        return false;
      }
    }
    MubSystem sys = load_system("table1");
    ScalingReport rep = scaling_experiment(random_pure(rng, 8), sys, {1000, 10000, 100000}, 55);
    std::ostringstream line;
    line << "fitted error slope " << rep.slope << " (target -0.5 +/- 0.15), rng " << rep.rng;
    detail.push_back(line.str());
    return std::abs(rep.slope + 0.5) <= 0.15;
  });

  run("factorizability: probe self-check passes, scan finds no product operator", [&] {
    MubSystem sys = load_system("table1");
    FactorSearchReport rep = search_factorizable(sys, 100, 909);
    std::ostringstream line;
    line << "self-check " << (rep.self_check_pass ? "ok" : "FAILED") << "; " << rep.nets_tested
         << " nets, " << rep.points_tested << " point operators, " << rep.hits
         << " factorizable (open question stays open)";
    detail.push_back(line.str());
    for (const auto& note : rep.notes) detail.push_back("  hit: " + note);
    return rep.self_check_pass && rep.hits == 0;
  });

  std::cout << (failures ? "FAILURES: " : "all criteria passed: ") << (13 - failures) << "/13\n";
  return failures ? 1 : 0;
}
