// Command-line frontend for the mubwig library.
//
// Subcommands cover the full pipeline: field arithmetic (field-show), basis
// tables (mub-build, mub-verify, mub-classify, seed-search), phase-space
// geometry (phase-render, figures-diff), Wigner machinery (wigner-compute,
// wigner-invert, covariance-check, nets-count), and sampling experiments
// (tomo-run).  Exit codes: 0 success, 1 verification failure, 2 usage error
// (bad flags or malformed input).  All commands are read-only except for the
// optional --out target.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mubwig/dense.hpp"
#include "mubwig/field.hpp"
#include "mubwig/fixtures.hpp"
#include "mubwig/mubtab.hpp"
#include "mubwig/pauli.hpp"
#include "mubwig/phasespace.hpp"
#include "mubwig/rng.hpp"
#include "mubwig/system.hpp"
#include "mubwig/tomo.hpp"
#include "mubwig/wigner.hpp"

using json = nlohmann::ordered_json;
using namespace mubwig;

namespace {

// ---------------------------------------------------------------- utilities

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Empty path means stdout; a bad --out target is treated as a usage error.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + out_path + "' for writing");
  out << text;
}

std::string fmt_num(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Seed fixture id first, then a file on disk; mirrors load_system's lookup.
std::string resolve_seed_text(const std::string& spec, std::string* label) {
  try {
    const auto& s = fixtures::seed_fixture(spec);
    if (label) *label = s.id;
    return s.text;
  } catch (const std::invalid_argument&) {
  }
  if (!std::filesystem::exists(spec))
    throw std::invalid_argument("'" + spec + "' is neither a seed fixture nor a readable file");
  if (label) *label = spec;
  return slurp(spec);
}

// "default", a file of whitespace/comma-separated ray indices, or the same
// list given inline.  '#' starts a comment that runs to end of line.
QuantumNet parse_net_spec(const std::string& spec, const MubSystem& sys) {
  if (spec == "default") return default_net(sys);
  std::string text = std::filesystem::exists(spec) ? slurp(spec) : spec;
  std::vector<int> assign;
  std::string tok;
  bool comment = false;
  auto flush = [&] {
    if (tok.empty()) return;
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad net entry '" + tok + "'");
    assign.push_back(v);
    tok.clear();
  };
  for (char c : text) {
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == '#') {
      comment = true;
      flush();
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return build_net(sys, assign);  // validates count and range
}

// Named states are density matrices over the computational basis; files hold
// {"real": [[...]], "imag": [[...]]} with imag optional.
Matrix parse_state_spec(const std::string& spec, const MubSystem& sys) {
  const int d = sys.dim();
  if (spec == "mixed") return Matrix::Identity(d, d) / static_cast<double>(d);
  if (spec == "up") {
    Matrix m = Matrix::Zero(d, d);
    m(0, 0) = 1.0;
    return m;
  }
  if (spec == "ghz") {
    CVector v = CVector::Zero(d);
    v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
    return v * v.adjoint();
  }
  if (spec.rfind("basis:", 0) == 0) {
    size_t colon = spec.find(':', 6);
    if (colon == std::string::npos)
      throw std::invalid_argument("expected basis:ROW:STATE, got '" + spec + "'");
    int row = std::stoi(spec.substr(6, colon - 6));
    if (row < 1 || row > sys.rows())
      throw std::invalid_argument("basis row out of range in '" + spec + "'");
    std::string which = spec.substr(colon + 1);
    int j = -1;
    if (!which.empty() && which.find_first_not_of("+-") == std::string::npos) {
      if (static_cast<int>(which.size()) != sys.n())
        throw std::invalid_argument("sign string in '" + spec + "' must have one +/- per generator");
      j = 0;
      for (int i = 0; i < sys.n(); ++i)
        if (which[i] == '-') j |= 1 << (sys.n() - 1 - i);
    } else {
      j = std::stoi(which);
    }
    if (j < 0 || j >= d) throw std::invalid_argument("basis state out of range in '" + spec + "'");
    return sys.bases[row - 1].projectors[j];
  }
  if (spec.rfind("random:", 0) == 0) {
    Rng rng(std::stoull(spec.substr(7)));
    return random_mixed(rng, d);
  }
  json j;
  try {
    j = json::parse(slurp(spec));
  } catch (const json::exception& e) {
    throw std::invalid_argument("state file '" + spec + "': " + e.what());
  }
  if (!j.contains("real")) throw std::invalid_argument("state file '" + spec + "' lacks \"real\"");
  Matrix m = Matrix::Zero(d, d);
  auto fill = [&](const json& part, bool imag) {
    if (static_cast<int>(part.size()) != d)
      throw std::invalid_argument("state file '" + spec + "': expected " + std::to_string(d) +
                                  " rows");
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(part[r].size()) != d)
        throw std::invalid_argument("state file '" + spec + "': ragged row");
      for (int c = 0; c < d; ++c)
        m(r, c) += imag ? Cplx(0, part[r][c].get<double>()) : Cplx(part[r][c].get<double>(), 0);
    }
  };
  fill(j["real"], false);
  if (j.contains("imag")) fill(j["imag"], true);
  return m;
}

std::optional<PhasePoint> parse_displacement(const std::string& spec, const Field& f) {
  if (spec.empty()) return std::nullopt;
  size_t comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected --displacement ALPHA,BETA, got '" + spec + "'");
  return PhasePoint{f.parse(spec.substr(0, comma)), f.parse(spec.substr(comma + 1))};
}

std::string seed_one_line(const SeedTable& seed) {
  std::string two = format_seed(seed);  // "A B C\nD E F\n"
  while (!two.empty() && two.back() == '\n') two.pop_back();
  size_t nl = two.find('\n');
  return two.substr(0, nl) + " / " + two.substr(nl + 1);
}

std::string grid_to_csv(const std::string& grid) {
  std::string out;
  for (char c : grid) out.push_back(c == ' ' ? ',' : c);
  return out;
}

json grid_to_json(const std::string& grid) {
  json rows = json::array();
  std::istringstream in(grid);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

json matrix_part(const Matrix& m, bool imag) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_block(const Matrix& m, bool imag) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      double v = imag ? m(r, c).imag() : m(r, c).real();
      out += (c ? " " : "  ") + fmt_num("% .6f", v);
    }
    out += "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-qubit mutually unbiased bases, discrete phase space, and Wigner functions"};
  app.require_subcommand(1);
  int rc = 0;

  auto add_format = [](CLI::App* sc, std::string* fmt, std::initializer_list<std::string> allowed) {
    std::string help = "output format:";
    for (const auto& a : allowed) help += " " + a;
    sc->add_option("--format", *fmt, help)
        ->check(CLI::IsMember(std::vector<std::string>(allowed)))
        ->capture_default_str();
  };

  // ------------------------------------------------------------- field-show
  struct {
    int n = 3;
    std::string poly, format = "text", out;
  } fs;
  auto* sc_field = app.add_subcommand("field-show", "print a field's elements, traces, and self-dual basis");
  auto* fs_n = sc_field->add_option("--n", fs.n, "field degree")->check(CLI::Range(1, 8))->capture_default_str();
  sc_field->add_option("--poly", fs.poly, "modulus bits, most significant first (e.g. 1011)");
  add_format(sc_field, &fs.format, {"text", "csv", "structured"});
  sc_field->add_option("--out", fs.out, "write output to this file instead of stdout");
  sc_field->callback([&] {
    Field f = fs.poly.empty() ? Field(fs.n) : Field::from_modulus_string(fs.poly);
    if (!fs.poly.empty() && fs_n->count() && f.degree() != fs.n)
      throw std::invalid_argument("--n disagrees with the degree of --poly");
    std::vector<FieldElement> sd;
    std::string sd_note;
    if (f.degree() <= 5) {
      try {
        sd = default_self_dual_basis(f);
      } catch (const std::logic_error&) {
        sd_note = "none";
      }
    } else {
      sd_note = "search skipped for degree > 5";
    }
    auto bits_str = [&](FieldElement a) {
      std::string s(f.degree(), '0');
      for (int i = 0; i < f.degree(); ++i)
        if (a.bits >> i & 1) s[f.degree() - 1 - i] = '1';
      return s;
    };
    auto sd_coeffs = [&](FieldElement a) {
      std::string s;
      for (const auto& d : sd) s.push_back(f.trace(f.mul(a, d)) ? '1' : '0');
      return s;
    };
    if (fs.format == "structured") {
      json j;
      j["degree"] = f.degree();
      j["modulus"] = f.modulus_string();
      j["primitive"] = f.str(f.primitive());
      json els = json::array();
      for (const auto& a : f.elements()) {
        json e;
        e["bits"] = bits_str(a);
        auto dl = f.dlog(a);
        if (dl) e["power"] = *dl;
        e["name"] = f.str(a);
        e["trace"] = f.trace(a);
        if (!sd.empty()) e["self_dual_coeffs"] = sd_coeffs(a);
        els.push_back(e);
      }
      j["elements"] = els;
      if (!sd.empty()) {
        json names = json::array();
        for (const auto& d : sd) names.push_back(f.str(d));
        j["self_dual_basis"] = names;
      } else {
        j["self_dual_basis"] = sd_note;
      }
      emit(fs.out, j.dump(2) + "\n");
      return;
    }
    if (fs.format == "csv") {
      std::string out = "bits,power,name,trace";
      if (!sd.empty()) out += ",self_dual_coeffs";
      out += "\n";
      for (const auto& a : f.elements()) {
        auto dl = f.dlog(a);
        out += bits_str(a) + "," + (dl ? std::to_string(*dl) : "") + "," + f.str(a) + "," +
               std::to_string(f.trace(a));
        if (!sd.empty()) out += "," + sd_coeffs(a);
        out += "\n";
      }
      emit(fs.out, out);
      return;
    }
    std::ostringstream out;
    out << "GF(2^" << f.degree() << ")  modulus " << f.modulus_string() << "  primitive element "
        << f.str(f.primitive()) << "\n";
    const int bw = std::max(5, f.degree());
    char line[96];
    std::snprintf(line, sizeof line, " %-*s %6s  %-5s %s\n", bw, "bits", "power", "name", "trace");
    out << line;
    for (const auto& a : f.elements()) {
      auto dl = f.dlog(a);
      std::snprintf(line, sizeof line, " %-*s %6s  %-5s %d\n", bw, bits_str(a).c_str(),
                    dl ? std::to_string(*dl).c_str() : "-", f.str(a).c_str(), f.trace(a));
      out << line;
    }
    if (sd.empty()) {
      out << "self-dual basis: " << sd_note << "\n";
    } else {
      out << "self-dual basis:";
      for (const auto& d : sd) out << ' ' << f.str(d);
      out << "\nexpansions over the self-dual basis:\n";
      for (const auto& a : f.elements()) {
        if (a.bits == 0) continue;
        out << "  " << f.str(a) << " =";
        bool first = true;
        for (const auto& d : sd)
          if (f.trace(f.mul(a, d))) {
            out << (first ? " " : " + ") << f.str(d);
            first = false;
          }
        out << "\n";
      }
    }
    emit(fs.out, out.str());
  });

  // -------------------------------------------------------------- mub-build
  struct {
    std::string table = "table1", format = "text", out;
  } mb;
  auto* sc_build = app.add_subcommand("mub-build", "expand a seed into its full 9x7 generator table");
  sc_build->add_option("--table", mb.table, "seed fixture id or seed file")->capture_default_str();
  add_format(sc_build, &mb.format, {"text", "csv", "structured"});
  sc_build->add_option("--out", mb.out, "write output to this file instead of stdout");
  sc_build->callback([&] {
    MubSystem sys = load_system(mb.table);
    if (mb.format == "structured") {
      json j;
      j["table"] = sys.label;
      json rows = json::array();
      for (const auto& row : sys.table.rows) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(format_pauli(cell));
        rows.push_back(r);
      }
      j["rows"] = rows;
      emit(mb.out, j.dump(2) + "\n");
      return;
    }
    const char sep = mb.format == "csv" ? ',' : ' ';
    std::string out;
    for (const auto& row : sys.table.rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        if (c) out.push_back(sep);
        out += format_pauli(row[c]);
      }
      out.push_back('\n');
    }
    emit(mb.out, out);
  });

  // ------------------------------------------------------------- mub-verify
  struct {
    std::string table = "table1", format = "text", out;
  } mv;
  auto* sc_verify = app.add_subcommand("mub-verify", "check a table: group structure, unbiasedness, geometry");
  sc_verify->add_option("--table", mv.table, "seed fixture id or seed file")->capture_default_str();
  add_format(sc_verify, &mv.format, {"text", "structured"});
  sc_verify->add_option("--out", mv.out, "write output to this file instead of stdout");
  sc_verify->callback([&] {
    std::string label;
    std::string seed_text = resolve_seed_text(mv.table, &label);
    SeedTable seed = parse_seed(seed_text);

    std::vector<std::string> failures;
    bool pass = true;
    MubReport mub{};
    GeometryReport geo{};
    long long cells = 0;
    try {
      GeneratorTable table = expand_seed(seed);
      cells = static_cast<long long>(table.rows.size()) * table.rows[0].size();
      TableCheck tc = validate_table(table);
      if (!tc.pass) {
        pass = false;
        failures = tc.failures;
      } else {
        MubSystem sys = make_system(table, label);
        mub = verify_mub(sys.bases);
        geo = verify_geometry(sys.striations, sys.map);
        if (!mub.pass) pass = false;
        if (!geo.pass) {
          pass = false;
          failures.insert(failures.end(), geo.failures.begin(), geo.failures.end());
        }
      }
    } catch (const std::invalid_argument& e) {
      pass = false;
      failures.push_back(e.what());
    }

    if (mv.format == "structured") {
      json j;
      j["table"] = label;
      j["pass"] = pass;
      j["cells"] = cells;
      j["cross_pairs"] = mub.pairs;
      j["max_unbiasedness_deviation"] = mub.max_dev;
      j["max_orthonormality_defect"] = mub.max_self_dev;
      j["geometry_pass"] = geo.pass;
      j["failures"] = failures;
      emit(mv.out, j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "table " << label << "\n";
      if (cells) out << "cells: " << cells << " generator entries\n";
      if (mub.pairs)
        out << "unbiasedness: " << (mub.pass ? "pass" : "FAIL") << " (" << mub.pairs
            << " cross-basis pairs, worst deviation " << fmt_num("%.3e", mub.max_dev)
            << ", worst orthonormality defect " << fmt_num("%.3e", mub.max_self_dev) << ")\n";
      if (mub.pairs)
        out << "geometry: " << (geo.pass ? "pass" : "FAIL")
            << " (striations tile the grid, cross-striation lines meet exactly once)\n";
      const size_t show = std::min<size_t>(failures.size(), 8);
      for (size_t i = 0; i < show; ++i) out << "  failure: " << failures[i] << "\n";
      if (failures.size() > show) out << "  ... and " << failures.size() - show << " more\n";
      out << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
      emit(mv.out, out.str());
    }
    if (!pass) rc = 1;
  });

  // ----------------------------------------------------------- mub-classify
  struct {
    std::string table = "table1", format = "text", out;
  } mc;
  auto* sc_classify = app.add_subcommand("mub-classify", "entanglement signature of a table's bases");
  sc_classify->add_option("--table", mc.table, "seed fixture id or seed file")->capture_default_str();
  add_format(sc_classify, &mc.format, {"text", "csv", "structured"});
  sc_classify->add_option("--out", mc.out, "write output to this file instead of stdout");
  sc_classify->callback([&] {
    MubSystem sys = load_system(mc.table);
    auto sig = structure_signature(sys.table);
    if (mc.format == "text") {
      emit(mc.out, signature_string(sig) + "\n");
      return;
    }
    std::vector<const char*> row_class;
    for (const auto& basis : sys.bases) row_class.push_back(to_string(classify_separability(basis)));
    if (mc.format == "csv") {
      std::string out = "row,separability\n";
      for (size_t r = 0; r < row_class.size(); ++r)
        out += std::to_string(r + 1) + "," + row_class[r] + "\n";
      emit(mc.out, out);
      return;
    }
    json j;
    j["table"] = sys.label;
    j["signature"] = signature_string(sig);
    json rows = json::array();
    for (size_t r = 0; r < row_class.size(); ++r)
      rows.push_back({{"row", r + 1}, {"separability", row_class[r]}});
    j["rows"] = rows;
    emit(mc.out, j.dump(2) + "\n");
  });

  // ------------------------------------------------------------ seed-search
  struct {
    std::string pattern = "single-single", format = "text", out;
  } ss;
  auto* sc_search = app.add_subcommand("seed-search", "enumerate valid seeds of a pattern and group them");
  sc_search->add_option("--pattern", ss.pattern, "seed shape")
      ->check(CLI::IsMember({"single-single", "double-single"}))
      ->capture_default_str();
  add_format(sc_search, &ss.format, {"text", "csv", "structured"});
  sc_search->add_option("--out", ss.out, "write output to this file instead of stdout");
  sc_search->callback([&] {
    SeedPattern pat =
        ss.pattern == "single-single" ? SeedPattern::single_single : SeedPattern::double_single;
    SeedSearch search = enumerate_seeds(pat);
    std::vector<std::string> class_sigs;
    for (const auto& cls : search.classes)
      class_sigs.push_back(signature_string(structure_signature(expand_seed(cls.members.front()))));
    if (ss.format == "structured") {
      json j;
      j["pattern"] = ss.pattern;
      j["valid_seeds"] = search.valid.size();
      j["equivalence_classes"] = search.classes.size();
      json classes = json::array();
      for (size_t k = 0; k < search.classes.size(); ++k) {
        json c;
        c["signature"] = class_sigs[k];
        c["key"] = search.classes[k].canonical_key;
        json members = json::array();
        for (const auto& m : search.classes[k].members) members.push_back(seed_one_line(m));
        c["members"] = members;
        classes.push_back(c);
      }
      j["classes"] = classes;
      emit(ss.out, j.dump(2) + "\n");
      return;
    }
    if (ss.format == "csv") {
      std::string out = "class,signature,member\n";
      for (size_t k = 0; k < search.classes.size(); ++k)
        for (const auto& m : search.classes[k].members)
          out += std::to_string(k + 1) + "," + class_sigs[k] + "," + seed_one_line(m) + "\n";
      emit(ss.out, out);
      return;
    }
    std::ostringstream out;
    out << search.classes.size() << " equivalence class" << (search.classes.size() == 1 ? "" : "es")
        << "\n";
    out << "valid seeds: " << search.valid.size() << "\n";
    for (size_t k = 0; k < search.classes.size(); ++k) {
      out << "class " << k + 1 << " (" << search.classes[k].members.size() << " members, signature "
          << class_sigs[k] << "):\n";
      for (const auto& m : search.classes[k].members) out << "  " << seed_one_line(m) << "\n";
    }
    emit(ss.out, out.str());
  });

  // ----------------------------------------------------------- phase-render
  struct {
    std::string table = "table1", labels = "paper", displacement, format = "text", out;
  } pr;
  auto* sc_render = app.add_subcommand("phase-render", "draw a table's striation labels on the phase-space grid");
  sc_render->add_option("--table", pr.table, "seed fixture id or seed file")->capture_default_str();
  sc_render->add_option("--labels", pr.labels, "label convention: paper (rows 1,2 print 2,1) or by-row")
      ->check(CLI::IsMember({"paper", "by-row"}))
      ->capture_default_str();
  sc_render->add_option("--displacement", pr.displacement,
                        "shift every curve by ALPHA,BETA (field elements, e.g. 0,u^3)");
  add_format(sc_render, &pr.format, {"text", "csv", "structured"});
  sc_render->add_option("--out", pr.out, "write output to this file instead of stdout");
  sc_render->callback([&] {
    MubSystem sys = load_system(pr.table);
    auto disp = parse_displacement(pr.displacement, *sys.field);
    GridLabels labels = pr.labels == "paper" ? GridLabels::paper : GridLabels::by_row;
    std::string grid = render_grid(sys.striations, sys.map, labels, disp);
    if (pr.format == "structured") {
      json j;
      j["table"] = sys.label;
      j["labels"] = pr.labels;
      j["displacement"] = disp ? sys.field->str(disp->alpha) + "," + sys.field->str(disp->beta)
                               : "none";
      j["grid"] = grid_to_json(grid);
      emit(pr.out, j.dump(2) + "\n");
    } else {
      emit(pr.out, pr.format == "csv" ? grid_to_csv(grid) : grid);
    }
  });

  // ---------------------------------------------------------- wigner-compute
  struct {
    std::string table = "table1", net = "default", state = "up", format = "text", out;
  } wc;
  auto* sc_wigner = app.add_subcommand("wigner-compute", "Wigner function of a state over a quantum net");
  sc_wigner->add_option("--table", wc.table, "seed fixture id or seed file")->capture_default_str();
  sc_wigner->add_option("--net", wc.net, "'default', a file of 9 ray indices, or an inline list")
      ->capture_default_str();
  sc_wigner
      ->add_option("--state", wc.state,
                   "up | mixed | ghz | basis:ROW:STATE | random:SEED | JSON file with real/imag")
      ->capture_default_str();
  add_format(sc_wigner, &wc.format, {"text", "csv", "structured"});
  sc_wigner->add_option("--out", wc.out, "write output to this file instead of stdout");
  sc_wigner->callback([&] {
    MubSystem sys = load_system(wc.table);
    QuantumNet net = parse_net_spec(wc.net, sys);
    Matrix rho = parse_state_spec(wc.state, sys);
    WignerTable w = wigner(rho, net);
    std::string meta = "table=" + sys.label + " net=" + wc.net + " state=" + wc.state;
    if (wc.format == "structured") {
      json j;
      j["table"] = sys.label;
      j["net"] = wc.net;
      j["state"] = wc.state;
      j["sum"] = w.sum();
      json rows = json::array();  // bottom row (beta = 0) first, alpha ascending
      const int d = sys.dim();
      for (int r = 0; r < d; ++r) {
        json row = json::array();
        for (int c = 0; c < d; ++c) row.push_back(w.values[r * d + c]);
        rows.push_back(row);
      }
      j["rows_bottom_first"] = rows;
      emit(wc.out, j.dump(2) + "\n");
      return;
    }
    if (wc.format == "csv") {
      emit(wc.out, "# " + meta + "\n" + wigner_csv(w, sys));
      return;
    }
    const int d = sys.dim();
    std::ostringstream out;
    out << "# " << meta << "\n";
    out << "# rows beta = " << sys.field->str(sys.map.axis_element(d - 1))
        << " (top) down to 0, columns alpha = 0, 1, u, ...\n";
    for (int r = d - 1; r >= 0; --r) {
      for (int c = 0; c < d; ++c) out << (c ? " " : "") << fmt_num("% .7f", w.values[r * d + c]);
      out << "\n";
    }
    out << "sum: " << fmt_num("%.12g", w.sum()) << "\n";
    emit(wc.out, out.str());
  });

  // ----------------------------------------------------------- wigner-invert
  struct {
    std::string table = "table1", net = "default", wigner_file, format = "text", out;
  } wi;
  auto* sc_invert = app.add_subcommand("wigner-invert", "rebuild the density matrix from a Wigner table");
  sc_invert->add_option("--table", wi.table, "seed fixture id or seed file")->capture_default_str();
  sc_invert->add_option("--net", wi.net, "'default', a file of 9 ray indices, or an inline list")
      ->capture_default_str();
  sc_invert->add_option("--wigner", wi.wigner_file, "Wigner table file (wigner-compute --format csv)")
      ->required();
  add_format(sc_invert, &wi.format, {"text", "csv", "structured"});
  sc_invert->add_option("--out", wi.out, "write output to this file instead of stdout");
  sc_invert->callback([&] {
    MubSystem sys = load_system(wi.table);
    QuantumNet net = parse_net_spec(wi.net, sys);
    WignerTable w = parse_wigner_csv(slurp(wi.wigner_file), sys);
    Matrix rho = invert_wigner(w, net);
    double tr = rho.trace().real();
    double min_ev = min_eigenvalue(rho);
    if (wi.format == "structured") {
      json j;
      j["table"] = sys.label;
      j["net"] = wi.net;
      j["trace"] = tr;
      j["min_eigenvalue"] = min_ev;
      j["real"] = matrix_part(rho, false);
      j["imag"] = matrix_part(rho, true);
      emit(wi.out, j.dump(2) + "\n");
      return;
    }
    if (wi.format == "csv") {
      std::string out = "# real part\n";
      for (int r = 0; r < rho.rows(); ++r) {
        for (int c = 0; c < rho.cols(); ++c)
          out += (c ? "," : "") + fmt_num("%.17g", rho(r, c).real());
        out += "\n";
      }
      out += "# imaginary part\n";
      for (int r = 0; r < rho.rows(); ++r) {
        for (int c = 0; c < rho.cols(); ++c)
          out += (c ? "," : "") + fmt_num("%.17g", rho(r, c).imag());
        out += "\n";
      }
      emit(wi.out, out);
      return;
    }
    std::ostringstream out;
    out << "table " << sys.label << "  net " << wi.net << "\n";
    out << "trace: " << fmt_num("%.12g", tr) << "\n";
    out << "min eigenvalue: " << fmt_num("%.6g", min_ev) << "\n";
    out << "real part:\n" << matrix_block(rho, false);
    out << "imaginary part:\n" << matrix_block(rho, true);
    emit(wi.out, out.str());
  });

  // -------------------------------------------------------- covariance-check
  struct {
    std::string table = "table1", net = "default", state, format = "text", out;
    int trials = 20;
    uint64_t seed = 2002;
  } cc;
  auto* sc_cov = app.add_subcommand("covariance-check", "displaced states must give rigidly displaced Wigner tables");
  sc_cov->add_option("--table", cc.table, "seed fixture id or seed file")->capture_default_str();
  sc_cov->add_option("--net", cc.net, "'default', a file of 9 ray indices, or an inline list")
      ->capture_default_str();
  sc_cov->add_option("--state", cc.state, "check only this state (default: random mixed states)");
  sc_cov->add_option("--trials", cc.trials, "number of random states when --state is absent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sc_cov->add_option("--seed", cc.seed, "seed for the random states")->capture_default_str();
  add_format(sc_cov, &cc.format, {"text", "structured"});
  sc_cov->add_option("--out", cc.out, "write output to this file instead of stdout");
  sc_cov->callback([&] {
    MubSystem sys = load_system(cc.table);
    QuantumNet net = parse_net_spec(cc.net, sys);
    std::vector<Matrix> states;
    if (!cc.state.empty()) {
      states.push_back(parse_state_spec(cc.state, sys));
    } else {
      for (int t = 0; t < cc.trials; ++t) {
        Rng rng = Rng::derive(cc.seed, t);
        states.push_back(random_mixed(rng, sys.dim()));
      }
    }
    long long checked = 0;
    std::vector<std::string> failures;
    for (size_t t = 0; t < states.size(); ++t)
      for (int vi = 0; vi < sys.points(); ++vi) {
        PhasePoint v = sys.map.point_at(vi);
        ++checked;
        if (!check_covariance(net, v, states[t]))
          failures.push_back("state " + std::to_string(t + 1) + ", v=(" +
                             sys.field->str(v.alpha) + "," + sys.field->str(v.beta) + ")");
      }
    bool pass = failures.empty();
    if (cc.format == "structured") {
      json j;
      j["table"] = sys.label;
      j["net"] = cc.net;
      j["states"] = states.size();
      j["translations"] = sys.points();
      j["checked"] = checked;
      j["pass"] = pass;
      j["failures"] = failures;
      emit(cc.out, j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "table " << sys.label << "  net " << cc.net << "  " << states.size() << " state"
          << (states.size() == 1 ? "" : "s") << " x " << sys.points() << " translations\n";
      if (pass) {
        out << "covariance: pass (" << checked << " displaced tables match rigidly)\n";
      } else {
        out << "covariance: FAIL (" << failures.size() << " of " << checked << " checks)\n";
        for (const auto& fmsg : failures) out << "  " << fmsg << "\n";
      }
      emit(cc.out, out.str());
    }
    if (!pass) rc = 1;
  });

  // -------------------------------------------------------------- nets-count
  struct {
    int n = 3;
    std::string format = "text", out;
  } nc;
  auto* sc_nets = app.add_subcommand("nets-count", "count quantum nets and their translation classes");
  sc_nets->add_option("--n", nc.n, "number of qubits")->check(CLI::Range(1, 3))->capture_default_str();
  add_format(sc_nets, &nc.format, {"text", "csv", "structured"});
  sc_nets->add_option("--out", nc.out, "write output to this file instead of stdout");
  sc_nets->callback([&] {
    NetCount count = count_nets(nc.n);
    if (nc.format == "structured") {
      json j;
      j["n"] = count.n;
      j["total"] = count.total;
      j["classes"] = count.classes;
      j["class_size"] = count.class_size;
      j["verified_exhaustively"] = count.verified;
      emit(nc.out, j.dump(2) + "\n");
    } else if (nc.format == "csv") {
      std::ostringstream out;
      out << "n,total,classes,class_size,verified_exhaustively\n"
          << count.n << ',' << count.total << ',' << count.classes << ',' << count.class_size
          << ',' << (count.verified ? "yes" : "no") << "\n";
      emit(nc.out, out.str());
    } else {
      std::ostringstream out;
      out << "n=" << count.n << ": " << count.total << " quantum nets, " << count.classes
          << " translation class" << (count.classes == 1 ? "" : "es") << " of " << count.class_size
          << (count.verified ? " (verified exhaustively)\n" : " (by formula, not exhaustively verified)\n");
      emit(nc.out, out.str());
    }
  });

  // ---------------------------------------------------------------- tomo-run
  struct {
    std::string table = "table1", net = "default", state = "up", plan, format = "text", out;
    long long shots = 1000;
    uint64_t seed = 1;
    bool compare = false;
  } tr;
  auto* sc_tomo = app.add_subcommand("tomo-run", "simulate basis measurements and reconstruct the state");
  auto* tr_table = sc_tomo->add_option("--table", tr.table, "seed fixture id or seed file")->capture_default_str();
  auto* tr_net = sc_tomo->add_option("--net", tr.net, "'default', a file of 9 ray indices, or an inline list")
                     ->capture_default_str();
  sc_tomo
      ->add_option("--state", tr.state,
                   "up | mixed | ghz | basis:ROW:STATE | random:SEED | JSON file with real/imag")
      ->capture_default_str();
  auto* tr_shots = sc_tomo->add_option("--shots", tr.shots, "shots per basis; 0 = exact probabilities")
                       ->check(CLI::NonNegativeNumber)
                       ->capture_default_str();
  auto* tr_seed = sc_tomo->add_option("--seed", tr.seed, "sampling seed")->capture_default_str();
  auto* tr_plan = sc_tomo->add_option("--plan", tr.plan, "JSON experiment plan (replaces --table/--net/--shots/--seed)");
  tr_plan->excludes(tr_table)->excludes(tr_net)->excludes(tr_shots)->excludes(tr_seed);
  sc_tomo->add_flag("--compare", tr.compare,
                    "run the same budget against the table1/table3/table5/table6 structures");
  add_format(sc_tomo, &tr.format, {"text", "csv", "structured"});
  sc_tomo->add_option("--out", tr.out, "write output to this file instead of stdout");
  sc_tomo->callback([&] {
    ExperimentPlan plan;
    if (!tr.plan.empty()) {
      plan = parse_plan(slurp(tr.plan));
    } else {
      plan.table = tr.table;
      plan.shots = tr.shots;
      plan.seed = tr.seed;
    }
    MubSystem sys = load_system(plan.table);
    Matrix rho = parse_state_spec(tr.state, sys);
    if (tr.compare) {
      StructureReport rep =
          compare_structures(rho, {"table1", "table3", "table5", "table6"}, plan.shots, plan.seed);
      if (tr.format == "structured") {
        emit(tr.out, report_json(rep));
      } else if (tr.format == "csv") {
        std::string out = "table,signature,trace_dist,min_eigenvalue,w_sum\n";
        for (const auto& row : rep.rows)
          out += row.table + "," + row.signature + "," + fmt_num("%.6e", row.trace_dist) + "," +
                 fmt_num("%.6e", row.min_eigenvalue) + "," + fmt_num("%.12g", row.w_sum) + "\n";
        emit(tr.out, out);
      } else {
        emit(tr.out, report_text(rep));
      }
      return;
    }
    QuantumNet net = tr.plan.empty() ? parse_net_spec(tr.net, sys)
                                     : (plan.net.empty() ? default_net(sys) : build_net(sys, plan.net));
    Reconstruction rec;
    CountsRecord counts;
    if (plan.shots == 0) {
      rec = reconstruct_probabilities(born_probabilities(rho, sys), net);
    } else {
      counts = simulate(rho, sys, plan);
      rec = reconstruct(counts, net);
    }
    double dist = trace_distance(rec.rho, rho);
    if (tr.format == "structured") {
      json j;
      j["table"] = sys.label;
      j["state"] = tr.state;
      j["shots"] = plan.shots;
      j["seed"] = plan.seed;
      j["rng"] = kRngAlgorithm;
      j["trace_distance"] = dist;
      j["min_eigenvalue"] = rec.min_eigenvalue;
      j["wigner_sum"] = rec.w.sum();
      if (plan.shots > 0) {
        json rows = json::array();
        for (const auto& basis : counts.counts) rows.push_back(basis);
        j["counts"] = rows;
      }
      emit(tr.out, j.dump(2) + "\n");
      return;
    }
    if (tr.format == "csv") {
      if (plan.shots == 0)
        throw std::invalid_argument("--format csv needs sampled counts; use --shots >= 1");
      emit(tr.out, counts_csv(counts));
      return;
    }
    std::ostringstream out;
    out << "tomography run  table=" << sys.label << " state=" << tr.state << " shots=" << plan.shots
        << " seed=" << plan.seed << " rng=" << kRngAlgorithm << "\n";
    if (plan.shots == 0) out << "mode: exact Born probabilities\n";
    out << "trace distance to input: " << fmt_num("%.6e", dist) << "\n";
    out << "reconstruction min eigenvalue: " << fmt_num("%+.6e", rec.min_eigenvalue) << "\n";
    out << "wigner sum: " << fmt_num("%.12g", rec.w.sum()) << "\n";
    emit(tr.out, out.str());
  });

  // ------------------------------------------------------------ figures-diff
  struct {
    std::string figure, format = "text", out;
  } fd;
  auto* sc_figs = app.add_subcommand("figures-diff", "compare constructed grids against the published ones");
  sc_figs->add_option("--figure", fd.figure, "one figure id (default: all)");
  add_format(sc_figs, &fd.format, {"text", "structured"});
  sc_figs->add_option("--out", fd.out, "write output to this file instead of stdout");
  sc_figs->callback([&] {
    std::vector<fixtures::NamedFigure> figs;
    if (fd.figure.empty()) {
      figs = fixtures::figure_library();
    } else {
      figs.push_back(fixtures::figure_fixture(fd.figure));
    }
    bool geometry_ok = true;
    json jfigs = json::array();
    std::ostringstream out;
    for (const auto& fig : figs) {
      MubSystem sys = load_system(fig.table_id);
      const Field& f = *sys.field;
      PhasePoint disp{f.parse(fig.alpha), f.parse(fig.beta)};
      std::optional<PhasePoint> opt;
      if (disp.alpha.bits || disp.beta.bits) opt = disp;
      std::string grid = render_grid(sys.striations, sys.map, GridLabels::paper, opt);
      GridDiff diff = diff_grids(grid, fig.grid, sys.map);
      GeometryReport geo = verify_geometry(sys.striations, sys.map);
      if (!geo.pass) geometry_ok = false;
      if (fd.format == "structured") {
        json j;
        j["figure"] = fig.id;
        j["table"] = fig.table_id;
        j["displacement"] = opt ? f.str(disp.alpha) + "," + f.str(disp.beta) : "none";
        j["matches_raw"] = diff.matches;
        j["matches_relabeled"] = diff.relabeled_matches;
        j["total"] = diff.total;
        j["relabel_is_identity"] = diff.relabel_is_identity;
        if (!diff.relabel_is_identity) {
          json map = json::object();
          for (int lbl = 1; lbl <= 9; ++lbl)
            if (diff.relabel[lbl] != lbl)
              map[std::to_string(lbl)] = diff.relabel[lbl];
          j["relabel"] = map;
        }
        j["suspected_typos"] = diff.residual;
        j["geometry_pass"] = geo.pass;
        jfigs.push_back(j);
      } else {
        char head[160];
        std::snprintf(head, sizeof head, "%-10s (%s%s): %d/%d raw, %d/%d after relabeling, %zu suspected typo(s)\n",
                      fig.id.c_str(), fig.table_id.c_str(),
                      opt ? (", displaced by (" + f.str(disp.alpha) + "," + f.str(disp.beta) + ")").c_str() : "",
                      diff.matches, diff.total, diff.relabeled_matches, diff.total,
                      diff.residual.size());
        out << head;
        if (!diff.relabel_is_identity) {
          out << "  label map:";
          for (int lbl = 1; lbl <= 9; ++lbl)
            if (diff.relabel[lbl] != lbl) out << ' ' << lbl << "->" << diff.relabel[lbl];
          out << "\n";
        }
        for (const auto& cell : diff.residual) out << "  " << cell << "\n";
        if (!geo.pass) out << "  geometry: FAIL for " << fig.table_id << "\n";
      }
    }
    if (fd.format == "structured") {
      json j;
      j["figures"] = jfigs;
      j["geometry_pass"] = geometry_ok;
      emit(fd.out, j.dump(2) + "\n");
    } else {
      out << "geometry: " << (geometry_ok ? "pass" : "FAIL") << " for every rendered table\n";
      emit(fd.out, out.str());
    }
    if (!geometry_ok) rc = 1;  // label disagreements are reported, not fatal
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, bad usage exits 2
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
