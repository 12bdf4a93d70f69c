#include "mubwig/fixtures.hpp"

#include <stdexcept>

namespace mubwig::fixtures {

const std::vector<NamedSeed>& seed_library() {
  static const std::vector<NamedSeed> kSeeds = {
      {"table1", "ZII IIZ IZI\nXII IXI IIX\n"},
      {"table2a", "ZII IZI IIZ\nXII IIX IXI\n"},
      {"table2b", "IZI IIZ ZII\nIXI XII IIX\n"},
      {"table2c", "IZI ZII IIZ\nIXI IIX XII\n"},
      {"table2d", "IIZ ZII IZI\nIIX IXI XII\n"},
      {"table2e", "IIZ IZI ZII\nIIX XII IXI\n"},
      {"table3", "ZZI IIZ ZII\nXXI IIX XII\n"},
      {"table4", "ZII ZZI IIZ\nXII XXI IIX\n"},
      {"table5", "IZI ZZI IIZ\nXYI IIX YZI\n"},
      {"table6", "XII IZY IYZ\nYII IXZ IZX\n"},
  };
  return kSeeds;
}

const std::vector<NamedFigure>& figure_library() {
  static const std::vector<NamedFigure> kFigures = {
      {"fig1", "table1", "0", "0",
       "2 6 7 8 4 5 3 9\n"
       "2 7 8 9 5 6 4 3\n"
       "2 8 9 3 6 7 5 4\n"
       "2 5 6 7 3 4 9 8\n"
       "2 4 5 6 9 3 8 7\n"
       "2 9 3 4 7 8 6 5\n"
       "2 3 4 5 8 9 7 6\n"
       "o 1 1 1 1 1 1 1\n"},
      {"fig2-left", "table2b", "0", "0",
       "2 6 5 8 3 7 4 9\n"
       "2 5 4 7 9 6 3 8\n"
       "2 9 8 4 6 3 7 5\n"
       "2 7 6 9 4 8 5 3\n"
       "2 4 3 6 8 5 9 7\n"
       "2 8 7 3 5 9 6 4\n"
       "2 3 9 5 7 4 8 6\n"
       "o 1 1 1 1 1 1 1\n"},
      {"fig2-right", "table2d", "0", "0",
       "2 5 7 6 8 4 9 3\n"
       "2 7 9 8 3 6 4 5\n"
       "2 8 3 9 4 7 5 6\n"
       "2 6 8 7 9 3 1 2\n"
       "2 9 4 3 5 8 6 7\n"
       "2 4 6 5 7 3 8 9\n"
       "2 3 5 4 6 9 7 8\n"
       "o 1 1 1 1 1 1 1\n"},
      {"fig3-left", "table3", "0", "0",
       "2 8 6 4 9 7 5 3\n"
       "2 6 4 9 7 5 3 8\n"
       "2 4 9 7 5 3 8 6\n"
       "2 9 7 5 3 8 6 4\n"
       "2 7 5 3 8 6 4 9\n"
       "2 5 3 8 6 4 9 7\n"
       "2 3 8 6 4 9 7 5\n"
       "o 1 1 1 1 1 1 1\n"},
      {"fig3-right", "table3", "0", "u^3",
       "2 4 9 7 5 3 8 6\n"
       "2 7 5 3 8 6 4 9\n"
       "2 8 6 4 9 7 5 3\n"
       "o 1 1 1 1 1 1 1\n"
       "2 6 4 9 7 5 3 8\n"
       "2 3 8 6 4 9 7 5\n"
       "2 5 3 8 6 4 9 7\n"
       "2 9 7 5 3 8 6 4\n"},
      {"fig4", "table4", "0", "0",
       "2 8 7 4 5 6 9 3\n"
       "2 9 8 5 6 7 3 4\n"
       "2 5 4 8 9 3 6 7\n"
       "2 6 5 9 3 4 7 8\n"
       "2 7 6 3 4 5 8 9\n"
       "2 4 3 7 8 9 5 6\n"
       "2 3 9 6 7 8 4 5\n"
       "o 1 1 1 1 1 1 1\n"},
      {"fig5", "table5", "0", "0",
       "2 7 3 4 8 3 4 9\n"
       "2 1 7 1 9 4 8 4\n"
       "2 9 6 6 6 8 7 6\n"
       "2 5 1 9 5 7 1 8\n"
       "2 3 8 7 1 1 9 3\n"
       "2 4 4 8 7 9 5 5\n"
       "2 8 9 5 3 5 3 7\n"
       "o 6 5 3 4 6 6 1\n"},
      {"fig6", "table6", "0", "0",
       "9 7 3 9 4 7 2 6\n"
       "4 5 3 6 8 8 5 2\n"
       "7 6 3 2 5 4 7 5\n"
       "3 7 8 6 2 7 8 4\n"
       "6 8 3 8 9 2 9 4\n"
       "3 6 2 1 4 1 1 1\n"
       "3 2 5 5 9 4 9 6\n"
       "o 1 1 9 1 5 7 8\n"},
  };
  return kFigures;
}

namespace {

[[noreturn]] void unknown(const std::string& kind, const std::string& id,
                          const std::string& known) {
  throw std::invalid_argument("unknown " + kind + " '" + id + "' (known: " + known + ")");
}

}  // namespace

const NamedSeed& seed_fixture(const std::string& id) {
  std::string known;
  for (auto& s : seed_library()) {
    if (s.id == id) return s;
    if (!known.empty()) known += ", ";
    known += s.id;
  }
  unknown("table fixture", id, known);
}

const NamedFigure& figure_fixture(const std::string& id) {
  std::string known;
  for (auto& f : figure_library()) {
    if (f.id == id) return f;
    if (!known.empty()) known += ", ";
    known += f.id;
  }
  unknown("figure fixture", id, known);
}

}  // namespace mubwig::fixtures
