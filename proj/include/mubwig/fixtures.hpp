#pragma once
// Built-in fixture library: the ten named seed tables and the eight published
// label grids they produce.  The same text lives under fixtures/ in the repo
// for people who want to edit copies; the binaries never read those files.

#include <string>
#include <vector>

namespace mubwig::fixtures {

struct NamedSeed {
  std::string id;    // table1, table2a..table2e, table3..table6
  std::string text;  // two lines of three Pauli strings
};

struct NamedFigure {
  std::string id;        // fig1, fig2-left, ..., fig6
  std::string table_id;  // seed whose striations the figure labels
  std::string alpha, beta;  // displacement applied before rendering ("0" = none)
  std::string grid;      // 8 lines, top row = beta u^6, bottom = beta 0
};

const std::vector<NamedSeed>& seed_library();
const std::vector<NamedFigure>& figure_library();

// Throw std::invalid_argument listing known ids when the lookup fails.
const NamedSeed& seed_fixture(const std::string& id);
const NamedFigure& figure_fixture(const std::string& id);

}  // namespace mubwig::fixtures
