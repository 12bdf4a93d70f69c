#include "mubwig/system.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mubwig/fixtures.hpp"

namespace mubwig {

MubSystem make_system(GeneratorTable table, std::string label) {
  TableCheck check = validate_table(table);
  if (!check.pass)
    throw std::invalid_argument("invalid table (" + label + "): " + check.failures.front());

  auto field = std::make_shared<const Field>(table.n);
  MubSystem sys{field, TranslationMap(*field), std::move(table),
                {},    {},                     std::move(label),
                {},    {}};
  sys.bases = table_bases(sys.table);
  sys.striations = table_striations(sys.table, sys.map);

  sys.row_of_class.assign(1u << (2 * sys.n()), -1);
  for (size_t r = 0; r < sys.table.rows.size(); ++r)
    for (const auto& cell : sys.table.rows[r])
      sys.row_of_class[class_key(cell)] = static_cast<int>(r);

  sys.line_of_point.assign(sys.rows(), std::vector<int>(sys.points(), -1));
  for (int r = 0; r < sys.rows(); ++r)
    for (size_t li = 0; li < sys.striations[r].lines.size(); ++li)
      for (const auto& pt : sys.striations[r].lines[li].points)
        sys.line_of_point[r][sys.map.point_index(pt)] = static_cast<int>(li);
  return sys;
}

MubSystem load_system(const std::string& spec) {
  std::string text;
  try {
    text = fixtures::seed_fixture(spec).text;
  } catch (const std::invalid_argument&) {
    std::ifstream in(spec);
    if (!in.good())
      throw std::invalid_argument("'" + spec + "' is neither a seed fixture nor a readable file");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return make_system(expand_seed(parse_seed(text)), spec);
}

MubSystem ray_system(int n) {
  std::vector<std::vector<const char*>> rows;
  if (n == 1) {
    rows = {{"Z"}, {"X"}, {"Y"}};
  } else if (n == 2) {
    // Vertical and horizontal rays first, then slopes 1, w, w^2 (w a
    // primitive cube root of unity in GF(4)); together the five rows cover
    // all fifteen two-qubit Pauli classes.
    rows = {{"ZI", "IZ", "ZZ"},
            {"XI", "IX", "XX"},
            {"YY", "YI", "IY"},
            {"YX", "XZ", "ZY"},
            {"XY", "YZ", "ZX"}};
  } else {
    throw std::invalid_argument("ray systems are built for n = 1 or 2");
  }
  GeneratorTable t;
  t.n = n;
  for (const auto& row : rows) {
    auto& out = t.rows.emplace_back();
    for (const char* cell : row) out.push_back(hermitian(parse_pauli(cell)));
  }
  return make_system(std::move(t), "rays-n" + std::to_string(n));
}

}  // namespace mubwig
