#include "mubwig/tomo.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace mubwig;

namespace {

const MubSystem& table1() {
  static MubSystem sys = load_system("table1");
  return sys;
}

}  // namespace

TEST_SUITE_BEGIN("tomo");

TEST_CASE("experiment plans round-trip through json") {
  ExperimentPlan plan{"table5", {1, 2, 3, 4, 5, 6, 7, 0, 4}, 2500, 987654321ull};
  ExperimentPlan back = parse_plan(plan_json(plan));
  CHECK(back.table == plan.table);
  CHECK(back.net == plan.net);
  CHECK(back.shots == plan.shots);
  CHECK(back.seed == plan.seed);

  CHECK_THROWS_AS(parse_plan("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_plan("{\"shots\": 10}"), std::invalid_argument);  // no table
  CHECK_THROWS_AS(parse_plan("{\"table\": \"table1\", \"shots\": 0}"), std::invalid_argument);
}

TEST_CASE("born probabilities are a distribution per basis") {
  const MubSystem& sys = table1();
  Rng rng(4);
  auto q = born_probabilities(random_mixed(rng, 8), sys);
  REQUIRE(q.size() == 9);
  for (const auto& row : q) {
    double total = 0;
    for (double p : row) {
      CHECK(p > -1e-14);
      total += p;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("sampling is seeded, complete, and policy independent") {
  const MubSystem& sys = table1();
  Rng rng(12);
  Matrix rho = random_mixed(rng, 8);
  ExperimentPlan plan{"table1", {}, 400, 31415};
  CountsRecord a = simulate(rho, sys, plan, Exec::serial);
  CountsRecord b = simulate(rho, sys, plan, Exec::par);
  CHECK(a.counts == b.counts);
  for (const auto& row : a.counts) {
    long long total = 0;
    for (long long c : row) total += c;
    CHECK(total == plan.shots);
  }
  plan.seed = 31416;
  CHECK(simulate(rho, sys, plan).counts != a.counts);
}

TEST_CASE("an eigenstate of a basis always lands on its own outcome") {
  const MubSystem& sys = table1();
  Matrix rho = sys.bases[6].projectors[3];
  CountsRecord rec = simulate(rho, sys, {"table1", {}, 200, 5});
  CHECK(rec.counts[6][3] == 200);
  for (int j = 0; j < 8; ++j)
    if (j != 3) CHECK(rec.counts[6][j] == 0);
}

TEST_CASE("the maximally mixed state samples roughly uniformly") {
  const MubSystem& sys = table1();
  CountsRecord rec = simulate(Matrix(Matrix::Identity(8, 8) / 8.0), sys, {"table1", {}, 8000, 9});
  for (const auto& row : rec.counts)
    for (long long c : row) {
      // 5 sigma around the expected 1000
      CHECK(c > 1000 - 5 * 30);
      CHECK(c < 1000 + 5 * 30);
    }
}

TEST_CASE("simulate validates its inputs") {
  const MubSystem& sys = table1();
  Matrix bad = Matrix::Identity(8, 8);  // trace 8
  CHECK_THROWS_AS(simulate(bad, sys, {"table1", {}, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(simulate(Matrix(Matrix::Identity(8, 8) / 8.0), sys, {"table1", {}, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("exact probabilities reconstruct the state exactly") {
  const MubSystem& sys = table1();
  QuantumNet net = default_net(sys);
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix rho = trial % 2 ? random_mixed(rng, 8) : random_pure(rng, 8);
    Reconstruction rec = reconstruct_probabilities(born_probabilities(rho, sys), net);
    CHECK(max_abs(Matrix(rec.rho - rho)) < 1e-12);
    WignerTable direct = wigner(rho, net, Exec::serial);
    for (int i = 0; i < 64; ++i) CHECK(std::abs(rec.w.values[i] - direct.values[i]) < 1e-12);
  }
  Reconstruction flat = reconstruct_probabilities(
      born_probabilities(Matrix(Matrix::Identity(8, 8) / 8.0), sys), net);
  for (double v : flat.w.values) CHECK(std::abs(v - 1.0 / 64) < 1e-13);
}

TEST_CASE("finite-shot estimates stay normalized and get reported honestly") {
  const MubSystem& sys = table1();
  QuantumNet net = default_net(sys);
  Rng rng(31);
  Matrix rho = random_pure(rng, 8);
  Reconstruction rec = reconstruct(simulate(rho, sys, {"table1", {}, 2000, 17}), net);
  CHECK(std::abs(rec.w.sum() - 1.0) < 1e-12);
  CHECK(std::abs(rec.rho.trace().real() - 1.0) < 1e-12);
  CHECK(max_abs(Matrix(rec.rho - rec.rho.adjoint())) < 1e-14);
  // Linear inversion of a pure state at finite shots dips negative; that is
  // a reported metric, not an error.
  CHECK(rec.min_eigenvalue < 0.1);
  CHECK(trace_distance(rec.rho, rho) < 0.5);
}

TEST_CASE("reconstruct rejects incomplete counts") {
  const MubSystem& sys = table1();
  QuantumNet net = default_net(sys);
  CountsRecord rec = simulate(Matrix(Matrix::Identity(8, 8) / 8.0), sys, {"table1", {}, 50, 2});
  CountsRecord missing_basis = rec;
  missing_basis.counts.pop_back();
  CHECK_THROWS_AS(reconstruct(missing_basis, net), std::invalid_argument);
  CountsRecord missing_outcome = rec;
  missing_outcome.counts[4].pop_back();
  CHECK_THROWS_AS(reconstruct(missing_outcome, net), std::invalid_argument);
  CountsRecord short_total = rec;
  short_total.counts[2][0] += 1;
  CHECK_THROWS_AS(reconstruct(short_total, net), std::invalid_argument);
}

TEST_CASE("reconstruction error shrinks like the square root of the budget") {
  const MubSystem& sys = table1();
  Rng rng(41);
  Matrix rho = random_pure(rng, 8);
  ScalingReport rep = scaling_experiment(rho, sys, {1000, 10000, 100000}, 2026);
  REQUIRE(rep.steps.size() == 3);
  CHECK(rep.steps[0].trace_dist > rep.steps[2].trace_dist);
  CHECK(rep.slope < -0.35);
  CHECK(rep.slope > -0.65);
  CHECK(rep.rng == kRngAlgorithm);
  ScalingReport again = scaling_experiment(rho, sys, {1000, 10000, 100000}, 2026);
  CHECK(again.slope == rep.slope);
  for (size_t i = 0; i < 3; ++i) CHECK(again.steps[i].trace_dist == rep.steps[i].trace_dist);
}

TEST_CASE("structure comparison is exact in exact mode and reproducible always") {
  Rng rng(51);
  Matrix rho = random_mixed(rng, 8);
  std::vector<std::string> tables{"table1", "table3", "table5", "table6"};

  StructureReport exact = compare_structures(rho, tables, 0, 0);
  REQUIRE(exact.rows.size() == 4);
  CHECK(exact.rows[0].signature == "(2,3,4)");
  CHECK(exact.rows[1].signature == "(3,0,6)");
  CHECK(exact.rows[2].signature == "(1,6,2)");
  CHECK(exact.rows[3].signature == "(0,9,0)");
  for (const auto& row : exact.rows) {
    CHECK(row.trace_dist < 1e-12);
    CHECK(std::abs(row.w_sum - 1.0) < 1e-12);
  }

  StructureReport sampled = compare_structures(rho, tables, 3000, 7);
  for (const auto& row : sampled.rows) {
    CHECK(row.trace_dist > 0);
    CHECK(row.trace_dist < 0.5);
  }
  CHECK(report_text(sampled) == report_text(compare_structures(rho, tables, 3000, 7)));
  CHECK(report_json(sampled) == report_json(compare_structures(rho, tables, 3000, 7)));
  CHECK(report_text(sampled).find(kRngAlgorithm) != std::string::npos);
}

TEST_CASE("counts serialize to one csv row per basis") {
  const MubSystem& sys = table1();
  CountsRecord rec = simulate(Matrix(Matrix::Identity(8, 8) / 8.0), sys, {"table1", {}, 64, 3});
  std::string csv = counts_csv(rec);
  CHECK(csv.find("basis,outcome0") == 0);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 10);  // header + nine bases
}

TEST_SUITE_END();
