// The Exec contract: every kernel writes per-index slots and folds serially,
// so the parallel path must reproduce the serial one bit for bit — not just
// within tolerance.  These tests pin that equality for each kernel that
// accepts a policy.

#include <cmath>

#include "doctest.h"
#include "mubwig/tomo.hpp"

using namespace mubwig;

TEST_SUITE_BEGIN("parallel");

TEST_CASE("mub verification folds to identical reports") {
  for (const char* id : {"table1", "table4", "table6"}) {
    MubSystem sys = load_system(id);
    MubReport serial = verify_mub(sys.bases, Exec::serial);
    MubReport par = verify_mub(sys.bases, Exec::par);
    CHECK(serial.pass == par.pass);
    CHECK(serial.pairs == par.pairs);
    CHECK(serial.max_dev == par.max_dev);
    CHECK(serial.max_self_dev == par.max_self_dev);
  }
}

TEST_CASE("wigner tables agree bit for bit") {
  MubSystem sys = load_system("table5");
  QuantumNet net = default_net(sys);
  Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix rho = trial % 2 ? random_pure(rng, 8) : random_mixed(rng, 8);
    WignerTable serial = wigner(rho, net, Exec::serial);
    WignerTable par = wigner(rho, net, Exec::par);
    CHECK(serial.values == par.values);
  }
}

TEST_CASE("point-operator batteries agree entrywise") {
  MubSystem sys = load_system("table3");
  Rng rng(62);
  QuantumNet net = random_net(sys, rng);
  auto serial = all_point_operators(net, Exec::serial);
  auto par = all_point_operators(net, Exec::par);
  REQUIRE(serial.size() == par.size());
  for (size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == par[i]);
}

TEST_CASE("sampling with derived per-basis streams ignores scheduling") {
  MubSystem sys = load_system("table1");
  Rng rng(63);
  Matrix rho = random_mixed(rng, 8);
  ExperimentPlan plan{"table1", {}, 1500, 424242};
  CountsRecord serial = simulate(rho, sys, plan, Exec::serial);
  CountsRecord par = simulate(rho, sys, plan, Exec::par);
  CHECK(serial.counts == par.counts);
}

TEST_SUITE_END();
