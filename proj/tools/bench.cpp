// Timing harness for the kernels that carry an execution policy.  Each kernel
// runs once with Exec::serial and once with Exec::par on identical inputs; the
// outputs must agree exactly (the policies are required to be bit-identical),
// and the wall-clock ratio is reported.  --scale multiplies the workload so
// the same binary serves both the ctest smoke run (--scale 1) and real
// measurements on multi-core machines.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "mubwig/dense.hpp"
#include "mubwig/mubtab.hpp"
#include "mubwig/rng.hpp"
#include "mubwig/system.hpp"
#include "mubwig/tomo.hpp"
#include "mubwig/wigner.hpp"

using namespace mubwig;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& body) {
  auto t0 = Clock::now();
  body();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Row {
  std::string kernel, work;
  double serial_ms = 0, par_ms = 0;
  bool agree = false;
};

void print_row(const Row& r) {
  std::printf("%-14s %-16s %10.2f ms %10.2f ms   %5.2fx   %s\n", r.kernel.c_str(),
              r.work.c_str(), r.serial_ms, r.par_ms,
              r.par_ms > 0 ? r.serial_ms / r.par_ms : 0.0, r.agree ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int scale = 1;
  CLI::App app{"serial vs parallel timings for the policy-carrying kernels"};
  app.add_option("--scale", scale, "workload multiplier")->check(CLI::PositiveNumber)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("scale %d, %d thread%s available\n", scale, threads, threads == 1 ? "" : "s");
  std::printf("%-14s %-16s %13s %13s   %6s   %s\n", "kernel", "work", "serial", "parallel",
              "ratio", "check");

  MubSystem sys = load_system("table1");
  std::vector<Row> rows;

  {  // unbiasedness sweep over all cross-basis projector pairs
    Row r{"verify-mub", std::to_string(scale) + " x 2304 pairs"};
    MubReport a{}, b{};
    r.serial_ms = run_ms([&] {
      for (int i = 0; i < scale; ++i) a = verify_mub(sys.bases, Exec::serial);
    });
    r.par_ms = run_ms([&] {
      for (int i = 0; i < scale; ++i) b = verify_mub(sys.bases, Exec::par);
    });
    r.agree = a.pass == b.pass && a.pairs == b.pairs && a.max_dev == b.max_dev &&
              a.max_self_dev == b.max_self_dev;
    print_row(r);
    rows.push_back(r);
  }

  {  // all 64 phase-point operators of a random net
    Rng rng(314159);
    QuantumNet net = random_net(sys, rng);
    Row r{"point-ops", std::to_string(4 * scale) + " x 64 ops"};
    std::vector<Matrix> a, b;
    r.serial_ms = run_ms([&] {
      for (int i = 0; i < 4 * scale; ++i) a = all_point_operators(net, Exec::serial);
    });
    r.par_ms = run_ms([&] {
      for (int i = 0; i < 4 * scale; ++i) b = all_point_operators(net, Exec::par);
    });
    r.agree = a.size() == b.size();
    for (size_t k = 0; r.agree && k < a.size(); ++k) r.agree = a[k] == b[k];
    print_row(r);
    rows.push_back(r);
  }

  {  // Wigner transform of a batch of random mixed states
    const int batch = 50 * scale;
    QuantumNet net = default_net(sys);
    std::vector<Matrix> states;
    for (int i = 0; i < batch; ++i) {
      Rng rng = Rng::derive(2718, i);
      states.push_back(random_mixed(rng, sys.dim()));
    }
    Row r{"wigner", std::to_string(batch) + " states"};
    std::vector<WignerTable> a(batch), b(batch);
    r.serial_ms = run_ms([&] {
      for (int i = 0; i < batch; ++i) a[i] = wigner(states[i], net, Exec::serial);
    });
    r.par_ms = run_ms([&] {
      for (int i = 0; i < batch; ++i) b[i] = wigner(states[i], net, Exec::par);
    });
    r.agree = true;
    for (int i = 0; r.agree && i < batch; ++i) r.agree = a[i].values == b[i].values;
    print_row(r);
    rows.push_back(r);
  }

  {  // sampled measurement record across all nine bases
    ExperimentPlan plan;
    plan.shots = 20000LL * scale;
    plan.seed = 99;
    Rng rng(1618);
    Matrix rho = random_mixed(rng, sys.dim());
    Row r{"simulate", std::to_string(plan.shots) + " shots x 9"};
    CountsRecord a, b;
    r.serial_ms = run_ms([&] { a = simulate(rho, sys, plan, Exec::serial); });
    r.par_ms = run_ms([&] { b = simulate(rho, sys, plan, Exec::par); });
    r.agree = a.shots == b.shots && a.counts == b.counts;
    print_row(r);
    rows.push_back(r);
  }

  for (const auto& r : rows)
    if (!r.agree) {
      std::printf("serial and parallel outputs diverged\n");
      return 1;
    }
  std::printf("all kernels agree across policies\n");
  return 0;
}
