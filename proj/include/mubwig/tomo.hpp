#pragma once
// MUB-driven state tomography, simulated: draw measurement outcomes in each
// of the nine bases, turn the empirical line probabilities into an estimated
// Wigner table via W(p) = (sum_k q_{k, line through p} - 1) / 2^n, and invert
// that linearly back to a density-matrix estimate.  With exact probabilities
// the chain is an exact inverse; with finite shots it is plain linear
// inversion, so negative eigenvalues are possible and get reported rather
// than repaired.

#include <cstdint>
#include <string>
#include <vector>

#include "mubwig/wigner.hpp"

namespace mubwig {

struct ExperimentPlan {
  std::string table = "table1";  // seed fixture id or seed file path
  std::vector<int> net;          // ray assignment; empty means the default net
  long long shots = 1000;        // per basis, >= 1
  uint64_t seed = 1;
};
std::string plan_json(const ExperimentPlan& plan);
ExperimentPlan parse_plan(const std::string& text);  // throws on bad fields

struct CountsRecord {
  long long shots = 0;
  std::vector<std::vector<long long>> counts;  // [basis][outcome]
};
std::string counts_csv(const CountsRecord& rec);

// Born probabilities Tr(rho P_{k,j}) for every basis k and outcome j.
std::vector<std::vector<double>> born_probabilities(const Matrix& rho, const MubSystem& sys);

// Multinomial outcome counts, one derived RNG stream per basis so the record
// is identical under either execution policy.  Validates rho as a density
// matrix and requires plan.shots >= 1.
CountsRecord simulate(const Matrix& rho, const MubSystem& sys, const ExperimentPlan& plan,
                      Exec ex = Exec::par);

struct Reconstruction {
  WignerTable w;
  Matrix rho;
  double min_eigenvalue = 0;  // negative = unphysical estimate, reported as-is
};
// Throws std::invalid_argument when the counts do not cover every basis with
// a common positive shot total.
Reconstruction reconstruct(const CountsRecord& counts, const QuantumNet& net);
// Same inversion fed with given (e.g. exact) per-basis outcome probabilities.
Reconstruction reconstruct_probabilities(const std::vector<std::vector<double>>& q,
                                         const QuantumNet& net);

struct ScalingStep {
  long long shots = 0;
  double trace_dist = 0;
};
struct ScalingReport {
  std::vector<ScalingStep> steps;
  double slope = 0;  // least-squares d log10(error) / d log10(shots)
  std::string rng = kRngAlgorithm;
};
// Repeats the simulate/reconstruct chain at each shot level with independent
// derived seeds; statistical error should shrink like shots^(-1/2).
ScalingReport scaling_experiment(const Matrix& rho, const MubSystem& sys,
                                 const std::vector<long long>& shot_levels, uint64_t seed);

struct StructureRow {
  std::string table;
  std::string signature;    // entanglement signature of the structure
  double trace_dist = 0;    // reconstruction error against the true state
  double min_eigenvalue = 0;
  double w_sum = 0;
};
struct StructureReport {
  long long shots = 0;  // 0 = exact-probability mode
  uint64_t seed = 0;
  std::string rng = kRngAlgorithm;
  std::vector<StructureRow> rows;
};
// Equal budget and seed for every listed table; shots == 0 substitutes exact
// Born probabilities (errors at numerical zero).
StructureReport compare_structures(const Matrix& rho, const std::vector<std::string>& tables,
                                   long long shots, uint64_t seed);
std::string report_text(const StructureReport& rep);
std::string report_json(const StructureReport& rep);

}  // namespace mubwig
