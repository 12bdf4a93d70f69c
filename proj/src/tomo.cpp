#include "mubwig/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace mubwig {

namespace {

// Distinct plan seeds for sub-experiments (shot levels); any deterministic
// injection works, Rng::derive remixes downstream.
uint64_t sub_seed(uint64_t seed, uint64_t salt) {
  return seed * 6364136223846793005ull + (salt + 1) * 1442695040888963407ull;
}

}  // namespace

std::string plan_json(const ExperimentPlan& plan) {
  nlohmann::json j{{"table", plan.table},
                   {"net", plan.net},
                   {"shots", plan.shots},
                   {"seed", plan.seed}};
  return j.dump(2) + "\n";
}

ExperimentPlan parse_plan(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("plan is not valid JSON: ") + e.what());
  }
  ExperimentPlan plan;
  try {
    plan.table = j.at("table").get<std::string>();
    if (j.contains("net")) plan.net = j.at("net").get<std::vector<int>>();
    if (j.contains("shots")) plan.shots = j.at("shots").get<long long>();
    if (j.contains("seed")) plan.seed = j.at("seed").get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad plan field: ") + e.what());
  }
  if (plan.shots < 1) throw std::invalid_argument("plan needs shots >= 1");
  return plan;
}

std::string counts_csv(const CountsRecord& rec) {
  std::string out = "basis";
  for (size_t j = 0; j < (rec.counts.empty() ? 0 : rec.counts[0].size()); ++j)
    out += ",outcome" + std::to_string(j);
  out += '\n';
  for (size_t k = 0; k < rec.counts.size(); ++k) {
    out += std::to_string(k + 1);
    for (long long c : rec.counts[k]) out += ',' + std::to_string(c);
    out += '\n';
  }
  return out;
}

std::vector<std::vector<double>> born_probabilities(const Matrix& rho, const MubSystem& sys) {
  std::vector<std::vector<double>> q(sys.rows());
  for (int k = 0; k < sys.rows(); ++k) {
    q[k].resize(sys.dim());
    for (int j = 0; j < sys.dim(); ++j)
      q[k][j] = (rho * sys.bases[k].projectors[j]).trace().real();
  }
  return q;
}

CountsRecord simulate(const Matrix& rho, const MubSystem& sys, const ExperimentPlan& plan,
                      Exec ex) {
  validate_density(rho);
  if (plan.shots < 1) throw std::invalid_argument("simulate needs shots >= 1");

  auto q = born_probabilities(rho, sys);
  CountsRecord rec;
  rec.shots = plan.shots;
  rec.counts.assign(sys.rows(), std::vector<long long>(sys.dim(), 0));
  for_each_index(static_cast<size_t>(sys.rows()), ex, [&](size_t k) {
    // Clip measurement-rounding negatives and build the cumulative table.
    std::vector<double> cum(sys.dim());
    double total = 0;
    for (int j = 0; j < sys.dim(); ++j) {
      total += std::max(q[k][j], 0.0);
      cum[j] = total;
    }
    Rng rng = Rng::derive(plan.seed, k);
    for (long long s = 0; s < plan.shots; ++s) {
      double u = rng.uniform() * total;
      int j = 0;
      while (j + 1 < sys.dim() && u >= cum[j]) ++j;
      ++rec.counts[k][j];
    }
  });
  return rec;
}

Reconstruction reconstruct_probabilities(const std::vector<std::vector<double>>& q,
                                         const QuantumNet& net) {
  const MubSystem& sys = *net.sys;
  if (q.size() != static_cast<size_t>(sys.rows()))
    throw std::invalid_argument("need outcome probabilities for every basis");
  for (const auto& row : q)
    if (row.size() != static_cast<size_t>(sys.dim()))
      throw std::invalid_argument("need a probability for every outcome");

  Reconstruction out;
  out.w.values.resize(sys.points());
  for (int i = 0; i < sys.points(); ++i) {
    double s = -1.0;
    for (int k = 0; k < sys.rows(); ++k)
      s += q[k][net.line_state[k][sys.line_of_point[k][i]]];
    out.w.values[i] = s / sys.dim();
  }
  out.rho = invert_wigner(out.w, net);
  Eigen::SelfAdjointEigenSolver<Matrix> es(out.rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  return out;
}

Reconstruction reconstruct(const CountsRecord& counts, const QuantumNet& net) {
  const MubSystem& sys = *net.sys;
  if (counts.shots < 1 || counts.counts.size() != static_cast<size_t>(sys.rows()))
    throw std::invalid_argument("counts do not cover the full basis set");
  std::vector<std::vector<double>> q(counts.counts.size());
  for (size_t k = 0; k < q.size(); ++k) {
    if (counts.counts[k].size() != static_cast<size_t>(sys.dim()))
      throw std::invalid_argument("basis " + std::to_string(k + 1) + " has missing outcomes");
    long long total = 0;
    for (long long c : counts.counts[k]) total += c;
    if (total != counts.shots)
      throw std::invalid_argument("basis " + std::to_string(k + 1) + " counts do not sum to shots");
    q[k].resize(counts.counts[k].size());
    for (size_t j = 0; j < q[k].size(); ++j)
      q[k][j] = static_cast<double>(counts.counts[k][j]) / static_cast<double>(counts.shots);
  }
  return reconstruct_probabilities(q, net);
}

ScalingReport scaling_experiment(const Matrix& rho, const MubSystem& sys,
                                 const std::vector<long long>& shot_levels, uint64_t seed) {
  if (shot_levels.empty()) throw std::invalid_argument("need at least one shot level");
  QuantumNet net = default_net(sys);
  ScalingReport rep;
  for (size_t i = 0; i < shot_levels.size(); ++i) {
    ExperimentPlan plan{sys.label, {}, shot_levels[i], sub_seed(seed, i)};
    Reconstruction rec = reconstruct(simulate(rho, sys, plan), net);
    rep.steps.push_back({shot_levels[i], trace_distance(rec.rho, rho)});
  }
  double mx = 0, my = 0;
  for (const auto& s : rep.steps) {
    mx += std::log10(static_cast<double>(s.shots));
    my += std::log10(s.trace_dist);
  }
  mx /= rep.steps.size();
  my /= rep.steps.size();
  double sxx = 0, sxy = 0;
  for (const auto& s : rep.steps) {
    double dx = std::log10(static_cast<double>(s.shots)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log10(s.trace_dist) - my);
  }
  rep.slope = sxx > 0 ? sxy / sxx : 0.0;
  return rep;
}

StructureReport compare_structures(const Matrix& rho, const std::vector<std::string>& tables,
                                   long long shots, uint64_t seed) {
  StructureReport rep;
  rep.shots = shots;
  rep.seed = seed;
  for (const std::string& id : tables) {
    MubSystem sys = load_system(id);
    QuantumNet net = default_net(sys);
    Reconstruction rec =
        shots == 0 ? reconstruct_probabilities(born_probabilities(rho, sys), net)
                   : reconstruct(simulate(rho, sys, ExperimentPlan{id, {}, shots, seed}), net);
    rep.rows.push_back({id, signature_string(structure_signature(sys.table)),
                        trace_distance(rec.rho, rho), rec.min_eigenvalue, rec.w.sum()});
  }
  return rep;
}

std::string report_text(const StructureReport& rep) {
  char line[160];
  std::snprintf(line, sizeof line, "tomography comparison  shots=%lld seed=%llu rng=%s\n",
                rep.shots, static_cast<unsigned long long>(rep.seed), rep.rng.c_str());
  std::string out = line;
  out += "table     signature  trace-dist     min-eigenvalue  sum-W\n";
  for (const auto& r : rep.rows) {
    std::snprintf(line, sizeof line, "%-9s %-10s %.6e   %+.6e   %.12g\n", r.table.c_str(),
                  r.signature.c_str(), r.trace_dist, r.min_eigenvalue, r.w_sum);
    out += line;
  }
  return out;
}

std::string report_json(const StructureReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"table", r.table},
                    {"signature", r.signature},
                    {"trace_dist", r.trace_dist},
                    {"min_eigenvalue", r.min_eigenvalue},
                    {"sum_w", r.w_sum}});
  nlohmann::json j{
      {"shots", rep.shots}, {"seed", rep.seed}, {"rng", rep.rng}, {"rows", rows}};
  return j.dump(2) + "\n";
}

}  // namespace mubwig
