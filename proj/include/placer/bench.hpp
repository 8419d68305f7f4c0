#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "placer/planner.hpp"
#include "placer/scene.hpp"

namespace placer {

struct MetricsRecord {
  std::string scene;
  std::string variant;
  std::uint64_t seed = 0;
  bool success = false;
  int iterations = 0;
  double wall_ms = 0.0;
  double min_sr = kInf;  // Newtons, over the refreshed map
  double volume = 0.0;   // cubic meters
  bool audit_ok = true;  // independent re-validation of the accepted pose
};

struct BenchConfig {
  std::vector<std::string> scenes = {"cube", "stack", "table", "pyramids", "canyon"};
  std::vector<Variant> variants = {Variant::SRWeighted, Variant::Uniform, Variant::Chance};
  int runs = 50;
  std::string object_spec = "cube:0.25";
  double object_mass = 1.0;
  double object_mu = 0.5;
  PlannerConfig planner;
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// One placement experiment per (scene, variant, run): the scene is rebuilt,
// a single object placed, and every accepted pose re-validated from scratch
// against the pre-placement assembly.
std::vector<MetricsRecord> run_benchmark(const BenchConfig& config);

// Versioned CSV with one row per record.
void write_metrics_csv(const std::vector<MetricsRecord>& records, std::ostream& out);
std::vector<MetricsRecord> read_metrics_csv(std::istream& in);

// Per-cell summary (mean time, mean min-SR, mean volume, success rate).
void print_summary(const std::vector<MetricsRecord>& records, std::ostream& out);

struct ComplexityPoint {
  int budget = 0;
  int vertices = 0;
  double srmap_ms = 0.0;
  double plan_ms = 0.0;
  bool success = false;
};

// Bowl sweep over vertex budgets; `runs` seeded placements per budget.
std::vector<ComplexityPoint> run_complexity(const std::vector<int>& budgets, int runs,
                                            const PlannerConfig& planner);

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace placer
