#include "placer/bench.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace placer {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::SRWeighted: return "sr";
    case Variant::Uniform: return "uniform";
    case Variant::Chance: return "chance";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "sr") return Variant::SRWeighted;
  if (name == "uniform") return Variant::Uniform;
  if (name == "chance") return Variant::Chance;
  throw std::runtime_error("unknown variant: " + name);
}

std::vector<MetricsRecord> run_benchmark(const BenchConfig& config) {
  std::vector<MetricsRecord> records;
  PolyObject object = parse_object_spec(config.object_spec, config.object_mass, config.object_mu);

  for (const auto& scene_name : config.scenes) {
    SceneJson sj = generate_scene(scene_name);
    for (Variant variant : config.variants) {
      for (int run = 0; run < config.runs; ++run) {
        Scene scene = scene_from_json(sj);
        PlannerConfig planner = config.planner;
        planner.variant = variant;
        planner.seed = hash_mix(config.planner.seed + 1315423911ull * (run + 1));
        planner.allow_fixed_support = planner.allow_fixed_support || scene.allow_fixed_support;

        Assembly before = scene.assembly;
        PlacementReport report = plan_placement(scene.assembly, object, planner);

        MetricsRecord rec;
        rec.scene = scene_name;
        rec.variant = variant_name(variant);
        rec.seed = planner.seed;
        rec.success = report.success;
        rec.iterations = report.iterations;
        rec.wall_ms = report.srmap_ms + report.search_ms;
        rec.min_sr = report.min_sr_after;
        rec.volume = report.volume_after;
        if (report.success) {
          auto audit = validate_pose(report.pose, object, before, planner.validation);
          rec.audit_ok = audit.accepted;
        }
        records.push_back(rec);
      }
    }
  }
  return records;
}

void write_metrics_csv(const std::vector<MetricsRecord>& records, std::ostream& out) {
  out << "# schema=1\n";
  out << "scene,variant,seed,success,iterations,wall_ms,min_sr,volume,audit_ok\n";
  out << std::setprecision(12);
  for (const auto& r : records) {
    out << r.scene << "," << r.variant << "," << r.seed << "," << (r.success ? 1 : 0) << ","
        << r.iterations << "," << r.wall_ms << "," << r.min_sr << "," << r.volume << ","
        << (r.audit_ok ? 1 : 0) << "\n";
  }
}

std::vector<MetricsRecord> read_metrics_csv(std::istream& in) {
  std::vector<MetricsRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("scene,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string tok;
    MetricsRecord r;
    std::getline(ss, r.scene, ',');
    std::getline(ss, r.variant, ',');
    std::getline(ss, tok, ',');
    r.seed = std::stoull(tok);
    std::getline(ss, tok, ',');
    r.success = tok == "1";
    std::getline(ss, tok, ',');
    r.iterations = std::stoi(tok);
    std::getline(ss, tok, ',');
    r.wall_ms = std::stod(tok);
    std::getline(ss, tok, ',');
    r.min_sr = std::stod(tok);
    std::getline(ss, tok, ',');
    r.volume = std::stod(tok);
    std::getline(ss, tok, ',');
    r.audit_ok = tok == "1";
    records.push_back(r);
  }
  return records;
}

void print_summary(const std::vector<MetricsRecord>& records, std::ostream& out) {
  struct Cell {
    int n = 0, ok = 0, audits = 0;
    double time = 0, sr = 0, vol = 0;
  };
  std::map<std::pair<std::string, std::string>, Cell> cells;
  for (const auto& r : records) {
    Cell& c = cells[{r.scene, r.variant}];
    ++c.n;
    if (r.success) {
      ++c.ok;
      c.time += r.wall_ms;
      if (std::isfinite(r.min_sr)) c.sr += r.min_sr;
      c.vol += r.volume;
      if (!r.audit_ok) ++c.audits;
    }
  }
  out << std::left << std::setw(12) << "scene" << std::setw(10) << "variant" << std::right << std::setw(8)
      << "runs" << std::setw(10) << "success" << std::setw(12) << "time[ms]" << std::setw(12) << "minSR[N]"
      << std::setw(12) << "vol[m^3]" << std::setw(8) << "audit" << "\n";
  for (const auto& [key, c] : cells) {
    double denom = std::max(1, c.ok);
    out << std::left << std::setw(12) << key.first << std::setw(10) << key.second << std::right
        << std::setw(8) << c.n << std::setw(9) << std::fixed << std::setprecision(1)
        << 100.0 * c.ok / std::max(1, c.n) << "%" << std::setw(12) << std::setprecision(2)
        << c.time / denom << std::setw(12) << std::setprecision(3) << c.sr / denom << std::setw(12)
        << std::setprecision(4) << c.vol / denom << std::setw(8) << (c.audits == 0 ? "ok" : "FAIL")
        << "\n";
  }
}

std::vector<ComplexityPoint> run_complexity(const std::vector<int>& budgets, int runs,
                                            const PlannerConfig& planner) {
  std::vector<ComplexityPoint> points;
  for (int budget : budgets) {
    SceneJson sj = generate_scene("bowl", budget);
    PolyObject cube = parse_object_spec("cube:0.1", 0.3, 0.5);
    for (int run = 0; run < runs; ++run) {
      Scene scene = scene_from_json(sj);
      PlannerConfig cfg = planner;
      cfg.density = std::max(cfg.density, 400.0);  // the cavity floor is small
      cfg.seed = hash_mix(planner.seed + 2654435761ull * (run + 1));

      ComplexityPoint pt;
      pt.budget = budget;
      for (const auto& po : scene.assembly.objects())
        if (po.object.name == "bowl") pt.vertices = static_cast<int>(po.world.vertices.size());

      PlacementReport report = plan_placement(scene.assembly, cube, cfg);
      pt.srmap_ms = report.srmap_ms;
      pt.plan_ms = report.search_ms;
      pt.success = report.success;
      points.push_back(pt);
    }
  }
  return points;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace placer
