#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "placer/bench.hpp"
#include "placer/srmap_io.hpp"

using namespace placer;

namespace {

Scene open_scene(const std::string& ref, int bowl_vertices) {
  if (std::filesystem::exists(ref) && ref.size() > 5 && ref.substr(ref.size() - 5) == ".json")
    return load_scene(ref);
  return scene_from_json(generate_scene(ref, bowl_vertices));
}

SceneJson pose_json(const Pose& pose) {
  Quat q(pose.R);
  SceneJson j;
  j["quaternion"] = {q.w(), q.x(), q.y(), q.z()};
  j["translation"] = {pose.t.x(), pose.t.y(), pose.t.z()};
  return j;
}

SceneJson report_json(const PlacementReport& r, const PlannerConfig& cfg) {
  SceneJson j;
  j["success"] = r.success;
  j["object"] = r.object_name;
  j["variant"] = variant_name(cfg.variant);
  j["seed"] = cfg.seed;
  j["iterations"] = r.iterations;
  j["srmap_ms"] = r.srmap_ms;
  j["search_ms"] = r.search_ms;
  j["stages"] = {{"no_candidates", r.stages.no_candidates},
                 {"no_pairs", r.stages.no_pairs},
                 {"match_failed", r.stages.match_failed},
                 {"degenerate_pose", r.stages.degenerate_pose},
                 {"penetration", r.stages.penetration},
                 {"no_contact", r.stages.no_contact},
                 {"tension_screen", r.stages.tension_screen},
                 {"qp_infeasible", r.stages.qp_infeasible},
                 {"not_equilibrated", r.stages.not_equilibrated},
                 {"accepted", r.stages.accepted}};
  if (r.success) {
    j["pose"] = pose_json(r.pose);
    j["min_sr"] = std::isfinite(r.min_sr_after) ? SceneJson(r.min_sr_after) : SceneJson("inf");
    j["volume"] = r.volume_after;
  }
  return j;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable placement planning from surface robustness maps"};
  app.require_subcommand(1);

  // plan
  auto* plan = app.add_subcommand("plan", "Plan a single stable placement");
  std::string plan_scene, plan_object = "cube:0.25", plan_variant = "sr", plan_out;
  std::uint64_t plan_seed = 0;
  int plan_iters = 500, plan_bowl_vertices = 150;
  double plan_tension = 5.0, plan_density = 200.0, plan_mass = 1.0, plan_mu = 0.5;
  bool plan_allow_fixed = false;
  plan->add_option("scene", plan_scene, "Scene name or .json path")->required();
  plan->add_option("object", plan_object, "Object spec (cube:S, box:X,Y,Z, sphere:R,V, bowl:R,V, .obj)");
  plan->add_option("--variant", plan_variant, "sr | uniform | chance");
  plan->add_option("--seed", plan_seed);
  plan->add_option("--max-iters", plan_iters);
  plan->add_option("--tension-thresh", plan_tension, "Tension screen threshold [N]");
  plan->add_option("--density", plan_density, "Surface samples per m^2");
  plan->add_option("--mass", plan_mass);
  plan->add_option("--mu", plan_mu);
  plan->add_option("--bowl-vertices", plan_bowl_vertices);
  plan->add_flag("--allow-fixed", plan_allow_fixed, "Sample fixed supports too");
  plan->add_option("--out", plan_out, "Write the run record (JSON) here");

  // srmap
  auto* srmap = app.add_subcommand("srmap", "Export the static robustness map of a scene");
  std::string srmap_scene, srmap_out = "srmap.ply";
  double srmap_density = 200.0;
  int srmap_bowl_vertices = 150;
  srmap->add_option("scene", srmap_scene)->required();
  srmap->add_option("--density", srmap_density);
  srmap->add_option("--bowl-vertices", srmap_bowl_vertices);
  srmap->add_option("--out", srmap_out);

  // bench
  auto* bench = app.add_subcommand("bench", "Seeded benchmark sweep with CSV metrics");
  std::string bench_scenes = "cube,stack,table,pyramids,canyon";
  std::string bench_variants = "sr,uniform,chance";
  std::string bench_csv;
  int bench_runs = 50, bench_iters = 500;
  std::uint64_t bench_seed = 0;
  bench->add_option("--scenes", bench_scenes);
  bench->add_option("--variants", bench_variants);
  bench->add_option("--runs", bench_runs);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--max-iters", bench_iters);
  bench->add_option("--csv", bench_csv, "Write per-run records here");

  // complexity
  auto* cx = app.add_subcommand("complexity", "Bowl vertex-count scaling study");
  std::string cx_vertices = "50,150,500,1500";
  std::string cx_csv;
  int cx_runs = 5;
  std::uint64_t cx_seed = 0;
  cx->add_option("--vertices", cx_vertices);
  cx->add_option("--runs", cx_runs);
  cx->add_option("--seed", cx_seed);
  cx->add_option("--csv", cx_csv);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a built-in scene to a file");
  std::string gen_name, gen_out = "scene.json";
  int gen_bowl_vertices = 150;
  gen->add_option("scene", gen_name)->required();
  gen->add_option("--out", gen_out);
  gen->add_option("--bowl-vertices", gen_bowl_vertices);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan) {
      Scene scene = open_scene(plan_scene, plan_bowl_vertices);
      PlannerConfig cfg;
      cfg.variant = variant_from_name(plan_variant);
      cfg.seed = plan_seed;
      cfg.max_iterations = plan_iters;
      cfg.validation.tension_threshold = plan_tension;
      cfg.density = plan_density;
      cfg.allow_fixed_support = plan_allow_fixed || scene.allow_fixed_support;
      PolyObject object = parse_object_spec(plan_object, plan_mass, plan_mu);
      PlacementReport report = plan_placement(scene.assembly, object, cfg);

      SceneJson record = report_json(report, cfg);
      if (!plan_out.empty()) {
        std::ofstream out(plan_out);
        out << record.dump(2) << "\n";
      }
      std::cout << record.dump(2) << "\n";
      return report.success ? 0 : 2;
    }

    if (*srmap) {
      Scene scene = open_scene(srmap_scene, srmap_bowl_vertices);
      auto map = compute_sr_map(scene.assembly, srmap_density);
      if (!map) {
        std::cerr << "scene is not in equilibrium\n";
        return 1;
      }
      export_sr_map(*map, srmap_out);
      std::cout << "wrote " << map->samples.size() << " samples to " << srmap_out << "\n";
      return 0;
    }

    if (*bench) {
      BenchConfig cfg;
      cfg.scenes = split_list(bench_scenes);
      cfg.variants.clear();
      for (const auto& v : split_list(bench_variants)) cfg.variants.push_back(variant_from_name(v));
      cfg.runs = bench_runs;
      cfg.planner.seed = bench_seed;
      cfg.planner.max_iterations = bench_iters;
      auto records = run_benchmark(cfg);
      if (!bench_csv.empty()) {
        std::ofstream out(bench_csv);
        write_metrics_csv(records, out);
      }
      print_summary(records, std::cout);
      return 0;
    }

    if (*cx) {
      std::vector<int> budgets;
      for (const auto& v : split_list(cx_vertices)) budgets.push_back(std::stoi(v));
      PlannerConfig cfg;
      cfg.seed = cx_seed;
      auto points = run_complexity(budgets, cx_runs, cfg);
      std::ostringstream csv;
      csv << "# schema=1\nbudget,vertices,srmap_ms,plan_ms,success\n";
      for (const auto& p : points)
        csv << p.budget << "," << p.vertices << "," << p.srmap_ms << "," << p.plan_ms << ","
            << (p.success ? 1 : 0) << "\n";
      if (!cx_csv.empty()) {
        std::ofstream out(cx_csv);
        out << csv.str();
      }
      std::cout << csv.str();

      std::map<int, std::pair<double, double>> medians;  // budget -> (srmap, plan)
      for (int b : budgets) {
        std::vector<double> sr, pl;
        int verts = b;
        for (const auto& p : points)
          if (p.budget == b) {
            sr.push_back(p.srmap_ms);
            pl.push_back(p.plan_ms);
            verts = p.vertices;
          }
        std::sort(sr.begin(), sr.end());
        std::sort(pl.begin(), pl.end());
        medians[verts] = {sr[sr.size() / 2], pl[pl.size() / 2]};
      }
      std::vector<double> xs, ys_sr, ys_plan;
      for (const auto& [v, m] : medians) {
        xs.push_back(v);
        ys_sr.push_back(std::max(m.first, 1e-3));
        ys_plan.push_back(std::max(m.second, 1e-3));
      }
      std::cout << "srmap time exponent: " << fit_loglog_slope(xs, ys_sr) << "\n";
      std::cout << "plan time exponent:  " << fit_loglog_slope(xs, ys_plan) << "\n";
      return 0;
    }

    if (*gen) {
      save_scene(generate_scene(gen_name, gen_bowl_vertices), gen_out);
      std::cout << "wrote " << gen_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
