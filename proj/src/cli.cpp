#include "wsan/cli.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "wsan/error.hpp"
#include "wsan/geometry.hpp"

namespace wsan::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

fs::path output_path(const fs::path& base, const fs::path& scenario, bool many, const char* suffix) {
  if (!many) return base;
  return base / (scenario.stem().string() + suffix);
}

}  // namespace

int cmd_plan(int n, double r, std::ostream& out, std::ostream& err) {
  try {
    const auto spec = geometry::GridSpec::make(n, r);
    const auto d = geometry::plan_deployment(spec);
    out << "grid: n=" << n << " r=" << num(r) << " D=" << num(spec.cell_side()) << " extent=" << num(spec.extent())
        << "\n";
    out << "center: " << geometry::node_count_center(n) << ", intersection: " << geometry::node_count_intersection(n)
        << "\n";
    out << "sensors (" << d.sensors.size() << "):\n";
    for (const auto& s : d.sensors) {
      out << "  id=" << s.id << " x=" << num(s.position.x) << " y=" << num(s.position.y) << " chno=" << s.chno << "\n";
    }
    out << "cluster_heads (" << d.cluster_heads.size() << "):\n";
    for (const auto& ch : d.cluster_heads) {
      out << "  chno=" << ch.chno << " x=" << num(ch.position.x) << " y=" << num(ch.position.y) << "\n";
    }
    out << "actors (" << d.actors.size() << "):\n";
    for (const auto& a : d.actors) {
      out << "  aa=" << a.aa << " x=" << num(a.home.x) << " y=" << num(a.home.y) << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "plan: " << e.what() << "\n";
    return kExitValidation;
  }
}

int cmd_validate(const std::vector<fs::path>& scenarios, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  for (const auto& path : scenarios) {
    auto loaded = load_and_validate(path);
    if (const auto* report = std::get_if<ValidationReport>(&loaded)) {
      err << path.string() << ": invalid\n" << report->to_string();
      code = kExitValidation;
    } else {
      out << path.string() << ": ok\n";
    }
  }
  return code;
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void print_summary(const Scenario& s, const engine::Metrics& m, std::ostream& out) {
  out << "scenario " << s.name << " (" << topology::to_string(s.topology.kind)
      << (s.topology.cloud_gated ? ", cloud-gated" : "") << "), horizon " << num(s.horizon) << " s\n";
  out << "  fire  detect_s  dispatch_s  response_s  contain_s  burned_m2\n";
  for (const auto& f : m.fires) {
    char line[160];
    std::snprintf(line, sizeof line, "  %4u  %8s  %10s  %10s  %9s  %9.1f\n", f.fire_id,
                  opt_num(f.detection_latency).c_str(), opt_num(f.dispatch_latency).c_str(),
                  opt_num(f.response_latency).c_str(), opt_num(f.containment_time).c_str(), f.burned_area_m2);
    out << line;
  }
  out << "  packets local sent/delivered/dropped: " << m.wsan_local.sent << "/" << m.wsan_local.delivered << "/"
      << m.wsan_local.dropped << "\n";
  out << "  packets cloud sent/delivered/dropped: " << m.wsan_cloud.sent << "/" << m.wsan_cloud.delivered << "/"
      << m.wsan_cloud.dropped << "\n";
  out << "  pubsub deliveries: " << m.pubsub_deliveries << "\n";
  out << "  " << (m.all_contained() ? "all fires contained" : "NOT all fires contained") << "\n";
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  const bool many = options.scenarios.size() > 1;
  int worst = kExitOk;
  for (const auto& path : options.scenarios) {
    auto loaded = load_and_validate(path);
    if (const auto* report = std::get_if<ValidationReport>(&loaded)) {
      err << path.string() << ": invalid\n" << report->to_string();
      worst = std::max(worst, static_cast<int>(kExitValidation));
      continue;
    }
    Scenario scenario = std::get<Scenario>(std::move(loaded));
    if (options.seed) scenario.network.seed = *options.seed;

    int code = kExitOk;
    try {
      const engine::RunResult result = engine::run(scenario);
      if (options.trace) write_atomic(output_path(*options.trace, path, many, ".trace.jsonl"), result.trace.str());
      if (options.metrics) {
        write_atomic(output_path(*options.metrics, path, many, ".metrics.csv"), engine::metrics_csv(result.metrics));
      }
      if (!options.quiet) print_summary(scenario, result.metrics, out);
      code = result.metrics.all_contained() ? kExitOk : kExitUncontained;
    } catch (const std::exception& e) {
      err << path.string() << ": run failed: " << e.what() << "\n";
      code = kExitRuntime;
    }
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace wsan::cli
