#include "smmdtc/app/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <thread>

#include "smmdtc/app/exit_codes.hpp"
#include "smmdtc/app/output.hpp"
#include "smmdtc/app/pipeline.hpp"

namespace smmdtc::app {

int SweepReport::exit_code() const {
  for (const auto& p : points) {
    if (!p.ok) return p.exit_code;
  }
  return kExitOk;
}

std::string point_directory(std::size_t index, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total == 0 ? 0 : total - 1).size());
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "point_" + digits;
}

namespace {

SweepPointOutcome run_point(RunConfig cfg, std::size_t index, const std::filesystem::path& dir) {
  SweepPointOutcome out;
  out.index = index;
  try {
    cfg.output.dir = dir.string();
    const RunResult r = run_pipeline(cfg);
    write_run_outputs(r, dir);
    out.ok = true;
    out.detected = r.peak.detected;
    out.f_dtc = r.peak.frequency;
    out.peak_magnitude = r.peak.magnitude;
    out.f_dtc_analytic = r.f_dtc_analytic;
    if (r.envelope && r.envelope->envelope_period) out.envelope_period = *r.envelope->envelope_period;
    if (r.envelope && r.envelope->ratio_t_over_tdtc) out.ratio = *r.envelope->ratio_t_over_tdtc;
  } catch (const std::exception& e) {
    out.ok = false;
    out.exit_code = exit_code_for(e);
    out.error = e.what();
  }
  return out;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c == '\n' ? ' ' : c;
  }
  return quoted + "\"";
}

}  // namespace

SweepReport run_sweep(const SweepConfig& sweep) {
  const std::vector<RunConfig> configs = sweep.expand();
  const std::filesystem::path root = configs.front().output.dir;
  const std::size_t n = configs.size();

  SweepReport report;
  report.points.resize(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      report.points[i] = run_point(configs[i], i, root / point_directory(i, n));
      std::fprintf(stderr, "sweep: point %zu/%zu %s\n", i + 1, n, report.points[i].ok ? "done" : "failed");
    }
  };
  {
    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(sweep.parallelism), n);
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::string> header{"index", "directory"};
  for (const auto& axis : sweep.axes) header.push_back(axis.path);
  for (const char* h : {"status", "detected", "f_dtc", "peak_magnitude", "f_dtc_analytic", "envelope_period",
                        "ratio_t_over_tdtc", "error"}) {
    header.emplace_back(h);
  }
  nlohmann::json resolved = parse_run_config(sweep.base).to_json();
  resolved["sweep"] = {{"parallelism", sweep.parallelism}, {"axes", nlohmann::json::array()}};
  for (const auto& axis : sweep.axes) resolved["sweep"]["axes"].push_back({{"path", axis.path}, {"values", axis.values}});
  std::string csv = csv_preamble(resolved, header);
  for (const auto& p : report.points) {
    csv += std::to_string(p.index) + "," + point_directory(p.index, n);
    for (const auto& c : sweep.point_coordinates(p.index)) csv += "," + csv_field(c.dump());
    csv += p.ok ? ",ok," : ",error,";
    csv += p.ok ? (p.detected ? "true" : "false") : "";
    for (double v : {p.f_dtc, p.peak_magnitude, p.f_dtc_analytic, p.envelope_period, p.ratio}) {
      csv += ",";
      if (p.ok) csv += format_double(v);
    }
    csv += "," + csv_field(p.error) + "\n";
  }
  write_atomic(root / "sweep_summary.csv", csv);
  return report;
}

}  // namespace smmdtc::app
