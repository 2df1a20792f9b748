#include "smmdtc/app/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace smmdtc::app {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
  }
}

std::string csv_preamble(const json& resolved_config, const std::vector<std::string>& header) {
  std::string out = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  out += "# config=" + resolved_config.dump() + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  return out;
}

std::string timeseries_csv(const TimeSeries& series, const json& resolved_config) {
  std::string out = csv_preamble(resolved_config, series.labels);
  const std::size_t rows = series.times.size();
  out.reserve(out.size() + rows * series.labels.size() * 22);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < series.values.size(); ++c) {
      if (c) out += ',';
      out += format_double(series.values[c][i]);
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectrumResult& spectrum, const json& resolved_config) {
  std::string out = csv_preamble(resolved_config, {"f_over_omega", "magnitude"});
  for (std::size_t k = 0; k < spectrum.freqs.size(); ++k) {
    out += format_double(spectrum.freqs[k]);
    out += ',';
    out += format_double(spectrum.magnitudes[k]);
    out += '\n';
  }
  return out;
}

void write_run_outputs(const RunResult& result, const std::filesystem::path& dir) {
  const json cfg = result.config.to_json();
  write_atomic(dir / kTimeseriesFile, timeseries_csv(result.series, cfg));
  write_atomic(dir / kSpectrumFile, spectrum_csv(result.spectrum, cfg));
  if (result.transverse) write_atomic(dir / kSpectrumSxFile, spectrum_csv(result.transverse->spectrum, cfg));
  write_atomic(dir / kAnalysisFile, result.analysis_json().dump(2) + "\n");
}

}  // namespace smmdtc::app
