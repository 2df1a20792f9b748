#include "smmdtc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/FFT>

#include "smmdtc/errors.hpp"
#include "smmdtc/model.hpp"

namespace smmdtc {

SpectrumResult dft(std::span<const double> values, double sample_spacing, Window window) {
  const std::size_t n = values.size();
  if (n < kMinDftSamples) {
    throw DomainError("dft: need at least " + std::to_string(kMinDftSamples) + " samples, got " +
                      std::to_string(n));
  }
  if (!(sample_spacing > 0.0)) throw DomainError("dft: sample spacing must be > 0");

  std::vector<double> w(n, 1.0);
  if (window == Window::hann) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    }
  }
  double gain = 0.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = w[i] * values[i];
    gain += w[i];
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, y);

  SpectrumResult out;
  const std::size_t kept = (n + 1) / 2;
  const double duration = static_cast<double>(n) * sample_spacing;
  out.bin_width = 1.0 / duration;
  out.freqs.resize(kept);
  out.magnitudes.resize(kept);
  for (std::size_t k = 0; k < kept; ++k) {
    out.freqs[k] = static_cast<double>(k) * out.bin_width;
    const double one_sided = (k == 0) ? 1.0 : 2.0;
    out.magnitudes[k] = one_sided * std::abs(spectrum[k]) / gain;
  }

  // Parseval, with everything scaled by (n / gain)^2 so the window gain cancels.
  const double scale = static_cast<double>(n) / gain;
  double time_energy = 0.0;
  for (double v : y) time_energy += v * v;
  out.time_energy = time_energy / static_cast<double>(n) * scale * scale;
  double spec_energy = out.magnitudes[0] * out.magnitudes[0];
  for (std::size_t k = 1; k < kept; ++k) spec_energy += 0.5 * out.magnitudes[k] * out.magnitudes[k];
  if (n % 2 == 0) {
    const double nyq = std::abs(spectrum[n / 2]) / gain;
    spec_energy += nyq * nyq;
  }
  out.spectral_energy = spec_energy;
  return out;
}

SpectrumResult dft(const TimeSeries& series, std::string_view label, Window window,
                   std::size_t discard_samples) {
  series.validate();
  const auto& column = series.column(label);
  if (discard_samples >= column.size()) throw DomainError("dft: discard removes every sample");
  return dft(std::span<const double>(column).subspan(discard_samples), series.spacing(), window);
}

SubharmonicPeak detect_subharmonic(const SpectrumResult& spectrum, Band band) {
  if (!(band.lo < band.hi)) throw DomainError("detect_subharmonic: empty search band");
  std::vector<std::size_t> in_band;
  for (std::size_t k = 0; k < spectrum.freqs.size(); ++k) {
    if (spectrum.freqs[k] > band.lo && spectrum.freqs[k] < band.hi) in_band.push_back(k);
  }
  if (in_band.size() < 3) throw DomainError("detect_subharmonic: fewer than 3 bins inside the band");

  SubharmonicPeak peak;
  peak.bin = in_band.front();
  for (std::size_t k : in_band) {
    if (spectrum.magnitudes[k] > spectrum.magnitudes[peak.bin]) peak.bin = k;
  }
  std::vector<double> mags;
  mags.reserve(in_band.size());
  for (std::size_t k : in_band) mags.push_back(spectrum.magnitudes[k]);
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  double median = *mid;
  if (mags.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(mags.begin(), mid));
  }
  peak.band_median = median;
  peak.bin_magnitude = spectrum.magnitudes[peak.bin];

  double delta = 0.0;
  double refined = peak.bin_magnitude;
  if (peak.bin > 0 && peak.bin + 1 < spectrum.magnitudes.size()) {
    const double a = spectrum.magnitudes[peak.bin - 1];
    const double b = spectrum.magnitudes[peak.bin];
    const double c = spectrum.magnitudes[peak.bin + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) {
      delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
      refined = b - 0.25 * (a - c) * delta;
    }
  }
  peak.frequency = spectrum.freqs[peak.bin] + delta * spectrum.bin_width;
  peak.magnitude = refined;
  peak.detected = peak.bin_magnitude > kDetectionRatio * median;
  return peak;
}

double f_dtc_analytic(double b, double d) {
  if (!(d > 0.0)) throw DomainError("f_dtc_analytic: d must be > 0");
  return std::sqrt(b * b + 0.25 * d * d) - 0.5 * d;
}

double f_dtc_analytic(SpinQuantum s, double b, double d) {
  if (s.two_s() == 2) return f_dtc_analytic(b, d);
  return single_smm_spectrum(s, d, b).gap;
}

double dtc_susceptibility(double d, double b) {
  if (!(d > 0.0)) throw DomainError("dtc_susceptibility: d must be > 0");
  return b / std::sqrt(b * b + 0.25 * d * d);
}

namespace {

struct Minimum {
  std::size_t first;
  std::size_t last;
};

}  // namespace

EnvelopeResult envelope_analysis(std::span<const double> times, std::span<const double> values,
                                 double f_dtc, const EnvelopeOptions& options) {
  if (times.size() != values.size()) throw DimensionError("envelope_analysis: length mismatch");
  if (times.size() < 2) throw DomainError("envelope_analysis: need at least two samples");
  if (!(f_dtc > 0.0)) throw DomainError("envelope_analysis: f_dtc must be > 0");

  EnvelopeResult out;
  out.dtc_period = 1.0 / f_dtc;
  const double spacing = times[1] - times[0];
  const double t0 = times.front();
  const double duration = times.back() - t0 + spacing;
  const auto n_windows = static_cast<std::size_t>(std::floor(duration / out.dtc_period));
  if (n_windows < options.min_windows) {
    throw DomainError("envelope_analysis: run covers " + std::to_string(n_windows) +
                      " DTC periods, need at least " + std::to_string(options.min_windows));
  }

  out.envelope_values.assign(n_windows, 0.0);
  out.envelope_times.resize(n_windows);
  for (std::size_t k = 0; k < n_windows; ++k) {
    out.envelope_times[k] = t0 + (static_cast<double>(k) + 0.5) * out.dtc_period;
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::floor((times[i] - t0) / out.dtc_period));
    if (k >= n_windows) break;
    out.envelope_values[k] = std::max(out.envelope_values[k], std::abs(values[i]));
  }

  const auto& env = out.envelope_values;
  const auto [lo_it, hi_it] = std::minmax_element(env.begin(), env.end());
  const double range = *hi_it - *lo_it;
  const std::size_t n = env.size();

  std::vector<Minimum> found;
  std::size_t i = 1;
  while (i + 1 < n) {
    // Walk a run of equal values and require strictly higher neighbours.
    std::size_t j = i;
    while (j + 1 < n && env[j + 1] == env[i]) ++j;
    if (j + 1 >= n) break;
    const double v = env[i];
    if (env[i - 1] > v && env[j + 1] > v) {
      double left_max = v;
      for (std::size_t l = i; l-- > 0 && env[l] >= v;) left_max = std::max(left_max, env[l]);
      double right_max = v;
      for (std::size_t r = j + 1; r < n && env[r] >= v; ++r) right_max = std::max(right_max, env[r]);
      const double prominence = std::min(left_max, right_max) - v;
      if (range > 0.0 && prominence >= options.prominence_fraction * range) {
        const double threshold = v + options.plateau_fraction * prominence;
        std::size_t a = i;
        while (a > 0 && env[a - 1] <= threshold) --a;
        std::size_t b = j;
        while (b + 1 < n && env[b + 1] <= threshold) ++b;
        found.push_back({a, b});
      }
    }
    i = j + 1;
  }

  for (const auto& m : found) {
    out.minima_times.push_back(0.5 * (out.envelope_times[m.first] + out.envelope_times[m.last]));
  }
  if (out.minima_times.size() >= 2) {
    const double span = out.minima_times.back() - out.minima_times.front();
    out.envelope_period = span / static_cast<double>(out.minima_times.size() - 1);
    out.ratio_t_over_tdtc = *out.envelope_period / out.dtc_period;
  }
  out.decay_time = decay_time(out);
  return out;
}

std::optional<double> decay_time(const EnvelopeResult& envelope) {
  const auto& env = envelope.envelope_values;
  const auto& t = envelope.envelope_times;
  if (env.empty() || env.size() != t.size()) return std::nullopt;
  const auto peak = static_cast<std::size_t>(std::max_element(env.begin(), env.end()) - env.begin());
  const double threshold = env[peak] / std::exp(1.0);
  for (std::size_t k = peak + 1; k < env.size(); ++k) {
    if (env[k] < threshold) {
      const double frac = (threshold - env[k - 1]) / (env[k] - env[k - 1]);
      return t[k - 1] + frac * (t[k] - t[k - 1]) - t[peak];
    }
  }
  return std::nullopt;
}

}  // namespace smmdtc
