#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "smmdtc/observables.hpp"
#include "smmdtc/spin_algebra.hpp"

namespace smmdtc {

enum class Window { rectangular, hann };

// One-sided amplitude spectrum. Frequencies are in cycles per drive period,
// which is the same number as the angular frequency in units of omega.
// Magnitudes are scaled so an on-bin tone of amplitude A reads A.
struct SpectrumResult {
  std::vector<double> freqs;
  std::vector<double> magnitudes;
  double bin_width = 0.0;
  // Mean square of the (windowed, gain-corrected) signal and the same
  // quantity rebuilt from the spectrum, Nyquist bin included.
  double time_energy = 0.0;
  double spectral_energy = 0.0;
};

inline constexpr std::size_t kMinDftSamples = 64;

// sample_spacing is in units of T0.
SpectrumResult dft(std::span<const double> values, double sample_spacing, Window window);
SpectrumResult dft(const TimeSeries& series, std::string_view label, Window window,
                   std::size_t discard_samples = 0);

struct Band {
  double lo = 0.25;
  double hi = 0.75;
};

struct SubharmonicPeak {
  bool detected = false;
  double frequency = 0.0;       // units of omega, parabolic refinement
  double magnitude = 0.0;       // refined peak height
  double bin_magnitude = 0.0;   // raw height of the maximal bin
  double band_median = 0.0;
  std::size_t bin = 0;
};

// Peaks must exceed this multiple of the band median to count.
inline constexpr double kDetectionRatio = 5.0;

// Largest bin strictly inside the band, refined by a three-point parabola;
// ties go to the lower frequency.
SubharmonicPeak detect_subharmonic(const SpectrumResult& spectrum, Band band = {});

// sqrt(B^2 + (D/2)^2) - D/2, the S = 1 ground to first-excited gap.
double f_dtc_analytic(double b, double d);
// Any S: delegates to the single-magnet spectrum for S != 1.
double f_dtc_analytic(SpinQuantum s, double b, double d);

// d f_dtc / dB = B / sqrt(B^2 + (D/2)^2) at the given B.
double dtc_susceptibility(double d, double b);

struct EnvelopeOptions {
  // A minimum counts only if it sits this fraction of the envelope range
  // below the lower of its two bounding maxima.
  double prominence_fraction = 0.4;
  // Points within this fraction of the prominence above a minimum are
  // treated as its plateau; the minimum is placed at the plateau midpoint.
  double plateau_fraction = 0.1;
  std::size_t min_windows = 20;
};

struct EnvelopeResult {
  double dtc_period = 0.0;  // units of T0
  std::vector<double> envelope_times;
  std::vector<double> envelope_values;
  std::vector<double> minima_times;
  std::optional<double> envelope_period;
  std::optional<double> ratio_t_over_tdtc;
  std::optional<double> decay_time;
};

// Envelope as max |x| over consecutive DTC-period windows, minima by
// prominence, period as the mean spacing of successive minima.
EnvelopeResult envelope_analysis(std::span<const double> times, std::span<const double> values,
                                 double f_dtc, const EnvelopeOptions& options = {});

// Time from the envelope peak to its first fall below peak/e, linearly
// interpolated; empty if it never falls that far.
std::optional<double> decay_time(const EnvelopeResult& envelope);

}  // namespace smmdtc
