#include <doctest.h>

#include <numeric>

#include "support.hpp"

using namespace smmdtc;

namespace {

std::vector<double> tone(std::size_t n, double spacing, double f, double amp, double phase = 0.0, double dc = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = dc + amp * std::cos(2 * kPi * f * i * spacing + phase);
  return x;
}

}  // namespace

TEST_CASE("on-bin tone reads its amplitude") {
  const std::size_t n = 2000;
  const double h = 0.05;  // 20 samples per period, 100 periods
  const auto x = tone(n, h, 0.49, 0.7, 0.3, 0.25);
  const auto s = dft(x, h, Window::rectangular);
  CHECK(s.bin_width == doctest::Approx(0.01));
  CHECK(s.freqs.size() == 1000);
  CHECK(s.magnitudes[49] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s.magnitudes[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s.magnitudes[48] < 1e-12);
  const auto w = dft(x, h, Window::hann);
  CHECK(w.magnitudes[49] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("magnitudes match a direct transform") {
  oracle::SplitMix64 rng(99);
  for (std::size_t n : {64u, 65u, 100u, 127u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-1, 1);
    const auto s = dft(x, 0.1, Window::rectangular);
    const auto ref = oracle::naive_dft(x);
    REQUIRE(s.magnitudes.size() == (n + 1) / 2);
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
      const double expected = (k == 0 ? 1.0 : 2.0) * std::abs(ref[k]) / static_cast<double>(n);
      CHECK(s.magnitudes[k] == doctest::Approx(expected).epsilon(1e-10));
      CHECK(s.freqs[k] == doctest::Approx(k / (n * 0.1)));
    }
  }
}

TEST_CASE("Parseval consistency") {
  oracle::SplitMix64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(64, 3000));
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-2, 2);
    for (Window w : {Window::rectangular, Window::hann}) {
      const auto s = dft(x, 0.05, w);
      CHECK(s.spectral_energy == doctest::Approx(s.time_energy).epsilon(1e-10));
    }
    const auto rect = dft(x, 0.05, Window::rectangular);
    const double mean_sq = std::inner_product(x.begin(), x.end(), x.begin(), 0.0) / static_cast<double>(n);
    CHECK(rect.time_energy == doctest::Approx(mean_sq).epsilon(1e-12));
  }
}

TEST_CASE("dft preconditions") {
  CHECK_THROWS_AS(dft(std::vector<double>(63, 1.0), 0.1, Window::rectangular), DomainError);
  CHECK_THROWS_AS(dft(std::vector<double>(64, 1.0), 0.0, Window::rectangular), DomainError);
  TimeSeries ts;
  for (int i = 0; i < 100; ++i) ts.times.push_back(0.05 * i);
  ts.add("m", tone(100, 0.05, 0.5, 1.0));
  CHECK_THROWS_AS(dft(ts, "m", Window::rectangular, 100), DomainError);
  CHECK(dft(ts, "m", Window::rectangular, 20).freqs.size() == 40);
}

TEST_CASE("sub-harmonic detection with parabolic refinement") {
  const std::size_t n = 20000;
  const double h = 0.05;
  for (double f : {0.3, 0.4843, 0.4890, 0.6}) {
    auto x = tone(n, h, f, 0.3);
    const auto drive = tone(n, h, 1.0, 0.5);
    for (std::size_t i = 0; i < n; ++i) x[i] += drive[i];
    const auto peak = detect_subharmonic(dft(x, h, Window::hann));
    CHECK(peak.detected);
    CHECK(std::abs(peak.frequency - f) < 0.2 * 0.001);
    CHECK(peak.bin_magnitude > kDetectionRatio * peak.band_median);
  }
}

TEST_CASE("noise alone is not a detection, drive outside band is ignored") {
  oracle::SplitMix64 rng(4);
  auto x = tone(20000, 0.05, 1.0, 1.0);
  for (auto& v : x) v += rng.uniform(-0.01, 0.01);
  const auto peak = detect_subharmonic(dft(x, 0.05, Window::rectangular));
  CHECK_FALSE(peak.detected);
  CHECK(peak.bin_magnitude < 0.01);
}

TEST_CASE("ties go to the lower frequency") {
  SpectrumResult s;
  s.bin_width = 0.1;
  for (int k = 0; k < 10; ++k) {
    s.freqs.push_back(0.1 * k);
    s.magnitudes.push_back(0.01);
  }
  s.magnitudes[3] = 1.0;
  s.magnitudes[6] = 1.0;
  const auto peak = detect_subharmonic(s, {0.15, 0.85});
  CHECK(peak.bin == 3);
  CHECK(peak.detected);
  CHECK_THROWS_AS(detect_subharmonic(s, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(detect_subharmonic(s, {0.15, 0.25}), DomainError);
}

TEST_CASE("closed-form f_dtc and its slope") {
  for (double b : {0.1, 0.5, 1.2})
    for (double d : {0.01, 0.1, 1.0}) {
      CHECK(f_dtc_analytic(b, d) == doctest::Approx(oracle::s1_gap(d, b)));
      const double slope = oracle::central_difference([d](double x) { return f_dtc_analytic(x, d); }, b, 1e-5);
      CHECK(dtc_susceptibility(d, b) == doctest::Approx(slope).epsilon(1e-8));
    }
  CHECK(f_dtc_analytic(0.5, 1.0 / (10 * kPi)) == doctest::Approx(0.4843377445));
  CHECK(f_dtc_analytic(SpinQuantum(2), 3.0, 1.0) == f_dtc_analytic(3.0, 1.0));
  const auto levels = oracle::single_smm_levels(4, 1.0, 3.0);
  CHECK(f_dtc_analytic(SpinQuantum(4), 3.0, 1.0) == doctest::Approx(levels[1] - levels[0]));
  CHECK(dtc_susceptibility(1.0, 1e6) == doctest::Approx(1.0));
  CHECK_THROWS_AS(f_dtc_analytic(1.0, 0.0), DomainError);
}

TEST_CASE("envelope of a beating signal") {
  // Carrier at 0.49 per T0, amplitude |cos(pi t / T)| with T = 150 T0.
  const double h = 0.05, f = 0.49, big_t = 150.0;
  std::vector<double> t, x;
  for (int i = 0; i < 20000; ++i) {
    t.push_back(i * h);
    x.push_back(std::abs(std::cos(kPi * t.back() / big_t)) * std::cos(2 * kPi * f * t.back()));
  }
  const auto env = envelope_analysis(t, x, f);
  REQUIRE(env.envelope_period.has_value());
  CHECK(*env.envelope_period == doctest::Approx(big_t).epsilon(0.02));
  CHECK(*env.ratio_t_over_tdtc == doctest::Approx(big_t * f).epsilon(0.02));
  CHECK(env.minima_times.size() == 7);
  CHECK(env.dtc_period == doctest::Approx(1 / f));
}

TEST_CASE("small ripples on a beat are not envelope minima") {
  const double h = 0.05, f = 0.5, big_t = 200.0;
  std::vector<double> t, x;
  for (int i = 0; i < 20000; ++i) {
    t.push_back(i * h);
    const double ripple = 1.0 + 0.05 * std::cos(2 * kPi * t.back() / 13.0);
    x.push_back(ripple * std::abs(std::cos(kPi * t.back() / big_t)) * std::cos(2 * kPi * f * t.back()));
  }
  const auto env = envelope_analysis(t, x, f);
  CHECK(env.minima_times.size() == 5);
  REQUIRE(env.envelope_period.has_value());
  CHECK(*env.envelope_period == doctest::Approx(big_t).epsilon(0.02));
}

TEST_CASE("a single envelope minimum leaves the period undetermined") {
  const double h = 0.05, f = 0.5;
  std::vector<double> t, x;
  for (int i = 0; i < 8000; ++i) {
    t.push_back(i * h);
    x.push_back(std::abs(std::cos(kPi * t.back() / 600.0)) * std::cos(2 * kPi * f * t.back()));
  }
  const auto env = envelope_analysis(t, x, f);
  CHECK(env.minima_times.size() == 1);
  CHECK_FALSE(env.envelope_period.has_value());
  CHECK_FALSE(env.ratio_t_over_tdtc.has_value());
}

TEST_CASE("decay time of an exponential envelope") {
  const double h = 0.05, f = 0.5, tau = 37.0;
  std::vector<double> t, x;
  for (int i = 0; i < 6000; ++i) {
    t.push_back(i * h);
    x.push_back(std::exp(-t.back() / tau) * std::cos(2 * kPi * f * t.back()));
  }
  const auto env = envelope_analysis(t, x, f);
  REQUIRE(env.decay_time.has_value());
  CHECK(*env.decay_time == doctest::Approx(tau).epsilon(0.05));
  EnvelopeResult flat;
  flat.envelope_values = {1, 1, 1};
  flat.envelope_times = {0, 1, 2};
  CHECK_FALSE(decay_time(flat).has_value());
}

TEST_CASE("envelope preconditions") {
  std::vector<double> t{0, 0.05, 0.1}, x{1, 0, 1};
  CHECK_THROWS_AS(envelope_analysis(t, x, 0.5), DomainError);
  CHECK_THROWS_AS(envelope_analysis(t, std::vector<double>{1, 2}, 0.5), DimensionError);
  CHECK_THROWS_AS(envelope_analysis(t, x, 0.0), DomainError);
}
