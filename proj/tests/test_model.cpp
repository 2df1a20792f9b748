#include <doctest.h>

#include "support.hpp"

using namespace smmdtc;

namespace {

std::vector<ModelSpec> model_grid() {
  std::vector<ModelSpec> out;
  oracle::SplitMix64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    ModelSpec m = support::small_model(rng.integer(1, 3), rng.integer(1, 3), rng.uniform(-5, 10));
    m.d_aniso = rng.uniform(0.2, 3.0);
    m.e_rhombic = trial % 3 == 0 ? rng.uniform(0.0, 0.5) : 0.0;
    m.omega = rng.uniform(5.0, 40.0);
    m.b_drive = rng.uniform(0.0, 1.5) * m.omega;
    m.b_static = rng.uniform(0.5, 1.5) * m.omega;
    m.coupling = trial % 4 == 1 ? Coupling::ising : Coupling::heisenberg;
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("static part matches the Kronecker-built reference") {
  for (const auto& m : model_grid()) {
    const auto h = build_static_part(m);
    CHECK(support::diff(h.matrix, oracle::static_hamiltonian(support::params_of(m))) < 1e-11);
    CHECK(hermiticity_defect(h.matrix) < 1e-13);
  }
}

TEST_CASE("lab Hamiltonian at several times") {
  for (const auto& m : model_grid()) {
    const LabFrameHamiltonian lab(m);
    for (double t : {0.0, 0.013, 0.2, 1.7}) {
      const auto ref = oracle::lab_hamiltonian(support::params_of(m), t);
      CHECK(support::diff(lab.at(t), ref) < 1e-11);
      CHECK(max_abs_diff(lab.at(t), build_static_part(m).matrix + drive_field(m, t).matrix) < 1e-11);
    }
  }
}

TEST_CASE("drive field at t = 0 points along x") {
  ModelSpec m = support::small_model(2, 2, 1.0);
  const auto ops = chain_spin_operators(m.spin, m.n_sites);
  CHECK(max_abs_diff(drive_field(m, 0.0).matrix, m.b_drive * ops.total_sx()) < 1e-12);
  const double quarter = 0.25 * m.period();
  CHECK(max_abs_diff(drive_field(m, quarter).matrix, m.b_drive * ops.total_sy()) < 1e-12);
  CHECK_THROWS_AS(drive_field(m, -1e-3), DomainError);
}

TEST_CASE("rotating-frame Hamiltonian") {
  for (auto m : model_grid()) {
    m.e_rhombic = 0.0;
    m.coupling = Coupling::heisenberg;
    CHECK(support::diff(build_rotating_frame(m).matrix, oracle::rotating_hamiltonian(support::params_of(m))) < 1e-11);
  }
  ModelSpec e = support::small_model(2, 2, 1.0);
  e.e_rhombic = 0.1;
  CHECK_THROWS_AS(build_rotating_frame(e), UnsupportedConfiguration);
}

TEST_CASE("rotating frame reproduces the lab generator") {
  // i dR/dt R^dag + R H(t) R^dag = H_F + const for R = exp(i w t Sz_tot)
  ModelSpec m = support::small_model(2, 2, 0.7);
  const auto p = support::params_of(m);
  const double t = 0.37;
  const oracle::Mat r = oracle::rotation(p.two_s, p.n, p.omega, t);
  const oracle::Mat lhs = r * oracle::lab_hamiltonian(p, t) * oracle::adjoint(r) -
                          oracle::cd(p.omega) * oracle::total(p.two_s, p.n, oracle::Axis::z);
  CHECK(support::diff(build_rotating_frame(m).matrix, lhs) < 1e-10);
}

TEST_CASE("single-SMM spectrum") {
  SUBCASE("S = 1 closed form") {
    for (double d : {0.5, 1.0, 2.0})
      for (double b : {0.0, 0.3, 1.0, 15.7}) {
        const auto s = single_smm_spectrum(SpinQuantum(2), d, b);
        const auto ref = oracle::s1_levels(d, b);
        std::vector<double> sorted = ref;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < 3; ++i) CHECK(s.levels[i] == doctest::Approx(sorted[i]).epsilon(1e-13));
        CHECK(s.gap == doctest::Approx(sorted[1] - sorted[0]).epsilon(1e-12));
      }
  }
  SUBCASE("higher spins against Sturm bisection") {
    for (int two_s = 1; two_s <= 10; ++two_s)
      for (double b : {0.1, 2.0, 15.0}) {
        const auto s = single_smm_spectrum(SpinQuantum(two_s), 1.0, b);
        const auto ref = oracle::single_smm_levels(two_s, 1.0, b);
        REQUIRE(s.levels.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(s.levels[i] == doctest::Approx(ref[i]).epsilon(1e-12));
        CHECK(s.gap == doctest::Approx(ref[1] - ref[0]).epsilon(1e-10));
      }
  }
  CHECK_THROWS_AS(single_smm_spectrum(SpinQuantum(2), 0.0, 1.0), DomainError);
}

TEST_CASE("model validation") {
  ModelSpec m;
  CHECK_NOTHROW(m.validate());
  CHECK(m.hilbert_dim() == 243);
  CHECK(m.period() == doctest::Approx(0.2));
  m.n_sites = 0;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m = ModelSpec{};
  m.d_aniso = 0.0;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m = ModelSpec{};
  m.omega = -1.0;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m = ModelSpec{};
  m.e_rhombic = -0.1;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m = ModelSpec{};
  m.n_sites = 8;
  CHECK_THROWS_AS(m.validate(), DimensionError);
}
