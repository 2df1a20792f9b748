#pragma once

#include <string>
#include <vector>

#include "smmdtc/linalg.hpp"
#include "smmdtc/spin_algebra.hpp"

namespace smmdtc {

enum class Coupling { heisenberg, ising };

// Physical parameters of the driven open chain. Energies are in units of the
// axial anisotropy D, with hbar = 1, so omega is an angular frequency in the
// same units and the drive period is 2*pi/omega.
struct ModelSpec {
  SpinQuantum spin{2};
  int n_sites = 5;
  double j_exchange = 1.0;
  double d_aniso = 1.0;
  double e_rhombic = 0.0;
  double b_drive = 5.0 * kPi;
  double b_static = 10.0 * kPi;
  double omega = 10.0 * kPi;
  Coupling coupling = Coupling::heisenberg;

  // Throws DomainError / DimensionError on an invalid record.
  void validate() const;
  double period() const { return 2.0 * kPi / omega; }
  std::size_t hilbert_dim() const;
};

struct HamiltonianTerm {
  std::string label;
  CMatrix matrix;
};

// -J sum S_j.S_{j+1} (or -J sum Sz Sz) - sum [D Sz^2 + E Sx^2 - E Sy^2] + B' sum Sz
HamiltonianTerm build_static_part(const ModelSpec& spec);

// B sum_j [cos(wt) S_j^x + sin(wt) S_j^y], the circular drive.
HamiltonianTerm drive_field(const ModelSpec& spec, double t);

// Static Hamiltonian in the frame co-rotating with the drive:
// -J sum S_j.S_{j+1} - D sum (S_j^z)^2 + B sum S_j^x + (B' - w) sum S_j^z.
// Throws UnsupportedConfiguration when e_rhombic != 0.
HamiltonianTerm build_rotating_frame(const ModelSpec& spec);

struct SingleSmmSpectrum {
  std::vector<double> levels;  // ascending
  double gap = 0.0;            // E_e1 - E_g
};

// Spectrum of -d (S^z)^2 + b S^x for one magnet.
SingleSmmSpectrum single_smm_spectrum(SpinQuantum s, double d, double b);

// H(t) sampled by the stepping integrator.
class TimeDependentHamiltonian {
 public:
  virtual ~TimeDependentHamiltonian() = default;
  virtual Eigen::Index dim() const = 0;
  virtual void evaluate(double t, CMatrix& out) const = 0;
};

class StaticHamiltonian final : public TimeDependentHamiltonian {
 public:
  explicit StaticHamiltonian(CMatrix h);
  Eigen::Index dim() const override { return h_.rows(); }
  void evaluate(double, CMatrix& out) const override { out = h_; }
  const CMatrix& matrix() const { return h_; }

 private:
  CMatrix h_;
};

// Lab-frame H(t) = static part + drive_field(t), with the static part and the
// total transverse operators cached so evaluation is O(dim^2).
class LabFrameHamiltonian final : public TimeDependentHamiltonian {
 public:
  explicit LabFrameHamiltonian(const ModelSpec& spec);
  Eigen::Index dim() const override { return static_part_.rows(); }
  void evaluate(double t, CMatrix& out) const override;
  CMatrix at(double t) const;

 private:
  CMatrix static_part_;
  CMatrix total_sx_;
  CMatrix total_sy_;
  double b_drive_;
  double omega_;
};

}  // namespace smmdtc
