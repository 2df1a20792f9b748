#include "smmdtc/model.hpp"

#include <cmath>

#include "smmdtc/errors.hpp"

namespace smmdtc {

void ModelSpec::validate() const {
  if (n_sites < 1) throw DomainError("model: n_sites must be >= 1");
  if (!(d_aniso > 0.0) || !std::isfinite(d_aniso)) throw DomainError("model: d_aniso must be > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("model: omega must be > 0");
  if (!(e_rhombic >= 0.0) || !std::isfinite(e_rhombic)) {
    throw DomainError("model: e_rhombic must be >= 0");
  }
  if (!std::isfinite(j_exchange) || !std::isfinite(b_drive) || !std::isfinite(b_static)) {
    throw DomainError("model: energies must be finite");
  }
  chain_dimension(spin.dim(), n_sites);
}

std::size_t ModelSpec::hilbert_dim() const { return chain_dimension(spin.dim(), n_sites); }

namespace {

CMatrix exchange_term(const ChainSpinOperators& ops, Coupling coupling, double j) {
  const auto dim = static_cast<Eigen::Index>(ops.dim());
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int site = 0; site + 1 < ops.n_sites; ++site) {
    h.noalias() += ops.sz[site] * ops.sz[site + 1];
    if (coupling == Coupling::heisenberg) {
      h.noalias() += ops.sx[site] * ops.sx[site + 1];
      h.noalias() += ops.sy[site] * ops.sy[site + 1];
    }
  }
  return -j * h;
}

CMatrix axial_term(const ChainSpinOperators& ops, double d) {
  const auto dim = static_cast<Eigen::Index>(ops.dim());
  CMatrix h = CMatrix::Zero(dim, dim);
  for (const auto& sz : ops.sz) h.noalias() += sz * sz;
  return -d * h;
}

}  // namespace

HamiltonianTerm build_static_part(const ModelSpec& spec) {
  spec.validate();
  const auto ops = chain_spin_operators(spec.spin, spec.n_sites);
  CMatrix h = exchange_term(ops, spec.coupling, spec.j_exchange) + axial_term(ops, spec.d_aniso);
  if (spec.e_rhombic != 0.0) {
    for (int j = 0; j < spec.n_sites; ++j) {
      h.noalias() -= spec.e_rhombic * (ops.sx[j] * ops.sx[j]);
      h.noalias() += spec.e_rhombic * (ops.sy[j] * ops.sy[j]);
    }
  }
  h += spec.b_static * ops.total_sz();
  return {"static", std::move(h)};
}

HamiltonianTerm drive_field(const ModelSpec& spec, double t) {
  spec.validate();
  if (t < 0.0) throw DomainError("drive_field: t must be >= 0");
  const auto ops = chain_spin_operators(spec.spin, spec.n_sites);
  const double phase = spec.omega * t;
  CMatrix h = spec.b_drive * (std::cos(phase) * ops.total_sx() + std::sin(phase) * ops.total_sy());
  return {"drive", std::move(h)};
}

HamiltonianTerm build_rotating_frame(const ModelSpec& spec) {
  spec.validate();
  if (spec.e_rhombic != 0.0) {
    throw UnsupportedConfiguration(
        "rotating frame requires e_rhombic == 0: the rhombic term does not commute with the "
        "frame rotation about z");
  }
  const auto ops = chain_spin_operators(spec.spin, spec.n_sites);
  CMatrix h = exchange_term(ops, spec.coupling, spec.j_exchange) + axial_term(ops, spec.d_aniso);
  h += spec.b_drive * ops.total_sx();
  h += (spec.b_static - spec.omega) * ops.total_sz();
  return {"rotating_frame", std::move(h)};
}

SingleSmmSpectrum single_smm_spectrum(SpinQuantum s, double d, double b) {
  if (!(d > 0.0)) throw DomainError("single_smm_spectrum: d must be > 0");
  const auto ops = spin_matrices(s);
  const CMatrix h = -d * (ops.sz * ops.sz) + b * ops.sx;
  const auto eig = eigh(h);
  SingleSmmSpectrum out;
  out.levels.assign(eig.values.data(), eig.values.data() + eig.values.size());
  out.gap = out.levels.size() > 1 ? out.levels[1] - out.levels[0] : 0.0;
  return out;
}

StaticHamiltonian::StaticHamiltonian(CMatrix h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) throw DimensionError("StaticHamiltonian: matrix is not square");
}

LabFrameHamiltonian::LabFrameHamiltonian(const ModelSpec& spec)
    : static_part_(build_static_part(spec).matrix),
      b_drive_(spec.b_drive),
      omega_(spec.omega) {
  const auto ops = chain_spin_operators(spec.spin, spec.n_sites);
  total_sx_ = ops.total_sx();
  total_sy_ = ops.total_sy();
}

void LabFrameHamiltonian::evaluate(double t, CMatrix& out) const {
  const double phase = omega_ * t;
  out = static_part_;
  out += (b_drive_ * std::cos(phase)) * total_sx_;
  out += (b_drive_ * std::sin(phase)) * total_sy_;
}

CMatrix LabFrameHamiltonian::at(double t) const {
  CMatrix out;
  evaluate(t, out);
  return out;
}

}  // namespace smmdtc
