#include "cavnet/liouville.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "cavnet/error.hpp"

namespace cavnet {

namespace {

void check_compatible(const RateSet& rates, const Basis& basis) {
  rates.validate();
  if (rates.n_sites != basis.n_sites())
    throw SpecError("basis", "rates describe " + std::to_string(rates.n_sites) +
                                 " sites, basis has " + std::to_string(basis.n_sites()));
}

/// Network operator |to><from| lifted to the full basis (identity on the ancilla).
SparseMatrix lifted_transition(const Basis& basis, const Label& to, const Label& from) {
  std::vector<Eigen::Triplet<Complex>> entries;
  for (int a = 0; a < basis.ancilla_levels(); ++a) {
    const int anc = basis.has_ancilla() ? a : -1;
    Label t = to;
    Label f = from;
    t.ancilla = anc;
    f.ancilla = anc;
    entries.emplace_back(basis.index_of(t), basis.index_of(f), Complex(1.0, 0.0));
  }
  SparseMatrix op(basis.dim(), basis.dim());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

/// Kronecker product a (x) b of dense matrices.
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::string format_defect(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Index step_count(double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw SpecError("dt", "must be a positive finite step");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw SpecError("t_end", "must be >= 0");
  const double ratio = t_end / dt;
  const auto steps = static_cast<Index>(std::llround(ratio));
  if (std::abs(static_cast<double>(steps) * dt - t_end) > 1e-9 * std::max(1.0, t_end))
    throw SpecError("t_end", "must be a whole number of steps of dt");
  return steps;
}

Trajectory propagate(const DensityMatrix& rho0, const Liouvillian& L, double t_end, double dt,
                     const Matrix& step_map, const EvolveOptions& options) {
  const Basis& basis = L.basis();
  const Index dim = basis.dim();
  const Index steps = step_count(t_end, dt);
  if (options.record_stride == 0) throw SpecError("record_stride", "must be >= 1");
  const auto stride = static_cast<Index>(options.record_stride);

  // Diagonal positions of the detector site and the sink in vec(rho).
  std::vector<Index> detector_slots;
  std::vector<Index> sink_slots;
  const bool detecting = L.detector_rate() > 0.0;
  for (int a = 0; a < basis.ancilla_levels(); ++a) {
    if (detecting) detector_slots.push_back(basis.site(L.detector_site(), a) * (dim + 1));
    if (basis.has_sink()) sink_slots.push_back(basis.sink(a) * (dim + 1));
  }
  const double flux_rate = 2.0 * L.detector_rate() * L.frequency_scale();

  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data().data(), dim * dim);
  auto sum_slots = [&v](const std::vector<Index>& slots) {
    double s = 0.0;
    for (Index k : slots) s += v(k).real();
    return s;
  };
  auto flux = [&] { return detecting ? flux_rate * std::max(0.0, sum_slots(detector_slots)) : 0.0; };

  Trajectory traj{basis, {}, {}, {}, 0.0};
  const auto n_records = static_cast<std::size_t>(steps / stride + 2);
  traj.times.reserve(n_records);
  traj.states.reserve(n_records);
  traj.sink_probability.reserve(n_records);

  const double sink0 = sum_slots(sink_slots);
  double integral = 0.0;

  auto record = [&](double t) {
    Matrix rho = Eigen::Map<const Matrix>(v.data(), dim, dim);
    if (options.validate_states) {
      const Diagnostics diag = validate(rho);
      if (!within_tolerance(diag))
        throw NumericalError(t, "state failed validation (hermiticity " +
                                    format_defect(diag.hermiticity_defect) + ", trace " +
                                    format_defect(diag.trace_defect) + ", min eigenvalue " +
                                    format_defect(diag.min_eigenvalue) + ")");
    }
    traj.times.push_back(t);
    traj.states.push_back(std::move(rho));
    traj.sink_probability.push_back(integral);
  };

  record(0.0);
  double f_prev = flux();
  Eigen::VectorXcd next(v.size());
  for (Index step = 1; step <= steps; ++step) {
    next.noalias() = step_map * v;
    v.swap(next);
    const double t = static_cast<double>(step) * dt;
    if (!v.allFinite()) throw NumericalError(t, "non-finite density matrix entries");

    const double f = flux();
    integral += 0.5 * dt * (f_prev + f);
    f_prev = f;
    if (basis.has_sink() && detecting) {
      const double defect = std::abs(integral - (sum_slots(sink_slots) - sink0));
      traj.max_quadrature_defect = std::max(traj.max_quadrature_defect, defect);
    }
    if (step % stride == 0 || step == steps) record(t);
  }
  return traj;
}

void check_initial(const DensityMatrix& rho0, const Liouvillian& L) {
  if (!(rho0.basis() == L.basis())) throw SpecError("rho0", "basis differs from the generator's");
  const Diagnostics diag = validate(rho0);
  if (!within_tolerance(diag)) throw SpecError("rho0", "initial state is not a valid density matrix");
}

}  // namespace

Matrix build_hamiltonian(const RateSet& rates, const Basis& basis) {
  check_compatible(rates, basis);
  Matrix h = Matrix::Zero(basis.dim(), basis.dim());
  for (const auto& [pair, g] : rates.couplings) {
    for (int a = 0; a < basis.ancilla_levels(); ++a) {
      const Index k = basis.site(pair.first, a);
      const Index j = basis.site(pair.second, a);
      h(k, j) = g;
      h(j, k) = std::conj(g);
    }
  }
  return h;
}

Liouvillian build_liouvillian(const RateSet& rates, const Basis& basis, Conventions conv) {
  if (!(conv.frequency_scale > 0.0)) throw SpecError("frequency_scale", "must be > 0");
  Liouvillian L(basis);
  L.hamiltonian_ = build_hamiltonian(rates, basis);
  L.scale_ = conv.frequency_scale;
  L.detector_rate_ = rates.detector_rate;
  L.detector_site_ = rates.detector_site;

  if (rates.detector_rate > 0.0 && !basis.has_sink())
    throw SpecError("basis", "detector rate is nonzero but the basis has no sink");

  const Label vac{LabelKind::Vacuum, 0, -1};
  const Label sink{LabelKind::Sink, 0, -1};
  for (int i = 1; i <= rates.n_sites; ++i) {
    const Label site{LabelKind::Site, i, -1};
    const auto idx = static_cast<std::size_t>(i - 1);
    if (rates.dissipation[idx] > 0.0)
      L.channels_.push_back({JumpChannel::Kind::Dissipation, i, rates.dissipation[idx],
                             lifted_transition(basis, vac, site)});
    if (rates.dephasing[idx] > 0.0)
      L.channels_.push_back({JumpChannel::Kind::Dephasing, i, rates.dephasing[idx],
                             lifted_transition(basis, site, site)});
  }
  if (rates.detector_rate > 0.0) {
    const Label source{LabelKind::Site, rates.detector_site, -1};
    L.channels_.push_back({JumpChannel::Kind::Detection, rates.detector_site, rates.detector_rate,
                           lifted_transition(basis, sink, source)});
  }

  const double s = L.scale_;
  L.drift_ = Complex(0.0, -s) * L.hamiltonian_;
  for (const JumpChannel& ch : L.channels_) {
    const SparseMatrix ldl = ch.op.adjoint() * ch.op;
    L.drift_ -= s * ch.rate * Matrix(ldl);
  }
  return L;
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  Matrix out = drift_ * rho;
  out += rho * drift_.adjoint();
  for (const JumpChannel& ch : channels_) {
    const Matrix left = ch.op * rho;
    out += (2.0 * scale_ * ch.rate) * (left * ch.op.adjoint());
  }
  return out;
}

Matrix Liouvillian::superoperator() const {
  const Index d = basis_.dim();
  const Matrix id = Matrix::Identity(d, d);
  Matrix s = kron(id, drift_) + kron(drift_.conjugate(), id);
  for (const JumpChannel& ch : channels_) {
    const Matrix op(ch.op);
    s += (2.0 * scale_ * ch.rate) * kron(op.conjugate(), op);
  }
  return s;
}

Matrix rk4_step(const Liouvillian& L, const Matrix& rho, double dt) {
  const Matrix k1 = L.apply(rho);
  const Matrix k2 = L.apply(rho + 0.5 * dt * k1);
  const Matrix k3 = L.apply(rho + 0.5 * dt * k2);
  const Matrix k4 = L.apply(rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& L, double t_end, double dt,
                  EvolveOptions options) {
  check_initial(rho0, L);
  step_count(t_end, dt);
  // For a time-independent generator one RK4 step is exactly the degree-4
  // Taylor polynomial of dt*L, so the stage arithmetic is folded into one map.
  const Matrix h = dt * L.superoperator();
  const Matrix id = Matrix::Identity(h.rows(), h.cols());
  Matrix step_map = id + h / 4.0;
  step_map = id + (h / 3.0) * step_map;
  step_map = id + (h / 2.0) * step_map;
  step_map = id + h * step_map;
  return propagate(rho0, L, t_end, dt, step_map, options);
}

Trajectory evolve_exact(const DensityMatrix& rho0, const Liouvillian& L, double t_end, double dt,
                        EvolveOptions options) {
  check_initial(rho0, L);
  step_count(t_end, dt);
  const Matrix step_map = (dt * L.superoperator()).exp();
  return propagate(rho0, L, t_end, dt, step_map, options);
}

double sink_probability_of(const Trajectory& traj) {
  return traj.sink_probability.empty() ? 0.0 : traj.sink_probability.back();
}

}  // namespace cavnet
