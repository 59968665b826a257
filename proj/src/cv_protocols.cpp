#include "o3sim/cv/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "o3sim/cv/gates.hpp"

namespace o3sim::cv {

namespace {

constexpr double kPi4 = std::numbers::pi / 4.0;

GateSpec bs(int a, int b, double theta = kPi4) {
  return {GateKind::beam_splitter, theta, a, b};
}
GateSpec fourier(int m) { return {GateKind::fourier, 0.0, m}; }
GateSpec fourier_inv(int m) {
  return {GateKind::rotate, -std::numbers::pi / 2.0, m};
}

}  // namespace

void ProtocolConfig::validate() const {
  model.validate();
  sphere.validate();
  if (sphere.n_sites != model.n_sites)
    throw std::invalid_argument("sphere/model n_sites mismatch");
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  if (gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument("gamma must be in (0, 1)");
  if (capital_gamma == 0.0)
    throw std::invalid_argument("capital_gamma must be nonzero");
  if (trotter_steps < 0)
    throw std::invalid_argument("trotter_steps must be >= 0");
}

QumodeRegister prepare_omega_site(const ProtocolConfig& cfg) {
  cfg.validate();
  const double lam = cfg.sphere.lambda_cutoff;
  const double g = cfg.sphere.g;
  const double s = lam / (std::numbers::sqrt2 * g);

  QumodeRegister reg(4, cfg.n_max);  // modes 0..2 physical, 3 ancilla
  reg.leakage_threshold = cfg.leakage_threshold;
  const int b = 3;
  // U_ab = exp(-i (Lambda / sqrt(2) g) q_a^2 p_b), via cubic phase gates:
  //   F_b' BS_ba V_a(-Lambda/g) V_b(Lambda/g) BS_ab V_b(-Lambda/(sqrt2 g)) F_b
  // (rightmost first); the three U_ab commute.
  for (int a = 0; a < 3; ++a) {
    apply_gate(reg, fourier(b));
    apply_gate(reg, {GateKind::cubic_phase, -s, b});
    apply_gate(reg, bs(a, b));
    apply_gate(reg, {GateKind::cubic_phase, lam / g, b});
    apply_gate(reg, {GateKind::cubic_phase, -lam / g, a});
    apply_gate(reg, bs(b, a));
    apply_gate(reg, fourier_inv(b));
  }
  // ancilla translation U_b = exp(i g (Lambda/sqrt2)(1 + 2/Lambda^2) p_b)
  const double shift =
      -g * (lam / std::numbers::sqrt2) * (1.0 + 2.0 / (lam * lam));
  apply_gate(reg, {GateKind::displace, shift, b});
  auto [out, prob] = project_mode(reg, b, 0);
  (void)prob;
  return std::move(out);
}

QumodeRegister prepare_omega(const ProtocolConfig& cfg) {
  QumodeRegister reg = prepare_omega_site(cfg);
  for (int x = 1; x < cfg.model.n_sites; ++x)
    reg = QumodeRegister::tensor(reg, prepare_omega_site(cfg));
  return reg;
}

namespace {

// Imprints exp(-(alpha/2L) sum_x (phi(x)-phi(x+1))^2) one link and
// component at a time: CX(s) from both link ends (opposite signs) onto a
// fresh ancilla, then |0> post-selection, with s^2/4 = alpha/(2L).
QumodeRegister apply_link_correlator(QumodeRegister reg,
                                     const ProtocolConfig& cfg, double alpha) {
  const int L = cfg.model.n_sites;
  if (alpha == 0.0) return reg;
  const double s = std::sqrt(2.0 * alpha / L);
  for (int x = 0; x < L; ++x) {
    const int y = (x + 1) % L;
    for (int a = 0; a < 3; ++a) {
      reg.append_vacuum_mode();
      const int c = reg.n_modes() - 1;
      apply_gate(reg, {GateKind::cx, s, cfg.mode_of(x, a), c});
      apply_gate(reg, {GateKind::cx, -s, cfg.mode_of(y, a), c});
      auto [next, prob] = project_mode(reg, c, 0);
      (void)prob;
      reg = std::move(next);
    }
  }
  return reg;
}

}  // namespace

QumodeRegister prepare_cc(const ProtocolConfig& cfg, double alpha) {
  return apply_link_correlator(prepare_omega(cfg), cfg, alpha);
}

QumodeRegister prepare_cc_excited(const ProtocolConfig& cfg, double alpha) {
  QumodeRegister reg = prepare_omega(cfg);
  const int L = cfg.model.n_sites;
  // weak insertion of sum_x phi_3(x): CX(gamma) from every third
  // component onto one ancilla, then a single-photon post-selection
  reg.append_vacuum_mode();
  const int c = reg.n_modes() - 1;
  for (int x = 0; x < L; ++x)
    apply_gate(reg, {GateKind::cx, cfg.gamma, cfg.mode_of(x, 2), c});
  auto [picked, prob] = project_mode(reg, c, 1);
  (void)prob;  // O(gamma^2) by construction
  return apply_link_correlator(std::move(picked), cfg, alpha);
}

namespace {

// <q^2> of `mode` via the chosen number-operator identity
double quadrature_sq(const QumodeRegister& base, int mode,
                     const ProtocolConfig& cfg, InteractionMethod method) {
  const double G = cfg.capital_gamma;
  if (method == InteractionMethod::parameter_shift) {
    // (<N>_{+G} + <N>_{-G} - 2 <N>_0) / G^2 with P(+-G) on the mode
    double shifted[2];
    for (int sgn = 0; sgn < 2; ++sgn) {
      QumodeRegister reg = base;
      apply_gate(reg, {GateKind::quad_phase, sgn == 0 ? G : -G, mode});
      shifted[sgn] = expectation_number(reg, mode);
    }
    return (shifted[0] + shifted[1] - 2.0 * expectation_number(base, mode)) /
           (G * G);
  }
  // CX ancilla: q_c -> q_c + G q_mode on a vacuum ancilla, then
  // <q^2> = 2 <N_c> / G^2
  QumodeRegister reg = base;
  reg.append_vacuum_mode();
  const int c = reg.n_modes() - 1;
  apply_gate(reg, {GateKind::cx, G, mode, c});
  return 2.0 * expectation_number(reg, c) / (G * G);
}

}  // namespace

double measure_interaction_component(const QumodeRegister& reg,
                                     const ProtocolConfig& cfg,
                                     InteractionMethod method, int component) {
  cfg.validate();
  if (component < 0 || component > 2)
    throw std::invalid_argument("component must be 0..2");
  const int L = cfg.model.n_sites;
  double sum = 0.0;
  for (int x = 0; x < L; ++x) {
    const int y = (x + 1) % L;
    QumodeRegister work = reg;
    // after BS(pi/4) on (i, j) the first mode carries (q_i - q_j)/sqrt2,
    // so <q~^2> = <(q_i - q_j)^2>/2 and the half in the Hamiltonian's
    // 1/2 (dphi)^2 is already absorbed
    apply_gate(work, bs(cfg.mode_of(x, component), cfg.mode_of(y, component)));
    sum += quadrature_sq(work, cfg.mode_of(x, component), cfg, method);
  }
  return sum;
}

double measure_interaction_energy(const QumodeRegister& reg,
                                  const ProtocolConfig& cfg,
                                  InteractionMethod method) {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a)
    sum += measure_interaction_component(reg, cfg, method, a);
  return sum;
}

double measure_kinetic_component(const QumodeRegister& reg,
                                 const ProtocolConfig& cfg,
                                 KineticMethod method, int component) {
  cfg.validate();
  if (component < 0 || component > 2)
    throw std::invalid_argument("component must be 0..2");
  const int L = cfg.model.n_sites;
  // L_c with c = component couples the other two field components (i, j)
  const int i = (component + 1) % 3;
  const int j = (component + 2) % 3;
  double sum = 0.0;
  for (int x = 0; x < L; ++x) {
    const int mi = cfg.mode_of(x, i);
    const int mj = cfg.mode_of(x, j);
    QumodeRegister work = reg;
    apply_gate(work, fourier(mi));
    apply_gate(work, bs(mi, mj));
    // in this frame L_c = N_j - N_i exactly
    const double n1 = expectation_number_sq(work, mi);
    const double n2 = expectation_number_sq(work, mj);
    if (method == KineticMethod::pairwise) {
      sum += n1 + n2 - 2.0 * expectation_cross_number(work, mi, mj);
    } else {
      // split form: N_i + N_j is conserved by BS.F, so its square can be
      // read from the untransformed register
      const double tot = expectation_number_sq(reg, mi) +
                         expectation_number_sq(reg, mj) +
                         2.0 * expectation_cross_number(reg, mi, mj);
      sum += 2.0 * (n1 + n2) - tot;
    }
  }
  return sum / (2.0 * cfg.model.g_sq);
}

double measure_kinetic_energy(const QumodeRegister& reg,
                              const ProtocolConfig& cfg, KineticMethod method) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c)
    sum += measure_kinetic_component(reg, cfg, method, c);
  return sum;
}

EnergyReading measure_energy(const QumodeRegister& reg,
                             const ProtocolConfig& cfg, InteractionMethod im,
                             KineticMethod km) {
  EnergyReading out;
  const double shift = cfg.model.g_sq * cfg.model.n_sites;
  double per_dir[3];
  for (int a = 0; a < 3; ++a) {
    const double inter = measure_interaction_component(reg, cfg, im, a);
    const double kin = measure_kinetic_component(reg, cfg, km, a);
    per_dir[a] = 3.0 * (inter + kin) - shift;
    out.interaction += inter;
    out.kinetic += kin;
  }
  out.interaction -= shift;
  out.total = out.kinetic + out.interaction;
  const double lo = std::min({per_dir[0], per_dir[1], per_dir[2]});
  const double hi = std::max({per_dir[0], per_dir[1], per_dir[2]});
  out.anisotropy_spread = hi - lo;
  return out;
}

void trotter_evolve(QumodeRegister& reg, const ProtocolConfig& cfg) {
  cfg.validate();
  const int L = cfg.model.n_sites;
  const double dt = cfg.dt;
  const double g2 = cfg.model.g_sq;
  for (int step = 0; step < cfg.trotter_steps; ++step) {
    // interaction layer: exp(-i dt (q_x - q_{x+1})^2 / 2) per link/component
    for (int x = 0; x < L; ++x) {
      const int y = (x + 1) % L;
      for (int a = 0; a < 3; ++a) {
        const int mx = cfg.mode_of(x, a);
        const int my = cfg.mode_of(y, a);
        apply_gate(reg, bs(mx, my));
        apply_gate(reg, {GateKind::quad_phase, -2.0 * dt, mx});
        apply_gate(reg, bs(my, mx));
      }
    }
    // kinetic layer: per site, exp(-i dt L_c^2 / 2 g^2) for c = 3, 1, 2
    // via the exact Kerr/cross-Kerr string in the F/BS frame
    for (int x = 0; x < L; ++x) {
      for (int c = 0; c < 3; ++c) {
        const int mi = cfg.mode_of(x, (c + 1) % 3);
        const int mj = cfg.mode_of(x, (c + 2) % 3);
        apply_gate(reg, fourier(mi));
        apply_gate(reg, bs(mi, mj));
        apply_gate(reg, {GateKind::kerr, -dt / (2.0 * g2), mi});
        apply_gate(reg, {GateKind::kerr, -dt / (2.0 * g2), mj});
        apply_gate(reg, {GateKind::cross_kerr, dt / g2, mi, mj});
        apply_gate(reg, bs(mj, mi));
        apply_gate(reg, fourier_inv(mi));
      }
    }
  }
}

double return_probability(const ProtocolConfig& cfg, double t) {
  ProtocolConfig run = cfg;
  if (run.trotter_steps < 1) run.trotter_steps = 1;
  run.dt = t / run.trotter_steps;
  QumodeRegister reg = prepare_omega(run);
  if (t != 0.0) trotter_evolve(reg, run);
  // overlap with the photon-number vacuum
  return std::norm(reg.amplitudes()[0]);
}

}  // namespace o3sim::cv
