#pragma once

#include "o3sim/basis.hpp"
#include "o3sim/cv/register.hpp"
#include "o3sim/radial.hpp"

namespace o3sim::cv {

// Shared knobs for the prepared-state and evolution circuits. Physical
// modes are site-major: mode 3*x + a holds field component a (0,1,2) of
// site x. Ancillas are appended one at a time (peak mode count 3L + 1).
struct ProtocolConfig {
  ModelParams model;
  SphereBasisSpec sphere;
  int n_max = 10;
  double gamma = 1e-3;          // excited-state coupling (small)
  double capital_gamma = 0.1;   // measurement gate strength
  double dt = 0.1;              // Trotter step
  int trotter_steps = 1;
  double leakage_threshold = 1e-3;

  void validate() const;
  int mode_of(int site, int component) const { return 3 * site + component; }
};

// |omega(Lambda)> for a single site: three modes whose radial profile is
// psi_Lambda(r), built from vacuum with the cubic-phase entangler circuit
// plus an ancilla displacement and a |0> post-selection.
QumodeRegister prepare_omega_site(const ProtocolConfig& cfg);

// product state over all sites (3L modes)
QumodeRegister prepare_omega(const ProtocolConfig& cfg);

// CC ground state: the Gaussian link correlator exp(-(alpha/2L)
// sum_x (phi(x)-phi(x+1))^2) imprinted on |Omega(Lambda)> via CX pairs
// onto an ancilla post-selected on |0>, one link and component at a time.
QumodeRegister prepare_cc(const ProtocolConfig& cfg, double alpha);

// First-excited Ansatz: a weak-CX insertion of sum_x phi_3(x) (ancilla
// post-selected on one photon, amplitude O(gamma)), then the same link
// correlator as prepare_cc.
QumodeRegister prepare_cc_excited(const ProtocolConfig& cfg, double alpha);

enum class InteractionMethod { parameter_shift, cx_ancilla };
enum class KineticMethod { pairwise, split };

// sum_x (1/2) <(phi(x) - phi(x+1))^2>, assembled from per-link,
// per-component <q~^2> readings through number-operator identities.
double measure_interaction_energy(const QumodeRegister& reg,
                                  const ProtocolConfig& cfg,
                                  InteractionMethod method);
// per-component variant (component in 0..2), used for anisotropy bars
double measure_interaction_component(const QumodeRegister& reg,
                                     const ProtocolConfig& cfg,
                                     InteractionMethod method, int component);

// (1/2 g^2) sum_x sum_c <L_c^2(x)> via the F/BS conjugation.
double measure_kinetic_energy(const QumodeRegister& reg,
                              const ProtocolConfig& cfg, KineticMethod method);
double measure_kinetic_component(const QumodeRegister& reg,
                                 const ProtocolConfig& cfg,
                                 KineticMethod method, int component);

struct EnergyReading {
  double total = 0.0;        // kinetic + interaction
  double kinetic = 0.0;
  double interaction = 0.0;  // sum_x (1/2)<(dphi)^2> - g^2 L
  // spread of the three per-Cartesian-direction energies (x3 each);
  // nonzero spread reflects truncation error
  double anisotropy_spread = 0.0;
};

EnergyReading measure_energy(const QumodeRegister& reg,
                             const ProtocolConfig& cfg,
                             InteractionMethod im = InteractionMethod::cx_ancilla,
                             KineticMethod km = KineticMethod::split);

// One first-order Trotter step per cfg.dt, cfg.trotter_steps times:
// interaction layer (BS / quad-phase per link and component) first, then
// the per-site kinetic strings U_31 U_23 U_12.
void trotter_evolve(QumodeRegister& reg, const ProtocolConfig& cfg);

// |<Fock vacuum| e^{-iHt} |Omega(Lambda)>|^2 with t = dt * trotter_steps
// (dt is derived from t here; cfg.trotter_steps sets the step count).
double return_probability(const ProtocolConfig& cfg, double t);

}  // namespace o3sim::cv
