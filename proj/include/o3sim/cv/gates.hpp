#pragma once

#include <Eigen/Dense>

#include "o3sim/cv/register.hpp"

namespace o3sim::cv {

// Gate catalogue with the conventions (q = (a' + a)/sqrt(2),
// p = i(a' - a)/sqrt(2), N = a'a):
//   squeeze        S(r)  = exp(r (a'^2 - a^2) / 2)
//   displace       D(x)  = exp(-i x p)            (q -> q + x)
//   rotate         R(t)  = exp(i N t)
//   fourier        F     = R(pi/2)
//   quad_phase     P(s)  = exp(i s q^2 / 2)
//   cubic_phase    V(s)  = exp(i s q^3 / 3)
//   kerr           K(s)  = exp(i s N^2)
//   cross_kerr     CK(s) = exp(i s N_1 N_2)
//   beam_splitter  BS(t) = exp(t (a b' - a' b))   (a -> cos t a - sin t b)
//   cx             CX(s) = exp(-i s q_a p_b)      (q_b -> q_b + s q_a)
//   cz             CZ(s) = exp(i s q_a q_b)
enum class GateKind {
  squeeze,
  displace,
  rotate,
  fourier,
  quad_phase,
  cubic_phase,
  kerr,
  cross_kerr,
  beam_splitter,
  cx,
  cz,
};

int gate_arity(GateKind kind);  // 1 or 2

struct GateSpec {
  GateKind kind = GateKind::fourier;
  double param = 0.0;  // ignored for fourier
  int target = 0;
  int target2 = -1;  // second mode for 2-mode kinds

  int arity() const { return gate_arity(kind); }
};

// Truncated single-mode operators on |0> .. |n_max-1>.
Eigen::MatrixXcd annihilation_op(int n_max);
Eigen::MatrixXcd quadrature_q(int n_max);
Eigen::MatrixXcd quadrature_p(int n_max);

// The gate's unitary matrix: n_max x n_max for 1-mode kinds, n_max^2 x
// n_max^2 (first target = slower index) for 2-mode kinds. Number-diagonal
// kinds are built by direct phase assignment; everything else by
// eigendecomposition of the Hermitian generator, so every returned matrix
// is exactly unitary at the truncated dimension.
Eigen::MatrixXcd gate_matrix(const GateSpec& spec, int n_max);

// Applies the gate, records truncation leakage in the register, and
// returns this application's leakage.
double apply_gate(QumodeRegister& reg, const GateSpec& spec);

// Generic matrix application (used by gates and by test oracles).
double apply_one_mode_matrix(QumodeRegister& reg, const Eigen::MatrixXcd& u,
                             int mode);
double apply_two_mode_matrix(QumodeRegister& reg, const Eigen::MatrixXcd& u,
                             int mode1, int mode2);

}  // namespace o3sim::cv
