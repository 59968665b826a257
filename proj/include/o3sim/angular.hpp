#pragma once

// Wigner 3-j symbols (Racah sum formula) and the spherical matrix elements
// <l1,m1| X_M |l2,m2> of the unit-vector components that build the O(3)
// rotor interaction n(x).n(x+1).

namespace o3sim {

// Wigner 3-j symbol for general half-integer arguments, evaluated with the
// Racah single-sum formula and log-factorial tables. Accurate to double
// precision for j <= 20. Returns 0 when a selection rule fails; throws
// std::invalid_argument for negative j, |m| > j, or non-half-integer input.
double wigner_3j(double j1, double j2, double j3,
                 double m1, double m2, double m3);

// <l1,m1| X_M |l2,m2> with X_0 = n_z, X_{+-1} = -+ (n_x +- i n_y)/sqrt(2):
//   (-1)^{m1} sqrt((2l1+1)(2l2+1)) 3j(l1,1,l2;0,0,0) 3j(l1,1,l2;-m1,M,m2).
// Vanishes unless |l1-l2| = 1 and m1 = m2 + M.
double x_matrix_element(int l1, int m1, int M, int l2, int m2);

}  // namespace o3sim
