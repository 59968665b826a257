#include "o3sim/cv/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace o3sim::cv {

namespace {

constexpr cdouble kI{0.0, 1.0};

Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("generator eigendecomposition failed");
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(kI * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::cross_kerr:
    case GateKind::beam_splitter:
    case GateKind::cx:
    case GateKind::cz:
      return 2;
    default:
      return 1;
  }
}

Eigen::MatrixXcd annihilation_op(int n_max) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Eigen::MatrixXcd quadrature_q(int n_max) {
  const auto a = annihilation_op(n_max);
  return (a + a.adjoint()) / std::numbers::sqrt2;
}

Eigen::MatrixXcd quadrature_p(int n_max) {
  const auto a = annihilation_op(n_max);
  return kI * (a.adjoint() - a) / std::numbers::sqrt2;
}

Eigen::MatrixXcd gate_matrix(const GateSpec& spec, int n_max) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  const double s = spec.param;
  switch (spec.kind) {
    case GateKind::rotate:
    case GateKind::fourier: {
      const double th =
          spec.kind == GateKind::fourier ? std::numbers::pi / 2.0 : s;
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n_max, n_max);
      for (int n = 0; n < n_max; ++n) u(n, n) = std::exp(kI * (th * n));
      return u;
    }
    case GateKind::kerr: {
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n_max, n_max);
      for (int n = 0; n < n_max; ++n)
        u(n, n) = std::exp(kI * (s * double(n) * double(n)));
      return u;
    }
    case GateKind::cross_kerr: {
      const int d = n_max * n_max;
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
      for (int n1 = 0; n1 < n_max; ++n1)
        for (int n2 = 0; n2 < n_max; ++n2)
          u(n1 * n_max + n2, n1 * n_max + n2) =
              std::exp(kI * (s * double(n1) * double(n2)));
      return u;
    }
    case GateKind::squeeze: {
      const auto a = annihilation_op(n_max);
      const Eigen::MatrixXcd a2 = a * a;
      // exp(r (a'^2 - a^2)/2) = exp(i H), H = i r (a^2 - a'^2)/2
      return exp_i_hermitian(kI * (s / 2.0) * (a2 - a2.adjoint()));
    }
    case GateKind::displace:
      return exp_i_hermitian(-s * quadrature_p(n_max));
    case GateKind::quad_phase: {
      const auto q = quadrature_q(n_max);
      return exp_i_hermitian((s / 2.0) * q * q);
    }
    case GateKind::cubic_phase: {
      const auto q = quadrature_q(n_max);
      return exp_i_hermitian((s / 3.0) * q * q * q);
    }
    case GateKind::beam_splitter: {
      const auto a = annihilation_op(n_max);
      // exp(t (a b' - a' b)) = exp(i H), H = -i t (a b' - a' b)
      const Eigen::MatrixXcd ab = kron(a, a.adjoint());
      return exp_i_hermitian(-kI * s * (ab - ab.adjoint()));
    }
    case GateKind::cx: {
      const Eigen::MatrixXcd h =
          -s * kron(quadrature_q(n_max), quadrature_p(n_max));
      return exp_i_hermitian(h);
    }
    case GateKind::cz: {
      const Eigen::MatrixXcd h =
          s * kron(quadrature_q(n_max), quadrature_q(n_max));
      return exp_i_hermitian(h);
    }
  }
  throw std::logic_error("unhandled gate kind");
}

double apply_one_mode_matrix(QumodeRegister& reg, const Eigen::MatrixXcd& u,
                             int mode) {
  const int nm = reg.n_max();
  if (u.rows() != nm || u.cols() != nm)
    throw std::invalid_argument("one-mode matrix shape mismatch");
  const double before = reg.norm_sq();
  const std::int64_t st = reg.mode_stride(mode);
  const std::int64_t outer = reg.size() / (st * nm);
  auto amps = reg.amplitudes();
  using RowMat =
      Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (std::int64_t o = 0; o < outer; ++o) {
    Eigen::Map<RowMat> block(amps.data() + o * nm * st, nm, st);
    block = u * block;
  }
  const double loss = before - reg.norm_sq();
  reg.record_leakage(loss);
  return std::max(0.0, loss);
}

double apply_two_mode_matrix(QumodeRegister& reg, const Eigen::MatrixXcd& u,
                             int mode1, int mode2) {
  const int nm = reg.n_max();
  const std::int64_t d2 = std::int64_t(nm) * nm;
  if (u.rows() != d2 || u.cols() != d2)
    throw std::invalid_argument("two-mode matrix shape mismatch");
  if (mode1 == mode2) throw std::invalid_argument("targets must differ");

  // canonicalize to i < j; swapping modes permutes the gate's tensor axes
  Eigen::MatrixXcd up;
  const Eigen::MatrixXcd* um = &u;
  int i = mode1, j = mode2;
  if (i > j) {
    std::swap(i, j);
    up.resize(d2, d2);
    for (int r1 = 0; r1 < nm; ++r1)
      for (int r2 = 0; r2 < nm; ++r2)
        for (int c1 = 0; c1 < nm; ++c1)
          for (int c2 = 0; c2 < nm; ++c2)
            up(r2 * nm + r1, c2 * nm + c1) = u(r1 * nm + r2, c1 * nm + c2);
    um = &up;
  }

  const double before = reg.norm_sq();
  const std::int64_t sj = reg.mode_stride(j);
  const std::int64_t si = reg.mode_stride(i);
  const std::int64_t B = si / (sj * nm);  // block count between i and j
  const std::int64_t A = reg.size() / (si * nm);
  const std::int64_t C = sj;
  const std::int64_t rest = A * B * C;

  auto amps = reg.amplitudes();
  Eigen::MatrixXcd gathered(d2, rest);
  for (std::int64_t a = 0; a < A; ++a)
    for (int ni = 0; ni < nm; ++ni)
      for (std::int64_t b = 0; b < B; ++b)
        for (int nj = 0; nj < nm; ++nj) {
          const cdouble* src =
              amps.data() + ((a * nm + ni) * B + b) * (nm * C) + nj * C;
          const std::int64_t col0 = (a * B + b) * C;
          const std::int64_t row = ni * nm + nj;
          for (std::int64_t c = 0; c < C; ++c)
            gathered(row, col0 + c) = src[c];
        }
  gathered = (*um) * gathered;
  for (std::int64_t a = 0; a < A; ++a)
    for (int ni = 0; ni < nm; ++ni)
      for (std::int64_t b = 0; b < B; ++b)
        for (int nj = 0; nj < nm; ++nj) {
          cdouble* dst =
              amps.data() + ((a * nm + ni) * B + b) * (nm * C) + nj * C;
          const std::int64_t col0 = (a * B + b) * C;
          const std::int64_t row = ni * nm + nj;
          for (std::int64_t c = 0; c < C; ++c)
            dst[c] = gathered(row, col0 + c);
        }

  const double loss = before - reg.norm_sq();
  reg.record_leakage(loss);
  return std::max(0.0, loss);
}

double apply_gate(QumodeRegister& reg, const GateSpec& spec) {
  const auto u = gate_matrix(spec, reg.n_max());
  if (spec.arity() == 1) return apply_one_mode_matrix(reg, u, spec.target);
  return apply_two_mode_matrix(reg, u, spec.target, spec.target2);
}

}  // namespace o3sim::cv
