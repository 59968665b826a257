#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace o3sim::cv {

using cdouble = std::complex<double>;

// Fock-truncated multi-mode state vector. Amplitudes are stored
// mode-major (mode 0 varies slowest); each mode holds photon numbers
// 0 .. n_max-1. Gate truncation losses (leakage) and post-selection
// probabilities are tracked in metadata.
class QumodeRegister {
 public:
  // default memory cap: 2e8 amplitudes (~3.2 GB of complex doubles)
  static constexpr std::int64_t kAmpCap = 200'000'000;

  // constructs the vacuum |0...0>
  QumodeRegister(int n_modes, int n_max);

  int n_modes() const { return n_modes_; }
  int n_max() const { return n_max_; }
  std::int64_t size() const { return static_cast<std::int64_t>(amps_.size()); }
  std::span<cdouble> amplitudes() { return amps_; }
  std::span<const cdouble> amplitudes() const { return amps_; }
  std::int64_t mode_stride(int mode) const;

  double norm_sq() const;
  void normalize();

  // cumulative truncation loss across all gates applied so far
  double leakage() const { return leakage_; }
  void record_leakage(double loss);
  // abort threshold checked after each gate
  double leakage_threshold = 1e-3;

  // cumulative probability of all post-selections applied so far
  double post_selection_probability() const { return post_prob_; }
  void record_post_selection(double probability) { post_prob_ *= probability; }

  // appends a fresh vacuum mode as the new fastest axis
  void append_vacuum_mode();

  // combined state a (x) b; metadata multiplies
  static QumodeRegister tensor(const QumodeRegister& a,
                               const QumodeRegister& b);

 private:
  int n_modes_;
  int n_max_;
  std::vector<cdouble> amps_;
  double leakage_ = 0.0;
  double post_prob_ = 1.0;
};

// <a|b>; shapes must match.
cdouble overlap(const QumodeRegister& a, const QumodeRegister& b);

// Normalized expectation values of photon-number observables.
double expectation_number(const QumodeRegister& reg, int mode);
double expectation_number_sq(const QumodeRegister& reg, int mode);
double expectation_cross_number(const QumodeRegister& reg, int mode_i,
                                int mode_j);

// Projects one mode onto photon number n; returns the reduced register
// (renormalized, with the post-selection recorded) and the probability.
// Throws if the probability falls below 1e-12.
std::pair<QumodeRegister, double> project_mode(const QumodeRegister& reg,
                                               int mode, int n);

}  // namespace o3sim::cv
