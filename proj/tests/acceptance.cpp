// Acceptance gate: nine numbered criteria, one [PASS]/[FAIL] line each.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "o3sim/basis.hpp"
#include "o3sim/cc.hpp"
#include "o3sim/cv/gates.hpp"
#include "o3sim/cv/protocols.hpp"
#include "o3sim/cv/register.hpp"
#include "o3sim/optimize.hpp"
#include "o3sim/rotor.hpp"
#include "o3sim/sphere.hpp"
#include "o3sim/spectra.hpp"

using namespace o3sim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

std::string fmt(const char* f, auto... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

MinimizeResult minimize_ground_closed(double g_sq) {
  return minimize_scalar(
      [g_sq](double a) { return cc_energy_L2_closed_form(g_sq, a); }, 1e-6,
      4.0 * g_sq, 1e-9);
}

MinimizeResult minimize_excited_closed(double g_sq) {
  return minimize_scalar(
      [g_sq](double a) { return cc_excited_L2_closed_form(g_sq, a); }, 1e-6,
      4.0 * g_sq, 1e-9);
}

// ---------------------------------------------------------------- 1
Outcome criterion1() {
  const auto m = minimize_ground_closed(1.0);
  const bool a_ok = std::abs(m.x - 0.839) <= 1e-3;
  const bool e_ok = std::abs(m.f - (-0.277)) <= 1e-3;
  const auto strong = minimize_ground_closed(10.0);
  const double rel = std::abs(strong.f - (-9.0)) / 9.0;
  const bool s_ok = rel <= 0.005;
  return {a_ok && e_ok && s_ok,
          fmt("alpha*=%.5f E0/L=%.5f (targets 0.839, -0.277); "
              "g2=10 rel dev from -g2+1: %.4f (<=0.005)",
              m.x, m.f, rel)};
}

// ---------------------------------------------------------------- 2
Outcome criterion2() {
  bool ok = true;
  std::string detail;
  for (double g2 : {0.5, 1.0, 2.0, 4.0}) {
    ModelParams p{2, g2, 3};
    const auto ed = mass_gap(p);
    const auto g = minimize_ground_closed(g2);
    const auto e = minimize_excited_closed(g2);
    const double de0 = std::abs(ed.e0 / 2.0 - g.f);
    const double dgap = std::abs(ed.gap - 2.0 * (e.f - g.f));
    const double gap_budget = ed.truncation_error + 0.02;
    if (de0 > 0.02 || dgap > gap_budget) ok = false;
    detail += fmt("g2=%g dE0/L=%.4f dgap=%.4f(budget %.4f); ", g2, de0, dgap,
                  gap_budget);
  }
  if (!ok) {
    // diagnostic: the strong-coupling E0 miss is l_max truncation, not a
    // model discrepancy -- show the converged comparison
    ModelParams p6{2, 4.0, 6};
    const double de0_6 =
        std::abs(mass_gap(p6).e0 / 2.0 - minimize_ground_closed(4.0).f);
    detail += fmt("[diagnostic: g2=4 dE0/L=%.4f at l_max=6]", de0_6);
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- 3
Outcome criterion3() {
  ModelParams p{2, 1.0, 3};
  const std::vector<double> no_links(p.n_sites, 0.0);
  const auto h = build_chain_hamiltonian(p, no_links, 0.0);
  const auto dim = h.dimension();
  std::vector<double> exact(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const auto st = AngularBasisState::from_flat_index(i, p);
    double e = 0.0;
    for (const auto& q : st.quanta) e += q.l * (q.l + 1) / (2.0 * p.g_sq);
    exact[i] = e;
  }
  std::sort(exact.begin(), exact.end());
  SpectrumOptions opts;
  opts.dense_threshold = dim + 1;  // force the dense path: we need them all
  const auto s = low_spectrum(h, static_cast<int>(dim), opts);
  double worst = 0.0;
  for (std::int64_t i = 0; i < dim; ++i)
    worst = std::max(worst, std::abs(s.eigenvalues[i] - exact[i]));
  return {worst <= 1e-12,
          fmt("max |eig - sum l(l+1)/2g2| = %.3e (<=1e-12) over %lld states",
              worst, static_cast<long long>(dim))};
}

// ---------------------------------------------------------------- 4
Outcome criterion4() {
  ModelParams p{2, 1.0, 3};
  const auto o3 = mass_gap(p);
  std::vector<double> de0, dgap;
  for (double lam : {1.0, 3.2, 10.0}) {
    SphereBasisSpec spec{lam, std::sqrt(p.g_sq), p.l_max, p.n_sites};
    const auto s = low_spectrum(build_sphere_hamiltonian(p, spec), 2);
    de0.push_back(std::abs(s.eigenvalues[0] - o3.e0));
    dgap.push_back(std::abs((s.eigenvalues[1] - s.eigenvalues[0]) - o3.gap));
  }
  const bool mono_e = de0[0] > de0[1] && de0[1] > de0[2];
  const bool mono_g = dgap[0] > dgap[1] && dgap[1] > dgap[2];
  const bool small = de0[2] < 0.05 && dgap[2] < 0.05;
  return {mono_e && mono_g && small,
          fmt("|dE0| = {%.4f, %.4f, %.4f}, |dgap| = {%.4f, %.4f, %.4f} over "
              "Lambda = {1, 3.2, 10}; strictly decreasing, final < 0.05",
              de0[0], de0[1], de0[2], dgap[0], dgap[1], dgap[2])};
}

// ---------------------------------------------------------------- 5
Outcome criterion5() {
  std::string detail;
  double gap5 = 0.0, err5 = 0.0;
  for (int L : {2, 3, 4, 5}) {
    ModelParams p{L, 1.0, 3};
    auto line = [&p](bool excited) {
      return minimize_scalar(
          [&](double a) {
            CCConfig c;
            c.alpha = a;
            c.n_samples = 50000;
            c.sampler = CCSampler::exact_radial_alpha0;
            c.seed = 7;
            return excited ? cc_excited_mc(p, c).mean
                           : cc_energy_mc(p, c).mean;
          },
          0.01, 4.0, 1e-3);
    };
    const double a0 = line(false).x, a1 = line(true).x;
    CCConfig c;
    c.alpha = a0;
    c.n_samples = 500000;
    c.sampler = CCSampler::exact_radial_alpha0;
    c.seed = 11;
    const auto gap = cc_gap_mc(p, c, a1);
    detail += fmt("L=%d gap=%.4f+-%.4f; ", L, gap.mean, gap.stderr_);
    if (L == 5) {
      gap5 = gap.mean;
      err5 = gap.stderr_;
    }
  }
  const bool ok = std::abs(gap5 - 0.48) <= 3.0 * err5;
  detail += fmt("|gap(5) - 0.48| = %.4f vs 3 sigma = %.4f",
                std::abs(gap5 - 0.48), 3.0 * err5);
  return {ok, detail};
}

// ---------------------------------------------------------------- 6
cv::QumodeRegister random_low_photon_state(int modes, int n_max, int max_tot,
                                           std::uint64_t seed) {
  cv::QumodeRegister reg(modes, n_max);
  reg.leakage_threshold = 1e18;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto amps = reg.amplitudes();
  for (auto& a : amps) a = 0.0;
  for (int n0 = 0; n0 <= max_tot; ++n0)
    for (int n1 = 0; n0 + n1 <= max_tot; ++n1)
      amps[n0 * n_max + n1] = cdouble(g(rng), g(rng));
  reg.normalize();
  return reg;
}

Eigen::MatrixXcd kron2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double direct_expectation(const cv::QumodeRegister& reg,
                          const Eigen::MatrixXcd& m, bool two_mode) {
  cv::QumodeRegister work = reg;
  work.leakage_threshold = 1e18;
  if (two_mode)
    cv::apply_two_mode_matrix(work, m, 0, 1);
  else
    cv::apply_one_mode_matrix(work, m, 0);
  return cv::overlap(reg, work).real();
}

Outcome criterion6() {
  const int n_max = 10;
  // small shift strength: the quad-phase / CX Fock-boundary error scales
  // like Gamma^4 while the Gamma^-2 readout amplification of rounding
  // noise stays ~1e-12
  const double G = 0.02;
  const auto q = cv::quadrature_q(n_max);
  const Eigen::MatrixXcd q2 = q * q;
  const auto a = cv::annihilation_op(n_max);
  const Eigen::MatrixXcd l3 =
      cdouble(0, 1) *
      (kron2(a, a.adjoint().eval()) - kron2(a.adjoint().eval(), a));
  const Eigen::MatrixXcd l3sq = l3 * l3;
  constexpr double kPi = 3.14159265358979323846;

  double worst_shift = 0.0, worst_cx = 0.0, worst_conj = 0.0, tol_floor = 0.0;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto reg = random_low_photon_state(2, n_max, 4, seed);
    const double q2_direct = direct_expectation(reg, q2, false);
    const double l2_direct = direct_expectation(reg, l3sq, true);

    double shifted = 0.0, leak_shift = 0.0;
    for (double s : {G, -G}) {
      cv::QumodeRegister w = reg;
      cv::apply_gate(w, {cv::GateKind::quad_phase, s, 0});
      shifted += cv::expectation_number(w, 0);
      leak_shift = std::max(leak_shift, w.leakage());
    }
    const double via_shift =
        (shifted - 2.0 * cv::expectation_number(reg, 0)) / (G * G);

    cv::QumodeRegister wc = reg;
    wc.append_vacuum_mode();
    cv::apply_gate(wc, {cv::GateKind::cx, G, 0, 2});
    const double via_cx = 2.0 * cv::expectation_number(wc, 2) / (G * G);

    cv::QumodeRegister wl = reg;
    cv::apply_gate(wl, {cv::GateKind::fourier, 0.0, 0});
    cv::apply_gate(wl, {cv::GateKind::beam_splitter, kPi / 4.0, 0, 1});
    const double via_conj = cv::expectation_number_sq(wl, 0) +
                            cv::expectation_number_sq(wl, 1) -
                            2.0 * cv::expectation_cross_number(wl, 0, 1);

    const double tol =
        1e-6 + 10.0 * std::max({leak_shift, wc.leakage(), wl.leakage()});
    tol_floor = std::max(tol_floor, tol);
    worst_shift = std::max(worst_shift, std::abs(via_shift - q2_direct));
    worst_cx = std::max(worst_cx, std::abs(via_cx - q2_direct));
    worst_conj = std::max(worst_conj, std::abs(via_conj - l2_direct));
    if (std::abs(via_shift - q2_direct) > tol ||
        std::abs(via_cx - q2_direct) > tol ||
        std::abs(via_conj - l2_direct) > tol)
      ok = false;
  }
  return {ok, fmt("worst dev over 50 states: shift %.2e, cx %.2e, "
                  "conjugation %.2e (tol <= %.2e)",
                  worst_shift, worst_cx, worst_conj, tol_floor)};
}

// ---------------------------------------------------------------- 7
cv::ProtocolConfig cv_config(double lambda, int n_max) {
  cv::ProtocolConfig cfg;
  cfg.model = {2, 1.0, 3};
  cfg.sphere = {lambda, 1.0, 3, 2};
  cfg.n_max = n_max;
  cfg.leakage_threshold = 0.5;
  return cfg;
}

Outcome criterion7() {
  // exact 3-D quadrature of the finite-Lambda CC Rayleigh quotient at
  // L=2, g^2=1, Lambda=1, alpha=0.83
  const double reference = 0.1183838981;
  std::vector<double> dev;
  std::string detail;
  for (int n_max : {8, 10, 12}) {
    auto cfg = cv_config(1.0, n_max);
    const auto reg = cv::prepare_cc(cfg, 0.83);
    const auto er = cv::measure_energy(reg, cfg);
    dev.push_back(std::abs(er.total - reference));
    detail += fmt("n_max=%d E=%.4f dev=%.4f; ", n_max, er.total, dev.back());
  }
  const bool ok = dev[0] > dev[1] && dev[1] > dev[2] && dev[2] <= 0.05;
  detail += "monotone decreasing, final <= 0.05";
  return {ok, detail};
}

// ---------------------------------------------------------------- 8
Outcome criterion8() {
  ModelParams p{2, 1.0, 3};
  std::string detail;
  bool ok = true;

  // (a) t=0 amplitude is exactly 1
  const std::vector<double> t0{0.0};
  const std::vector<double> radii{1.0, 1.0};
  const auto amp0 = return_amplitude_fixed_radii(p, radii, t0);
  const double a_dev = std::abs(amp0[0] - cdouble(1.0, 0.0));
  if (a_dev > 1e-12) ok = false;
  detail += fmt("(a) |amp(0) - 1| = %.1e; ", a_dev);

  // (b) Lambda=20 MC vs frozen-radius O(3), 3 sigma at t in {0.5, 1, 2}
  const std::vector<double> tb{0.5, 1.0, 2.0};
  const auto o3 = return_probability_o3(p, tb);
  SphereBasisSpec spec{20.0, 1.0, p.l_max, p.n_sites};
  CCConfig cb;
  cb.n_samples = 10000;
  cb.sampler = CCSampler::exact_radial_alpha0;
  cb.seed = 5;
  cb.lambda_cutoff = spec.lambda_cutoff;
  const auto mc = evolve_return_probability_mc(p, spec, tb, cb);
  for (std::size_t i = 0; i < tb.size(); ++i) {
    const double pull = std::abs(mc[i].mean - o3[i]) / mc[i].stderr_;
    if (pull > 3.0) ok = false;
    detail += fmt("(b) t=%g pull=%.2f; ", tb[i], pull);
  }

  // (c) CV Trotter (Lambda=3.2, n_max=12, 2 steps) vs the vacuum-projected
  // MC-matrix oracle, 3 sigma across t in [0, 2]
  auto cfg = cv_config(3.2, 12);
  cfg.trotter_steps = 2;
  const std::vector<double> tc{0.0, 0.5, 1.0, 1.5, 2.0};
  CCConfig cc;
  cc.n_samples = 4000;
  cc.sampler = CCSampler::exact_radial_alpha0;
  cc.seed = 13;
  cc.lambda_cutoff = cfg.sphere.lambda_cutoff;
  const auto vp = vacuum_projected_return_mc(p, cfg.sphere, tc, cc);
  for (std::size_t i = 0; i < tc.size(); ++i) {
    const double cvp = cv::return_probability(cfg, tc[i]);
    const double pull = std::abs(cvp - vp[i].mean) / vp[i].stderr_;
    if (pull > 3.0) ok = false;
    detail += fmt("(c) t=%g cv=%.4f mc=%.4f+-%.4f pull=%.2f; ", tc[i], cvp,
                  vp[i].mean, vp[i].stderr_, pull);
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- 9
Outcome criterion9() {
  ModelParams p{2, 1.0, 3};
  const std::vector<double> t{4.0};
  const auto o3 = return_probability_o3(p, t);
  double dev[2];
  int k = 0;
  for (double lam : {3.2, 10.0}) {
    SphereBasisSpec spec{lam, 1.0, p.l_max, p.n_sites};
    CCConfig c;
    c.n_samples = 2000;
    c.sampler = CCSampler::quasi_mc;  // deterministic bias comparison
    c.lambda_cutoff = lam;
    const auto mc = evolve_return_probability_mc(p, spec, t, c);
    dev[k++] = std::abs(mc[0].mean - o3[0]);
  }
  return {dev[0] > dev[1],
          fmt("t=4 deviation from O(3): Lambda=3.2 %.4f > Lambda=10 %.4f",
              dev[0], dev[1])};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"1 closed-form CC minimum and strong-coupling asymptote", criterion1},
      {"2 ED vs CC energies and gaps, L=2", criterion2},
      {"3 kinetic-limit spectrum exact", criterion3},
      {"4 Lambda-convergence of sphere-field spectra", criterion4},
      {"5 large-L CC-MC gap near 0.48", criterion5},
      {"6 CV measurement identities on random states", criterion6},
      {"7 CV energy vs n_max approaches quadrature value", criterion7},
      {"8 return probabilities: t=0, MC vs O(3), CV Trotter vs MC",
       criterion8},
      {"9 validity window: larger Lambda tracks O(3) longer", criterion9},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Outcome r;
    try {
      r = e.run();
    } catch (const std::exception& ex) {
      r = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("[%s] criterion %s -- %s\n", r.pass ? "PASS" : "FAIL", e.name,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures;
}
