#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace o3sim {

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n_samples = 0;
};

// Plain sample mean with standard error of the mean.
inline MCEstimate mean_estimate(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  const double m = s / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  MCEstimate out;
  out.mean = m;
  out.n_samples = x.size();
  if (x.size() > 1)
    out.stderr_ = std::sqrt(ss / (static_cast<double>(x.size()) *
                                  static_cast<double>(x.size() - 1)));
  return out;
}

// Jackknife estimate of mean(num)/mean(den) over correlated streams,
// using n_blocks contiguous blocks (trailing remainder samples dropped).
inline MCEstimate jackknife_ratio(std::span<const double> num,
                                  std::span<const double> den,
                                  int n_blocks = 100) {
  if (num.size() != den.size()) throw std::invalid_argument("size mismatch");
  if (n_blocks < 2) throw std::invalid_argument("need >= 2 blocks");
  const std::size_t per = num.size() / static_cast<std::size_t>(n_blocks);
  if (per == 0) throw std::invalid_argument("too few samples for block count");
  const std::size_t n = per * static_cast<std::size_t>(n_blocks);

  std::vector<double> bn(n_blocks, 0.0), bd(n_blocks, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i / per;
    bn[b] += num[i];
    bd[b] += den[i];
  }
  double tn = 0.0, td = 0.0;
  for (int b = 0; b < n_blocks; ++b) {
    tn += bn[b];
    td += bd[b];
  }
  const double full = tn / td;
  double ss = 0.0;
  for (int b = 0; b < n_blocks; ++b) {
    const double leave = (tn - bn[b]) / (td - bd[b]);
    ss += (leave - full) * (leave - full);
  }
  MCEstimate out;
  out.mean = full;
  out.stderr_ = std::sqrt(ss * (n_blocks - 1) / static_cast<double>(n_blocks));
  out.n_samples = n;
  return out;
}

// Jackknife for a difference of two correlated ratios,
// mean(num_a)/mean(den_a) - mean(num_b)/mean(den_b), all four streams
// sampled in lockstep. Used for gaps between MC energy estimators.
inline MCEstimate jackknife_ratio_difference(std::span<const double> num_a,
                                             std::span<const double> den_a,
                                             std::span<const double> num_b,
                                             std::span<const double> den_b,
                                             int n_blocks = 100) {
  const std::size_t sz = num_a.size();
  if (den_a.size() != sz || num_b.size() != sz || den_b.size() != sz)
    throw std::invalid_argument("size mismatch");
  if (n_blocks < 2) throw std::invalid_argument("need >= 2 blocks");
  const std::size_t per = sz / static_cast<std::size_t>(n_blocks);
  if (per == 0) throw std::invalid_argument("too few samples for block count");

  std::vector<double> na(n_blocks, 0.0), da(n_blocks, 0.0), nb(n_blocks, 0.0),
      db(n_blocks, 0.0);
  for (std::size_t i = 0; i < per * static_cast<std::size_t>(n_blocks); ++i) {
    const std::size_t b = i / per;
    na[b] += num_a[i];
    da[b] += den_a[i];
    nb[b] += num_b[i];
    db[b] += den_b[i];
  }
  double tna = 0, tda = 0, tnb = 0, tdb = 0;
  for (int b = 0; b < n_blocks; ++b) {
    tna += na[b];
    tda += da[b];
    tnb += nb[b];
    tdb += db[b];
  }
  const double full = tna / tda - tnb / tdb;
  double ss = 0.0;
  for (int b = 0; b < n_blocks; ++b) {
    const double leave =
        (tna - na[b]) / (tda - da[b]) - (tnb - nb[b]) / (tdb - db[b]);
    ss += (leave - full) * (leave - full);
  }
  MCEstimate out;
  out.mean = full;
  out.stderr_ = std::sqrt(ss * (n_blocks - 1) / static_cast<double>(n_blocks));
  out.n_samples = per * static_cast<std::size_t>(n_blocks);
  return out;
}

}  // namespace o3sim
