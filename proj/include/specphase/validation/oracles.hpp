// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

// Slow, direct reference implementations. They share no code with the fast
// paths they are compared against.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace specphase::oracle {

using cplx = std::complex<double>;
using Series = std::vector<double>;
using Feature = std::function<double(std::span<const double>)>;

/// exp(sign * 2 pi i m / n), exact on the axes.
inline cplx unit_root(std::size_t m, std::size_t n, double sign) {
  m %= n;
  if (m == 0) {
    return {1.0, 0.0};
  }
  if (2 * m == n) {
    return {-1.0, 0.0};
  }
  if (4 * m == n) {
    return {0.0, sign};
  }
  if (4 * m == 3 * n) {
    return {0.0, -sign};
  }
  const double a = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  return {std::cos(a), sign * std::sin(a)};
}

/// X[k] = sum_t x[t] e^{-2 pi i k t / n}, by direct summation.
inline std::vector<cplx> dft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      acc += x[t] * unit_root(k * t, n, -1.0);
    }
    out[k] = acc;
  }
  return out;
}

/// x[t] = (1/n) sum_k X[k] e^{2 pi i k t / n}.
inline std::vector<cplx> idft(std::span<const cplx> spec) {
  const std::size_t n = spec.size();
  std::vector<cplx> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += spec[k] * unit_root(k * t, n, 1.0);
    }
    out[t] = acc / static_cast<double>(n);
  }
  return out;
}

/// Real series with |DFT(amp_source)| and the phases of DFT(phase_source).
inline Series recombine(std::span<const double> amp_source, std::span<const double> phase_source) {
  const auto a = dft(amp_source);
  const auto p = dft(phase_source);
  std::vector<cplx> z(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double mag = std::abs(p[k]);
    const cplx phasor = mag == 0.0 ? cplx(1.0, 0.0) : p[k] / mag;
    z[k] = std::abs(a[k]) * phasor;
  }
  const auto back = idft(z);
  Series out(back.size());
  for (std::size_t t = 0; t < back.size(); ++t) {
    out[t] = back[t].real();
  }
  return out;
}

/// LZ76 complexity by the quadratic Kaspar-Schuster scan.
inline std::size_t lz76(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  if (n == 0) {
    return 0;
  }
  if (n == 1) {
    return 1;
  }
  std::size_t c = 1, l = 1, i = 0, k = 1, k_max = 1;
  for (;;) {
    if (s[i + k - 1] == s[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      k_max = std::max(k, k_max);
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) {
          break;
        }
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

/// Two-sided Student t p-value, 1 - 2 * integral of the density over [0, |t|].
inline double student_t_two_sided_p(double t, double df) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * std::numbers::pi);
  auto density = [&](double u) {
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(u * u / df));
  };
  using boost::math::quadrature::gauss_kronrod;
  const double half = gauss_kronrod<double, 61>::integrate(density, 0.0, std::fabs(t), 15, 1e-12);
  return 1.0 - 2.0 * half;
}

/// f(recombine(amp_source, phase_source)) for every pair of two pools.
inline std::vector<std::vector<double>> pair_table(const std::vector<Series>& amp_pool,
                                                   const std::vector<Series>& phase_pool,
                                                   const Feature& f) {
  std::vector<std::vector<double>> table(amp_pool.size(),
                                         std::vector<double>(phase_pool.size()));
  for (std::size_t a = 0; a < amp_pool.size(); ++a) {
    for (std::size_t p = 0; p < phase_pool.size(); ++p) {
      table[a][p] = f(recombine(amp_pool[a], phase_pool[p]));
    }
  }
  return table;
}

/// One admissible donor for a segment and its probability.
struct Choice {
  bool from_other;
  std::size_t index;
  double weight;
};

/// Expectation of the ensemble mean over every joint assignment of donors,
/// enumerated one full assignment at a time. `value(j, choice)` is the
/// feature value of segment j under that choice.
inline double enumerate_assignments(std::size_t segments, const std::vector<Choice>& choices,
                                    const std::function<double(std::size_t, const Choice&)>& value) {
  std::vector<std::size_t> pick(segments, 0);
  double expectation = 0.0;
  for (;;) {
    double weight = 1.0;
    double mean = 0.0;
    for (std::size_t j = 0; j < segments; ++j) {
      weight *= choices[pick[j]].weight;
      mean += value(j, choices[pick[j]]);
    }
    expectation += weight * mean / static_cast<double>(segments);
    std::size_t j = 0;
    while (j < segments && ++pick[j] == choices.size()) {
      pick[j++] = 0;
    }
    if (j == segments) {
      return expectation;
    }
  }
}

inline std::vector<Choice> within_choices(std::size_t n) {
  std::vector<Choice> c;
  for (std::size_t k = 0; k < n; ++k) {
    c.push_back({false, k, 1.0 / static_cast<double>(n)});
  }
  return c;
}

inline std::vector<Choice> pooled_choices(std::size_t n, std::size_t m) {
  std::vector<Choice> c;
  for (std::size_t k = 0; k < n; ++k) {
    c.push_back({false, k, 0.5 / static_cast<double>(n)});
  }
  for (std::size_t k = 0; k < m; ++k) {
    c.push_back({true, k, 0.5 / static_cast<double>(m)});
  }
  return c;
}

/// Exact E[nu^i(xs)] over all N^N donor assignments.
inline double nu_within(const std::vector<Series>& xs, const Feature& f) {
  const auto self = pair_table(xs, xs, f);
  return enumerate_assignments(xs.size(), within_choices(xs.size()),
                               [&](std::size_t j, const Choice& c) { return self[j][c.index]; });
}

/// Exact E[nu^phi(xs | ys)] over every coin and donor assignment.
inline double nu_across(const std::vector<Series>& xs, const std::vector<Series>& ys,
                        const Feature& f) {
  const auto self = pair_table(xs, xs, f);
  const auto cross = pair_table(xs, ys, f);
  return enumerate_assignments(xs.size(), pooled_choices(xs.size(), ys.size()),
                               [&](std::size_t j, const Choice& c) {
                                 return c.from_other ? cross[j][c.index] : self[j][c.index];
                               });
}

/// Exact expectation of the alternative-ordering ensemble for xs: amplitudes
/// from a pooled donor, phases from the segment itself.
inline double nu_alternative(const std::vector<Series>& xs, const std::vector<Series>& ys,
                             const Feature& f) {
  const auto self = pair_table(xs, xs, f);   // [amp][phase]
  const auto cross = pair_table(ys, xs, f);  // amplitudes of y, phases of x
  return enumerate_assignments(xs.size(), pooled_choices(xs.size(), ys.size()),
                               [&](std::size_t j, const Choice& c) {
                                 return c.from_other ? cross[c.index][j] : self[c.index][j];
                               });
}

/// Exact expectation of the alternative-ordering spectral component.
inline double delta_A_alternative(const std::vector<Series>& xs, const std::vector<Series>& ys,
                                  const Feature& f) {
  return (nu_within(xs, f) - nu_alternative(xs, ys, f)) -
         (nu_within(ys, f) - nu_alternative(ys, xs, f));
}

}  // namespace specphase::oracle
