#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "mlab/core.hpp"

namespace mlab {

namespace detail {

// Lanczos g=7 with 9 coefficients (Godfrey's set); ~1e-13 relative error in
// double for moderate arguments.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace detail

/// log Gamma(z) for Re(z) >= 0.5 via Lanczos; reflection below. Throws on the
/// poles z = 0, -1, -2, ...
inline cplx log_gamma(cplx z) {
  using std::numbers::pi;
  if (detail::is_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  cplx acc = detail::kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += detail::kLanczos[i] / (z - 1.0 + static_cast<double>(i));
  cplx t = z + (detail::kLanczosG - 0.5);
  return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

inline cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

/// log(sin(pi s / 2)), stable for large |Im(s)| where sin overflows.
inline cplx log_sin_half_pi(cplx s) {
  using std::numbers::pi;
  cplx w = s * (pi / 2.0);
  double im = w.imag();
  // sin w = (e^{iw} - e^{-iw}) / 2i; factor out the dominant exponential.
  if (im > 20.0) {
    // sin w = (i/2) e^{-iw} (1 - e^{2iw})
    cplx miw(im, -w.real());
    return miw + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(cplx(-2.0 * im, 2.0 * w.real())));
  }
  if (im < -20.0) {
    // sin w = (-i/2) e^{iw} (1 - e^{-2iw})
    cplx iw(-im, w.real());
    return iw + std::log(cplx(0.0, -0.5)) + std::log(1.0 - std::exp(cplx(2.0 * im, -2.0 * w.real())));
  }
  return std::log(std::sin(w));
}

}  // namespace mlab
