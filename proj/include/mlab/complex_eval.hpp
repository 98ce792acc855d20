#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "mlab/core.hpp"

namespace mlab {

/// A point s = sigma + i t. Components must be finite.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double sigma_, double t_) : sigma(sigma_), t(t_) {
    if (!std::isfinite(sigma) || !std::isfinite(t))
      throw std::invalid_argument("ComplexPoint: components must be finite");
  }
  explicit ComplexPoint(cplx z) : ComplexPoint(z.real(), z.imag()) {}

  cplx value() const { return {sigma, t}; }
};

enum class Method {
  Dirichlet,
  Eta,
  FracpartIntegral,
  EulerProduct,
  Reflect,
  MobiusSeries,
  MIntegral,
  LambdaSeries,
  LIntegral,
  Quotient,
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Dirichlet: return "dirichlet";
    case Method::Eta: return "eta";
    case Method::FracpartIntegral: return "fracpart_integral";
    case Method::EulerProduct: return "euler_product";
    case Method::Reflect: return "reflect";
    case Method::MobiusSeries: return "mobius_series";
    case Method::MIntegral: return "m_integral";
    case Method::LambdaSeries: return "lambda_series";
    case Method::LIntegral: return "l_integral";
    case Method::Quotient: return "quotient";
  }
  return "?";
}

/// One evaluation: value, the representation used, its truncation parameter,
/// and either an error upper bound or (when `conditional`) just the magnitude
/// of the last term. Conditional results are data, never oracles.
struct EvalResult {
  cplx value{0.0, 0.0};
  Method method = Method::Dirichlet;
  u64 truncation = 0;
  double error_estimate = 0.0;
  bool conditional = false;
};

}  // namespace mlab
