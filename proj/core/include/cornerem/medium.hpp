// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "cornerem/error.hpp"

namespace cornerem {

// Homogeneous background (omega, eps0, mu0). Time dependence e^{-i omega t}.
struct Medium {
  double omega = 1.0;
  double eps0 = 1.0;
  double mu0 = 1.0;

  Medium() = default;
  Medium(double w, double eps, double mu) : omega(w), eps0(eps), mu0(mu) {
    if (!(omega > 0.0) || !(eps0 > 0.0) || !(mu0 > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "omega, eps0 and mu0 must be positive");
    }
  }

  double k() const { return omega * std::sqrt(eps0 * mu0); }
  // Wave impedance sqrt(mu0 / eps0); E_inf = -eta x̂ × H_inf.
  double impedance() const { return std::sqrt(mu0 / eps0); }
};

}  // namespace cornerem
