// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/material.hpp>
#include <sandprod/core/types.hpp>

#include <cmath>

namespace sandprod
{
  /// dt_c = pi * R / beta_r * sqrt(rho / G), beta_r = 0.8766 + 0.163 nu.
  /// The standard shear modulus G = E/(2(1+nu)) is the default; the
  /// 1/(2(1-nu)) variant is kept selectable for diagnostics.
  template <typename Scalar>
  Scalar rayleigh_beta(Scalar poisson_ratio)
  {
    return Scalar(0.8766) + Scalar(0.163) * poisson_ratio;
  }

  template <typename Scalar>
  Scalar rayleigh_critical_dt(Scalar mean_radius, Scalar density, Scalar youngs,
                              Scalar poisson_ratio, bool printed_shear_form = false)
  {
    const Scalar g = printed_shear_form
                       ? youngs / (Scalar(2) * (Scalar(1) - poisson_ratio))
                       : youngs / (Scalar(2) * (Scalar(1) + poisson_ratio));
    return Scalar(pi) * mean_radius / rayleigh_beta(poisson_ratio) *
           std::sqrt(density / g);
  }

  inline Real rayleigh_critical_dt(Real mean_radius, const Material& m,
                                   bool printed_shear_form = false)
  {
    return rayleigh_critical_dt(mean_radius, m.density, m.youngs_modulus,
                                m.poisson_ratio, printed_shear_form);
  }
} // namespace sandprod
