// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cmath>

namespace sandprod
{
  /// Solid-phase material parameters (SI units).
  struct Material
  {
    Real density        = 0.0; // kg/m^3
    Real youngs_modulus = 0.0; // Pa
    Real poisson_ratio  = 0.0;
    Real restitution    = 0.0; // in (0, 1]
    Real friction       = 0.0; // >= 0
    Real surface_energy = 0.0; // J/m^2

    Real shear_modulus() const
    {
      return youngs_modulus / (2.0 * (1.0 + poisson_ratio));
    }
  };

  /// E* = [ (1-nu1^2)/E1 + (1-nu2^2)/E2 ]^-1 ; symmetric in its arguments.
  template <typename Scalar>
  Scalar effective_youngs_modulus(Scalar e1, Scalar nu1, Scalar e2, Scalar nu2)
  {
    return Scalar(1) / ((Scalar(1) - nu1 * nu1) / e1 + (Scalar(1) - nu2 * nu2) / e2);
  }

  inline Real effective_youngs_modulus(const Material& a, const Material& b)
  {
    return effective_youngs_modulus(a.youngs_modulus, a.poisson_ratio,
                                    b.youngs_modulus, b.poisson_ratio);
  }

  /// Mindlin tangential G* = [ (2-nu1)/G1 + (2-nu2)/G2 ]^-1.
  template <typename Scalar>
  Scalar effective_shear_modulus(Scalar e1, Scalar nu1, Scalar e2, Scalar nu2)
  {
    const Scalar g1 = e1 / (Scalar(2) * (Scalar(1) + nu1));
    const Scalar g2 = e2 / (Scalar(2) * (Scalar(1) + nu2));
    return Scalar(1) / ((Scalar(2) - nu1) / g1 + (Scalar(2) - nu2) / g2);
  }

  inline Real effective_shear_modulus(const Material& a, const Material& b)
  {
    return effective_shear_modulus(a.youngs_modulus, a.poisson_ratio,
                                   b.youngs_modulus, b.poisson_ratio);
  }

  template <typename Scalar>
  Scalar effective_radius(Scalar r1, Scalar r2)
  {
    return r1 * r2 / (r1 + r2);
  }

  template <typename Scalar>
  Scalar effective_mass(Scalar m1, Scalar m2)
  {
    return m1 * m2 / (m1 + m2);
  }

  /// Contact of a particle against a rigid wall: only the particle side
  /// contributes compliance.
  inline Real wall_effective_youngs_modulus(const Material& p)
  {
    return p.youngs_modulus / (1.0 - p.poisson_ratio * p.poisson_ratio);
  }

  inline Real wall_effective_shear_modulus(const Material& p)
  {
    const Real g = p.shear_modulus();
    return g / (2.0 - p.poisson_ratio);
  }
} // namespace sandprod
