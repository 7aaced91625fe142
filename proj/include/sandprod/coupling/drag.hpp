// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cmath>
#include <cstdint>

namespace sandprod
{
  /// Voidage exponent chi(Re) = 3.7 - 0.65 exp(-(1.5 - log10 Re)^2 / 2).
  /// Bounded in [3.05, 3.7]; the limit for Re -> 0 is 3.7.
  template <typename Scalar>
  Scalar difelice_chi(Scalar re)
  {
    if (re <= Scalar(0))
      return Scalar(3.7);
    const Scalar x = Scalar(1.5) - std::log10(re);
    return Scalar(3.7) - Scalar(0.65) * std::exp(-x * x / Scalar(2));
  }

  /// C_d(Re) = (0.63 + 4.8 / sqrt(Re))^2; monotone decreasing.
  template <typename Scalar>
  Scalar difelice_drag_coefficient(Scalar re)
  {
    const Scalar c = Scalar(0.63) + Scalar(4.8) / std::sqrt(re);
    return c * c;
  }

  template <typename Scalar>
  Scalar particle_reynolds(Scalar rho_f, Scalar d_p, Scalar slip_speed,
                           Scalar mu_f)
  {
    return rho_f * d_p * slip_speed / mu_f;
  }

  struct DragSample
  {
    std::int64_t particle_id = 0;
    Real         reynolds    = 0.0;
    Real         drag_coeff  = 0.0;
    Real         chi         = 0.0;
    Vec3         force       = Vec3::Zero(); // on the particle
  };

  /// Drag force on one particle:
  ///   f = (1/8) C_d rho_f pi d^2 |u - v| (u - v) n^(-chi).
  /// `superficial_re` switches the Reynolds slip speed to n |u - v|.
  inline DragSample particle_drag(const Vec3& u_fluid, const Vec3& v_particle,
                                  Real d_p, Real porosity, Real rho_f,
                                  Real mu_f, bool superficial_re = false,
                                  std::int64_t particle_id = 0)
  {
    DragSample s;
    s.particle_id = particle_id;
    const Vec3 slip  = u_fluid - v_particle;
    const Real speed = slip.norm();
    if (speed == 0.0)
      {
        s.chi = 3.7;
        return s; // zero-force limit; Re = 0
      }
    const Real re_speed = superficial_re ? porosity * speed : speed;
    s.reynolds   = particle_reynolds(rho_f, d_p, re_speed, mu_f);
    s.drag_coeff = difelice_drag_coefficient(s.reynolds);
    s.chi        = difelice_chi(s.reynolds);
    s.force = 0.125 * s.drag_coeff * rho_f * pi * d_p * d_p * speed * slip *
              std::pow(porosity, -s.chi);
    return s;
  }
} // namespace sandprod
