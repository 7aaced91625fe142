// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cmath>

namespace sandprod
{
  /// Repulsive Hertz normal force, F = (4/3) E* sqrt(R*) delta^(3/2) for
  /// delta > 0, zero otherwise.
  template <typename Scalar>
  Scalar hertz_normal_force(Scalar overlap, Scalar rstar, Scalar estar)
  {
    if (overlap <= Scalar(0))
      return Scalar(0);
    return Scalar(4.0 / 3.0) * estar * std::sqrt(rstar) * overlap *
           std::sqrt(overlap);
  }

  template <typename Scalar>
  Scalar hertz_contact_radius(Scalar overlap, Scalar rstar)
  {
    return overlap > Scalar(0) ? std::sqrt(rstar * overlap) : Scalar(0);
  }

  /// Critical damping ratio from the restitution coefficient,
  /// beta = -ln e / sqrt(ln^2 e + pi^2). e = 1 gives zero damping.
  template <typename Scalar>
  Scalar damping_ratio_from_restitution(Scalar e)
  {
    if (e >= Scalar(1))
      return Scalar(0);
    const Scalar l = std::log(e);
    return -l / std::sqrt(l * l + Scalar(pi) * Scalar(pi));
  }

  /// Normal dashpot force, linear in the normal relative velocity:
  ///   F_d = -beta sqrt((20/3) E* a m*) v_n.
  /// Opposes the motion; v_n > 0 means the pair is separating.
  template <typename Scalar>
  Scalar hertz_damping_force(Scalar v_n, Scalar estar, Scalar contact_radius,
                             Scalar mstar, Scalar restitution)
  {
    if (contact_radius <= Scalar(0))
      return Scalar(0);
    const Scalar beta = damping_ratio_from_restitution(restitution);
    return -beta *
           std::sqrt(Scalar(20.0 / 3.0) * estar * contact_radius * mstar) * v_n;
  }
} // namespace sandprod
