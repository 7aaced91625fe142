// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  /// Linear spring-dashpot-slider contact law. Provided for completeness;
  /// the sand-production scenario runs Hertz/JKR throughout.
  struct LinearContactForce
  {
    Vec3 normal;
    Vec3 tangential;
  };

  /// normal_dir points from i to j; overlap_n >= 0; disp_t is the accumulated
  /// tangential stretch; v_n / v_t are the relative velocity components of j
  /// with respect to i.
  inline LinearContactForce linear_contact_force(Real overlap_n,
                                                 const Vec3& normal_dir,
                                                 const Vec3& disp_t,
                                                 const Vec3& v_n, const Vec3& v_t,
                                                 Real k_n, Real k_t, Real eta_n,
                                                 Real eta_t, Real mu)
  {
    LinearContactForce f{Vec3::Zero(), Vec3::Zero()};
    if (overlap_n < 0.0)
      return f;

    // Spring pushes j outward, dashpot opposes the relative motion.
    f.normal = k_n * overlap_n * normal_dir - eta_n * v_n;

    const Vec3 trial    = k_t * disp_t + eta_t * v_t;
    const Real trial_sz = trial.norm();
    const Real cap      = mu * f.normal.norm();
    if (trial_sz > 0.0)
      f.tangential = -std::min(cap, trial_sz) * (trial / trial_sz);
    return f;
  }

  /// Contact torque on a particle with lever arm `arm` (center to contact).
  inline Vec3 contact_torque(const Vec3& arm, const Vec3& tangential_force)
  {
    return arm.cross(tangential_force);
  }
} // namespace sandprod
