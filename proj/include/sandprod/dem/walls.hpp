// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/domain.hpp>
#include <sandprod/core/types.hpp>

#include <cmath>
#include <optional>

namespace sandprod
{
  struct WallContact
  {
    Real overlap = 0.0; // r - distance to surface
    Vec3 normal  = Vec3::UnitZ(); // from wall into the particle
    Vec3 surface_velocity = Vec3::Zero();
  };

  /// Infinite plane with inward normal; an optional disc hole lets particles
  /// whose center projects into the disc pass through.
  struct PlaneWall
  {
    Vec3 point  = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ(); // into the domain
    Vec3 velocity = Vec3::Zero();
    bool has_hole = false;
    OutletSpec hole; // interpreted in the x-y plane of the face

    std::optional<WallContact> probe(const Vec3& x, Real r) const
    {
      const Real dist    = (x - point).dot(normal);
      const Real overlap = r - dist;
      if (overlap <= 0.0)
        return std::nullopt;
      if (has_hole && hole.contains(x.x(), x.y()))
        return std::nullopt;
      return WallContact{overlap, normal, velocity};
    }
  };

  /// Vertical capped cylinder (the perforation tool). Contact is resolved
  /// against the closest point of the lateral surface, the bottom cap, or the
  /// rim, whichever is nearest.
  struct Penetrometer
  {
    bool active = false;
    Real center_x = 0.0, center_y = 0.0;
    Real radius = 0.0;
    Real tip_z  = 0.0;   // bottom cap
    Real height = 0.0;
    Real velocity_z = 0.0;

    Real top_z() const { return tip_z + height; }

    std::optional<WallContact> probe(const Vec3& x, Real r) const
    {
      if (!active)
        return std::nullopt;
      const Real dx  = x.x() - center_x;
      const Real dy  = x.y() - center_y;
      const Real rho = std::sqrt(dx * dx + dy * dy);

      Real dist;
      Vec3 n;
      if (x.z() >= tip_z)
        {
          if (rho <= radius && x.z() <= top_z())
            {
              // Center inside the body: push out radially.
              dist = rho - radius; // negative
              n    = rho > 1e-300 ? Vec3(dx / rho, dy / rho, 0.0) : Vec3::UnitX();
            }
          else if (rho > radius)
            {
              dist = rho - radius;
              n    = Vec3(dx / rho, dy / rho, 0.0);
            }
          else
            return std::nullopt; // above the top cap interior: outside reach
        }
      else if (rho <= radius)
        {
          dist = tip_z - x.z();
          n    = Vec3(0.0, 0.0, -1.0);
        }
      else
        {
          // Rim region below the tip.
          const Real dr = rho - radius;
          const Real dz = tip_z - x.z();
          dist          = std::sqrt(dr * dr + dz * dz);
          n = Vec3(dx / rho * dr / dist, dy / rho * dr / dist, -dz / dist);
        }

      const Real overlap = r - dist;
      if (overlap <= 0.0)
        return std::nullopt;
      return WallContact{overlap, n, Vec3(0.0, 0.0, velocity_z)};
    }
  };
} // namespace sandprod
