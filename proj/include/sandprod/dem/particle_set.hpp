// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cstdint>
#include <vector>

namespace sandprod
{
  /// Structure-of-arrays particle storage. Indices are dense; `id` survives
  /// removals and is the stable key used in logs and the contact table.
  struct ParticleSet
  {
    std::vector<std::int64_t> id;
    std::vector<Vec3>         position;
    std::vector<Vec3>         velocity;
    std::vector<Vec3>         angular_velocity;
    std::vector<Real>         radius;
    std::vector<Real>         mass;
    std::vector<Real>         inertia; // (2/5) m r^2
    std::vector<int>          bin;     // PSD bin index
    std::vector<int>          material_id;

    std::size_t size() const { return position.size(); }

    void add(std::int64_t pid, const Vec3& x, Real r, Real density, int bin_id,
             int mat_id = 0)
    {
      const Real m = density * (4.0 / 3.0) * pi * r * r * r;
      id.push_back(pid);
      position.push_back(x);
      velocity.push_back(Vec3::Zero());
      angular_velocity.push_back(Vec3::Zero());
      radius.push_back(r);
      mass.push_back(m);
      inertia.push_back(0.4 * m * r * r);
      bin.push_back(bin_id);
      material_id.push_back(mat_id);
    }

    /// Removes by swap-with-last; returns the id that moved into `index`.
    void remove(std::size_t index)
    {
      const std::size_t last = size() - 1;
      id[index]               = id[last];
      position[index]         = position[last];
      velocity[index]         = velocity[last];
      angular_velocity[index] = angular_velocity[last];
      radius[index]           = radius[last];
      mass[index]             = mass[last];
      inertia[index]          = inertia[last];
      bin[index]              = bin[last];
      material_id[index]      = material_id[last];
      id.pop_back();
      position.pop_back();
      velocity.pop_back();
      angular_velocity.pop_back();
      radius.pop_back();
      mass.pop_back();
      inertia.pop_back();
      bin.pop_back();
      material_id.pop_back();
    }

    Real total_mass() const
    {
      // Compensated sum; the mass-balance audit asks for 1e-12 relative.
      Real sum = 0.0, c = 0.0;
      for (const Real m : mass)
        {
          const Real y = m - c;
          const Real t = sum + y;
          c            = (t - sum) - y;
          sum          = t;
        }
      return sum;
    }

    Real max_speed() const
    {
      Real v2 = 0.0;
      for (const auto& v : velocity)
        v2 = std::max(v2, v.squaredNorm());
      return std::sqrt(v2);
    }
  };
} // namespace sandprod
