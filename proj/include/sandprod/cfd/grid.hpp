// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cstddef>
#include <vector>

namespace sandprod
{
  /// Structured staggered grid. Cell-centered scalars (porosity, pressure,
  /// drag source); face-centered flux velocity phi = n u (the superficial
  /// velocity the averaged continuity equation transports).
  struct FluidGrid
  {
    int  nx = 0, ny = 0, nz = 0;
    Real hx = 0.0, hy = 0.0, hz = 0.0;

    std::vector<Real> porosity;     // n in (0, 1]
    std::vector<Real> porosity_old; // previous coupling step, for dn/dt
    std::vector<Real> pressure;
    std::vector<Vec3> drag; // force density on the fluid (N/m^3)

    std::vector<Real> phi_x; // (nx+1) * ny * nz
    std::vector<Real> phi_y; // nx * (ny+1) * nz
    std::vector<Real> phi_z; // nx * ny * (nz+1)

    FluidGrid() = default;
    FluidGrid(int nx_, int ny_, int nz_, Real hx_, Real hy_, Real hz_)
    {
      resize(nx_, ny_, nz_, hx_, hy_, hz_);
    }

    void resize(int nx_, int ny_, int nz_, Real hx_, Real hy_, Real hz_)
    {
      nx = nx_;
      ny = ny_;
      nz = nz_;
      hx = hx_;
      hy = hy_;
      hz = hz_;
      porosity.assign(cells(), 1.0);
      porosity_old.assign(cells(), 1.0);
      pressure.assign(cells(), 0.0);
      drag.assign(cells(), Vec3::Zero());
      phi_x.assign(static_cast<std::size_t>(nx + 1) * ny * nz, 0.0);
      phi_y.assign(static_cast<std::size_t>(nx) * (ny + 1) * nz, 0.0);
      phi_z.assign(static_cast<std::size_t>(nx) * ny * (nz + 1), 0.0);
    }

    std::size_t cells() const
    {
      return static_cast<std::size_t>(nx) * ny * nz;
    }

    std::size_t cell(int i, int j, int k) const
    {
      return static_cast<std::size_t>(k) * nx * ny +
             static_cast<std::size_t>(j) * nx + i;
    }
    std::size_t xface(int i, int j, int k) const
    {
      return static_cast<std::size_t>(k) * (nx + 1) * ny +
             static_cast<std::size_t>(j) * (nx + 1) + i;
    }
    std::size_t yface(int i, int j, int k) const
    {
      return static_cast<std::size_t>(k) * nx * (ny + 1) +
             static_cast<std::size_t>(j) * nx + i;
    }
    std::size_t zface(int i, int j, int k) const
    {
      return static_cast<std::size_t>(k) * nx * ny +
             static_cast<std::size_t>(j) * nx + i;
    }

    Real cell_volume() const { return hx * hy * hz; }

    Vec3 cell_center(int i, int j, int k) const
    {
      return Vec3((i + 0.5) * hx, (j + 0.5) * hy, (k + 0.5) * hz);
    }

    int cell_index_of(Real x, Real len, int count, Real h) const
    {
      (void)len;
      int idx = static_cast<int>(x / h);
      if (idx < 0)
        idx = 0;
      if (idx >= count)
        idx = count - 1;
      return idx;
    }

    /// Cell containing a point (clamped to the grid).
    void locate(const Vec3& p, int& i, int& j, int& k) const
    {
      i = cell_index_of(p.x(), nx * hx, nx, hx);
      j = cell_index_of(p.y(), ny * hy, ny, hy);
      k = cell_index_of(p.z(), nz * hz, nz, hz);
    }

    /// Physical (interstitial) velocity at a cell center, u = phi / n.
    Vec3 cell_velocity(int i, int j, int k) const
    {
      const Real n = porosity[cell(i, j, k)];
      const Real ux = 0.5 * (phi_x[xface(i, j, k)] + phi_x[xface(i + 1, j, k)]);
      const Real uy = 0.5 * (phi_y[yface(i, j, k)] + phi_y[yface(i, j + 1, k)]);
      const Real uz = 0.5 * (phi_z[zface(i, j, k)] + phi_z[zface(i, j, k + 1)]);
      return Vec3(ux, uy, uz) / n;
    }
  };
} // namespace sandprod
