// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/coupling/exchange.hpp>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  Vec3 fluid_velocity_at(const FluidGrid& grid, const Vec3& pos, bool trilinear)
  {
    if (!trilinear)
      {
        int i, j, k;
        grid.locate(pos, i, j, k);
        return grid.cell_velocity(i, j, k);
      }

    // Trilinear over cell-center velocities, clamped at the boundary.
    const Real fx = std::clamp(pos.x() / grid.hx - 0.5, 0.0,
                               static_cast<Real>(grid.nx - 1));
    const Real fy = std::clamp(pos.y() / grid.hy - 0.5, 0.0,
                               static_cast<Real>(grid.ny - 1));
    const Real fz = std::clamp(pos.z() / grid.hz - 0.5, 0.0,
                               static_cast<Real>(grid.nz - 1));
    const int i0 = std::min(static_cast<int>(fx), grid.nx - 1);
    const int j0 = std::min(static_cast<int>(fy), grid.ny - 1);
    const int k0 = std::min(static_cast<int>(fz), grid.nz - 1);
    const int i1 = std::min(i0 + 1, grid.nx - 1);
    const int j1 = std::min(j0 + 1, grid.ny - 1);
    const int k1 = std::min(k0 + 1, grid.nz - 1);
    const Real tx = fx - i0, ty = fy - j0, tz = fz - k0;

    auto v = [&](int i, int j, int k) { return grid.cell_velocity(i, j, k); };
    const Vec3 c00 = (1 - tx) * v(i0, j0, k0) + tx * v(i1, j0, k0);
    const Vec3 c10 = (1 - tx) * v(i0, j1, k0) + tx * v(i1, j1, k0);
    const Vec3 c01 = (1 - tx) * v(i0, j0, k1) + tx * v(i1, j0, k1);
    const Vec3 c11 = (1 - tx) * v(i0, j1, k1) + tx * v(i1, j1, k1);
    const Vec3 c0  = (1 - ty) * c00 + ty * c10;
    const Vec3 c1  = (1 - ty) * c01 + ty * c11;
    return (1 - tz) * c0 + tz * c1;
  }

  DragExchangeStats exchange_drag(FluidGrid& grid, const ParticleSet& particles,
                                  std::vector<Vec3>& particle_force,
                                  const DragExchangeOptions& opt,
                                  ThreadPool& pool)
  {
    const std::size_t n  = particles.size();
    const std::size_t nc = grid.cells();
    particle_force.assign(n, Vec3::Zero());

    const int workers = pool.worker_count();
    std::vector<std::vector<Vec3>> cell_sum(
      static_cast<std::size_t>(workers));
    std::vector<Real> worker_max_re(static_cast<std::size_t>(workers), 0.0);
    std::vector<Vec3> worker_total(static_cast<std::size_t>(workers),
                                   Vec3::Zero());
    for (auto& v : cell_sum)
      v.assign(nc, Vec3::Zero());

    pool.parallel_range(n, [&](int w, std::size_t begin, std::size_t end) {
      auto& cells = cell_sum[static_cast<std::size_t>(w)];
      Real  max_re = 0.0;
      Vec3  total  = Vec3::Zero();
      for (std::size_t p = begin; p < end; ++p)
        {
          int i, j, k;
          grid.locate(particles.position[p], i, j, k);
          const std::size_t c = grid.cell(i, j, k);
          const Vec3        u =
            fluid_velocity_at(grid, particles.position[p], opt.trilinear);
          const DragSample s = particle_drag(
            u, particles.velocity[p], 2.0 * particles.radius[p],
            grid.porosity[c], opt.rho_f, opt.mu_f, opt.superficial_re,
            particles.id[p]);
          particle_force[p] = s.force;
          cells[c] += s.force;
          total += s.force;
          max_re = std::max(max_re, s.reynolds);
        }
      worker_max_re[static_cast<std::size_t>(w)] = max_re;
      worker_total[static_cast<std::size_t>(w)]  = total;
    });

    // Reaction on the fluid, merged in fixed worker order.
    const Real inv_v = 1.0 / grid.cell_volume();
    for (std::size_t c = 0; c < nc; ++c)
      {
        Vec3 sum = Vec3::Zero();
        for (int w = 0; w < workers; ++w)
          sum += cell_sum[static_cast<std::size_t>(w)][c];
        grid.drag[c] = -sum * inv_v;
      }

    DragExchangeStats stats;
    stats.samples = static_cast<int>(n);
    for (int w = 0; w < workers; ++w)
      {
        stats.max_reynolds =
          std::max(stats.max_reynolds, worker_max_re[static_cast<std::size_t>(w)]);
        stats.total_particle_force += worker_total[static_cast<std::size_t>(w)];
      }
    return stats;
  }
} // namespace sandprod
