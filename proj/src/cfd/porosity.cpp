// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/cfd/porosity.hpp>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  PorosityStats compute_porosity(FluidGrid& grid,
                                 const std::vector<Vec3>& positions,
                                 const std::vector<Real>& radii,
                                 Real porosity_floor, bool smoothing,
                                 bool periodic_x, bool periodic_y,
                                 bool periodic_z)
  {
    PorosityStats stats;
    const std::size_t nc = grid.cells();
    std::vector<Real> solid(nc, 0.0);

    for (std::size_t p = 0; p < positions.size(); ++p)
      {
        int i, j, k;
        grid.locate(positions[p], i, j, k);
        const Real v = (4.0 / 3.0) * pi * radii[p] * radii[p] * radii[p];
        solid[grid.cell(i, j, k)] += v;
        stats.solid_volume += v;
      }

    if (smoothing)
      {
        // Each cell's solid volume is split evenly over its in-range 3^3
        // neighborhood; the redistribution is exactly conservative.
        std::vector<Real> smooth(nc, 0.0);
        for (int k = 0; k < grid.nz; ++k)
          for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
              {
                const Real v = solid[grid.cell(i, j, k)];
                if (v == 0.0)
                  continue;
                int targets[27][3];
                int count = 0;
                for (int dk = -1; dk <= 1; ++dk)
                  for (int dj = -1; dj <= 1; ++dj)
                    for (int di = -1; di <= 1; ++di)
                      {
                        int ii = i + di, jj = j + dj, kk = k + dk;
                        if (periodic_x)
                          ii = (ii + grid.nx) % grid.nx;
                        if (periodic_y)
                          jj = (jj + grid.ny) % grid.ny;
                        if (periodic_z)
                          kk = (kk + grid.nz) % grid.nz;
                        if (ii < 0 || ii >= grid.nx || jj < 0 ||
                            jj >= grid.ny || kk < 0 || kk >= grid.nz)
                          continue;
                        targets[count][0] = ii;
                        targets[count][1] = jj;
                        targets[count][2] = kk;
                        ++count;
                      }
                const Real share = v / static_cast<Real>(count);
                for (int t = 0; t < count; ++t)
                  smooth[grid.cell(targets[t][0], targets[t][1],
                                   targets[t][2])] += share;
              }
        solid.swap(smooth);
      }

    const Real vcell = grid.cell_volume();
    Real       mean  = 0.0;
    for (std::size_t c = 0; c < nc; ++c)
      {
        Real n = 1.0 - solid[c] / vcell;
        stats.min_porosity = std::min(stats.min_porosity, n);
        if (n < porosity_floor)
          {
            n = porosity_floor;
            ++stats.clamped_cells;
          }
        if (n > 1.0)
          n = 1.0;
        grid.porosity[c] = n;
        mean += n;
      }
    stats.mean_porosity = nc > 0 ? mean / static_cast<Real>(nc) : 1.0;
    return stats;
  }
} // namespace sandprod
