// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/cfd/grid.hpp>
#include <sandprod/coupling/drag.hpp>
#include <sandprod/dem/particle_set.hpp>
#include <sandprod/parallel/thread_pool.hpp>

#include <vector>

namespace sandprod
{
  struct DragExchangeStats
  {
    Real max_reynolds   = 0.0;
    Vec3 total_particle_force = Vec3::Zero(); // sum of per-particle drag
    int  samples        = 0;
  };

  struct DragExchangeOptions
  {
    Real rho_f          = 0.0;
    Real mu_f           = 0.0;
    bool superficial_re = false;
    bool trilinear      = false;
  };

  /// Evaluates drag for every particle against the frozen fluid field and
  /// deposits the reaction into grid.drag (sign opposite the particle force,
  /// per unit cell volume). Per-worker partial sums merge in worker order, so
  /// the result is independent of scheduling for a fixed worker count.
  DragExchangeStats exchange_drag(FluidGrid& grid, const ParticleSet& particles,
                                  std::vector<Vec3>& particle_force,
                                  const DragExchangeOptions& opt,
                                  ThreadPool& pool);

  /// Fluid velocity seen by a particle at `pos` (cell value or trilinear).
  Vec3 fluid_velocity_at(const FluidGrid& grid, const Vec3& pos, bool trilinear);
} // namespace sandprod
