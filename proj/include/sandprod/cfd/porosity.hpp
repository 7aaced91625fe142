// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/cfd/grid.hpp>
#include <sandprod/core/types.hpp>

#include <vector>

namespace sandprod
{
  struct PorosityStats
  {
    Real solid_volume   = 0.0; // conserved total before clamping
    int  clamped_cells  = 0;
    Real min_porosity   = 1.0; // after smoothing, before clamping
    Real mean_porosity  = 1.0;
  };

  /// Maps particle volumes onto the grid: each particle's volume goes to the
  /// cell containing its center, optionally followed by one conservative
  /// 3^3 box-smoothing pass, then the floor clamp. Axes marked periodic wrap
  /// during smoothing.
  PorosityStats compute_porosity(FluidGrid& grid,
                                 const std::vector<Vec3>& positions,
                                 const std::vector<Real>& radii,
                                 Real porosity_floor, bool smoothing,
                                 bool periodic_x, bool periodic_y,
                                 bool periodic_z);
} // namespace sandprod
