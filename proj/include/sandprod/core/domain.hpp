// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

namespace sandprod
{
  /// Circular hole on a z-face, specified by its center in the face plane.
  struct OutletSpec
  {
    Real center_x = 0.0; // m, relative to the domain corner
    Real center_y = 0.0;
    Real diameter = 0.0;

    bool contains(Real x, Real y) const
    {
      const Real dx = x - center_x;
      const Real dy = y - center_y;
      return dx * dx + dy * dy <= 0.25 * diameter * diameter;
    }
  };

  /// Axis-aligned box [0,lx]x[0,ly]x[0,lz]. lz is the generation-stage height;
  /// compression lowers the live ceiling, which is tracked by the DEM state,
  /// not here.
  struct SimDomain
  {
    Real       lx = 0.0, ly = 0.0, lz = 0.0; // m
    OutletSpec outlet_top;    // particle + fluid outlet on the +z face
    OutletSpec outlet_bottom; // fluid-only hole on the -z face
    Vec3       gravity = Vec3(0.0, 0.0, -9.81);
  };
} // namespace sandprod
