// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/cfd/grid.hpp>
#include <sandprod/core/config.hpp>
#include <sandprod/core/domain.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sandprod
{
  struct FluidSolveError : std::runtime_error
  {
    explicit FluidSolveError(const std::string& what,
                             std::vector<Real> residual_history = {})
      : std::runtime_error(what), history(std::move(residual_history))
    {}
    std::vector<Real> history;
  };

  struct FluidStepInfo
  {
    Real continuity_residual = 0.0; // normalized, non-Dirichlet cells
    Real max_courant         = 0.0;
    int  poisson_iterations  = 0;
  };

  /// Pressure-velocity projection for the porosity-weighted incompressible
  /// momentum equation (model A): explicit upwind advection and diffusion of
  /// phi = n u, then a variable-coefficient pressure Poisson correction that
  /// drives div(phi) + dn/dt to zero on every non-Dirichlet cell.
  class FluidSolver
  {
  public:
    FluidSolver(int nx, int ny, int nz, Real hx, Real hy, Real hz,
                const FluidConfig& fluid, const SimDomain& domain);

    FluidGrid grid;

    Real density;
    Real viscosity;
    Real reference_pressure;
    Real inlet_velocity; // superficial inflow speed on inlet faces
    Vec3 gravity = Vec3::Zero();

    FluidFaces faces;
    OutletSpec hole_lo, hole_hi;
    Real       p_hole_lo, p_hole_hi;

    /// Continuity tolerance on the normalized divergence.
    Real residual_tolerance = 1e-8;

    FluidStepInfo step(Real dt);

    /// Re-derives the Dirichlet (fixed-pressure) cell mask from the face
    /// spec; called automatically on construction.
    void rebuild_masks();

    bool is_pressure_cell(int i, int j, int k) const
    {
      return dirichlet_[grid.cell(i, j, k)] != 0;
    }

    /// max over non-Dirichlet cells of |div(phi) + dn/dt|, normalized by the
    /// current flux scale; the audit quantity behind the step contract.
    Real continuity_residual(Real dt) const;

    /// Fills every inlet/wall/hole boundary face with its boundary value.
    void apply_boundary_fluxes();

    Real          flux_scale() const;
    std::uint8_t  dirichlet_mask(std::size_t c) const { return dirichlet_[c]; }

  private:
    std::vector<std::uint8_t> dirichlet_; // 1 = pressure fixed in this cell
    std::vector<Real>         dirichlet_value_;

    Real face_porosity_x(int i, int j, int k) const;
    Real face_porosity_y(int i, int j, int k) const;
    Real face_porosity_z(int i, int j, int k) const;

    void predictor(Real dt, std::vector<Real>& sx, std::vector<Real>& sy,
                   std::vector<Real>& sz);
  };
} // namespace sandprod
