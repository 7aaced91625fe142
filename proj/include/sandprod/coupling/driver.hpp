// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/cfd/porosity.hpp>
#include <sandprod/cfd/solver.hpp>
#include <sandprod/coupling/exchange.hpp>
#include <sandprod/core/config.hpp>
#include <sandprod/dem/system.hpp>

#include <stdexcept>

namespace sandprod
{
  struct CouplingGateError : std::runtime_error
  {
    explicit CouplingGateError(const std::string& what)
      : std::runtime_error(what)
    {}
  };

  struct CoupledStepReport
  {
    PorosityStats     porosity;
    DragExchangeStats drag;
    FluidStepInfo     fluid;
    StepDiagnostics   dem; // of the last substep
  };

  /// Staggered explicit coupling: porosity and drag refresh once per CFD
  /// step, the fluid advances, then the DEM runs its substeps against the
  /// frozen drag forces (plus buoyancy).
  class CoupledDriver
  {
  public:
    CoupledDriver(DemSystem& dem, FluidSolver& fluid, const RunConfig& cfg,
                  ThreadPool& pool);

    /// Unresolved-coupling cell-size requirement h / d_mean > 3; refuses to
    /// couple undersized cells unless the config overrides the gate.
    static void check_cell_size_gate(const RunConfig& cfg, Real h_min);

    bool drag_enabled = true;

    CoupledStepReport advance();

    const std::vector<Vec3>& drag_forces() const { return drag_force_; }

  private:
    DemSystem&       dem_;
    FluidSolver&     fluid_;
    const RunConfig& cfg_;
    ThreadPool&      pool_;
    std::vector<Vec3> drag_force_;
  };
} // namespace sandprod
