// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/domain.hpp>
#include <sandprod/core/material.hpp>
#include <sandprod/core/psd.hpp>
#include <sandprod/core/types.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sandprod
{
  enum class FaceBc
  {
    Wall,
    Inlet,
    Periodic,
    Hole
  };

  /// Boundary assignment per domain face; order xlo,xhi,ylo,yhi,zlo,zhi.
  struct FluidFaces
  {
    FaceBc x_lo = FaceBc::Periodic;
    FaceBc x_hi = FaceBc::Periodic;
    FaceBc y_lo = FaceBc::Inlet;
    FaceBc y_hi = FaceBc::Inlet;
    FaceBc z_lo = FaceBc::Hole;
    FaceBc z_hi = FaceBc::Hole;
  };

  struct FluidConfig
  {
    Real       density            = 998.2;   // kg/m^3
    Real       viscosity          = 1e-3;    // Pa.s
    Real       reference_pressure = 101325.0;
    int        nx = 0, ny = 0, nz = 0;       // production-stage grid
    Real       inlet_velocity = 1e-4;        // m/s, superficial, into the box
    FluidFaces faces;
  };

  struct GenerateConfig
  {
    std::int64_t particle_count         = 0;   // 0 => use total_mass
    Real         total_mass             = 0.0; // kg; 0 => use particle_count
    Real         insertion_packing      = 0.36;
    Real         settle_damping_rate    = 2e4;  // 1/s, generation-only viscous damper
    Real         settle_speed_threshold = 1e-3; // m/s
    std::int64_t max_settle_steps       = 40000;
    std::int64_t max_insert_attempts    = 2000; // per particle
  };

  struct CompressConfig
  {
    Real         target_stress   = 1e6;  // Pa
    Real         band            = 0.02; // +-2 %
    Real         plate_speed_max = 0.2;  // m/s
    Real         dwell_time      = 2e-4; // s the stress must hold in band
    std::int64_t max_steps       = 2000000;
  };

  struct PerforateConfig
  {
    Real         diameter    = 1.7e-3; // m
    Real         height      = 10e-3;  // m
    Real         drive_force = 0.0;    // N, downward; must be configured
    Real         speed_cap   = 0.5;    // m/s
    Real         stall_time  = 2e-3;   // s without progress => error
    std::int64_t max_steps   = 4000000;
  };

  struct ProduceConfig
  {
    Real              total_time = 0.04; // s
    std::vector<Real> window_fractions{0.075, 0.375}; // interior window edges
  };

  struct CoarseGrainInfo
  {
    Real        k = 1.0;
    std::string method;      // "ssw" | "ssp" | "" (fine)
    std::string source_hash; // config hash of the fine run this plan came from
  };

  struct RunConfig
  {
    Material    material;
    PsdSpec     psd;
    SimDomain   domain;
    FluidConfig fluid;

    Real         dem_dt          = 0.0;
    Real         cfd_dt          = 0.0;
    std::int64_t substeps        = 0; // cfd_dt / dem_dt, derived
    Real         safety_fraction = 0.2;

    std::uint64_t seed    = 0;
    int           workers = 1;
    std::int64_t  output_every_cfd_steps = 100;
    std::int64_t  output_every_dem_steps = 20000;
    Real          velocity_cap           = 50.0; // m/s instability guard

    // coupling options
    Real porosity_floor          = 0.2;
    bool porosity_smoothing      = true;
    bool drag_superficial_re     = false; // slip Reynolds as printed by default
    bool drag_trilinear_interp   = false;
    bool cell_size_gate_override = false;
    bool rayleigh_printed_shear  = false;
    Real ssp_mean_diameter       = 0.23e-3; // m

    GenerateConfig  generate;
    CompressConfig  compress;
    PerforateConfig perforate;
    ProduceConfig   produce;

    CoarseGrainInfo coarsegrain;

    /// FNV-1a over the canonical serialized form.
    std::string hash() const;
  };

  struct ValidationResult
  {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;

    bool ok() const { return config.has_value() && errors.empty(); }
  };

  /// Validates a parsed config document, collecting every violation rather
  /// than stopping at the first.
  ValidationResult validate_config(const nlohmann::json& raw);

  /// Reads + parses + validates a config file.
  ValidationResult load_config(const std::string& path);

  /// Canonical serialization; feeding the result back through validate_config
  /// reproduces an identical RunConfig.
  nlohmann::json serialize_config(const RunConfig& cfg);

  /// Number-average-radius Rayleigh critical step for this config's solid.
  Real config_rayleigh_dt(const RunConfig& cfg);
} // namespace sandprod
