// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/rng.hpp>
#include <sandprod/core/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sandprod
{
  struct PsdBin
  {
    Real diameter      = 0.0; // m
    Real mass_fraction = 0.0;
  };

  enum class PsdMode
  {
    Polydisperse,
    Monodisperse
  };

  /// Particle size distribution by mass fraction per diameter bin.
  struct PsdSpec
  {
    std::vector<PsdBin> bins;
    PsdMode             mode = PsdMode::Polydisperse;

    /// Count-weighted mean diameter (counts ~ w/d^3 at equal density).
    Real number_mean_diameter() const;
    /// Mass-weighted mean diameter sum(w*d).
    Real mass_mean_diameter() const;
    Real min_diameter() const;
    Real max_diameter() const;
  };

  inline Real sphere_volume(Real d)
  {
    return pi / 6.0 * d * d * d;
  }

  inline Real sphere_mass(Real d, Real density)
  {
    return density * sphere_volume(d);
  }

  struct SampledDiameters
  {
    std::vector<Real>          diameters;      // shuffled, one entry per particle
    std::vector<std::int64_t>  bin_counts;     // per PSD bin
    std::vector<Real>          realized_mass_fraction;
    Real                       total_mass     = 0.0; // realized
    Real                       residual_mass  = 0.0; // requested - realized
  };

  /// Converts mass fractions into per-bin particle counts
  /// (round-half-up of mass_bin / single-particle mass) and emits a
  /// deterministically shuffled diameter list. Fails when a bin cannot hold
  /// at least one particle.
  SampledDiameters sample_diameters(const PsdSpec& psd, Real total_mass,
                                    Real density, Rng& rng,
                                    std::string* error = nullptr);

  /// Total mass that makes sample_diameters produce approximately
  /// target_count particles.
  Real mass_for_target_count(const PsdSpec& psd, std::int64_t target_count,
                             Real density);

  /// Largest-remainder allocation of `total` into integer parts proportional
  /// to `weights`; used when dividing bin counts by k^3.
  std::vector<std::int64_t> largest_remainder_allocate(
    const std::vector<Real>& weights, std::int64_t total);
} // namespace sandprod
