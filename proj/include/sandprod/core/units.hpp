// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace sandprod::units
{
  /// Physical dimension a config quantity must carry. Dimensionless values
  /// are plain numbers in the config; everything else is "<number> <unit>".
  enum class Dim
  {
    Length,
    Time,
    Mass,
    Pressure,
    Force,
    Density,
    Velocity,
    Acceleration,
    Viscosity,
    SurfaceEnergy,
    Dimensionless
  };

  struct Quantity
  {
    Real  value = 0.0; // in SI base units
    Dim   dim   = Dim::Dimensionless;
  };

  /// Parses "0.25 mm", "1 MPa", "998.2 kg/m^3", ... into SI. Returns nullopt
  /// (with a message) when the unit is unknown or belongs to another dimension.
  std::optional<Quantity> parse_quantity(std::string_view text, Dim expected,
                                         std::string* error = nullptr);

  /// Canonical unit suffix used when serializing a dimension back to text.
  std::string_view si_suffix(Dim dim);

  /// Formats an SI value with its canonical suffix, full precision.
  std::string format_quantity(Real value, Dim dim);
} // namespace sandprod::units
