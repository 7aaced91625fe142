// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/core/units.hpp>

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace sandprod::units
{
  namespace
  {
    struct UnitEntry
    {
      std::string_view name;
      Dim              dim;
      Real             to_si;
    };

    // clang-format off
    constexpr std::array<UnitEntry, 34> unit_table{{
      {"m",      Dim::Length,        1.0},
      {"cm",     Dim::Length,        1e-2},
      {"mm",     Dim::Length,        1e-3},
      {"um",     Dim::Length,        1e-6},
      {"s",      Dim::Time,          1.0},
      {"ms",     Dim::Time,          1e-3},
      {"us",     Dim::Time,          1e-6},
      {"ns",     Dim::Time,          1e-9},
      {"kg",     Dim::Mass,          1.0},
      {"g",      Dim::Mass,          1e-3},
      {"mg",     Dim::Mass,          1e-6},
      {"Pa",     Dim::Pressure,      1.0},
      {"kPa",    Dim::Pressure,      1e3},
      {"MPa",    Dim::Pressure,      1e6},
      {"GPa",    Dim::Pressure,      1e9},
      {"N",      Dim::Force,         1.0},
      {"mN",     Dim::Force,         1e-3},
      {"uN",     Dim::Force,         1e-6},
      {"kN",     Dim::Force,         1e3},
      {"kg/m^3", Dim::Density,       1.0},
      {"g/cm^3", Dim::Density,       1e3},
      {"m/s",    Dim::Velocity,      1.0},
      {"mm/s",   Dim::Velocity,      1e-3},
      {"cm/s",   Dim::Velocity,      1e-2},
      {"um/s",   Dim::Velocity,      1e-6},
      {"m/s^2",  Dim::Acceleration,  1.0},
      {"mm/s^2", Dim::Acceleration,  1e-3},
      {"Pa.s",   Dim::Viscosity,     1.0},
      {"Pa*s",   Dim::Viscosity,     1.0},
      {"mPa.s",  Dim::Viscosity,     1e-3},
      {"mPa*s",  Dim::Viscosity,     1e-3},
      {"J/m^2",  Dim::SurfaceEnergy, 1.0},
      {"mJ/m^2", Dim::SurfaceEnergy, 1e-3},
      {"N/m",    Dim::SurfaceEnergy, 1.0},
    }};
    // clang-format on

    std::string_view trim(std::string_view s)
    {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
      return s;
    }
  } // namespace

  std::optional<Quantity> parse_quantity(std::string_view text, Dim expected,
                                         std::string* error)
  {
    const std::string_view trimmed = trim(text);
    if (trimmed.empty())
      {
        if (error)
          *error = "empty quantity";
        return std::nullopt;
      }

    // Split at the first character that cannot belong to the number.
    std::size_t split = 0;
    while (split < trimmed.size())
      {
        const char c = trimmed[split];
        if ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.' ||
            c == 'e' || c == 'E')
          {
            // 'e' only counts as part of the number when followed by a digit
            // or sign ("1e-8"); otherwise it starts a unit.
            if ((c == 'e' || c == 'E') &&
                (split + 1 >= trimmed.size() ||
                 !((trimmed[split + 1] >= '0' && trimmed[split + 1] <= '9') ||
                   trimmed[split + 1] == '+' || trimmed[split + 1] == '-')))
              break;
            ++split;
          }
        else
          break;
      }

    const std::string number_part(trimmed.substr(0, split));
    const std::string_view unit_part = trim(trimmed.substr(split));

    char*      end   = nullptr;
    const Real value = std::strtod(number_part.c_str(), &end);
    if (number_part.empty() || end != number_part.c_str() + number_part.size())
      {
        if (error)
          *error = "cannot parse number in '" + std::string(trimmed) + "'";
        return std::nullopt;
      }

    if (expected == Dim::Dimensionless)
      {
        if (!unit_part.empty())
          {
            if (error)
              *error = "dimensionless value must not carry a unit, got '" +
                       std::string(unit_part) + "'";
            return std::nullopt;
          }
        return Quantity{value, Dim::Dimensionless};
      }

    if (unit_part.empty())
      {
        if (error)
          *error = "missing unit suffix on '" + std::string(trimmed) +
                   "' (expected e.g. '" + std::string(si_suffix(expected)) + "')";
        return std::nullopt;
      }

    for (const auto& entry : unit_table)
      {
        if (entry.name == unit_part)
          {
            if (entry.dim != expected)
              {
                if (error)
                  *error = "unit '" + std::string(unit_part) +
                           "' has the wrong dimension here (expected '" +
                           std::string(si_suffix(expected)) + "')";
                return std::nullopt;
              }
            return Quantity{value * entry.to_si, expected};
          }
      }

    if (error)
      *error = "unknown unit '" + std::string(unit_part) + "'";
    return std::nullopt;
  }

  std::string_view si_suffix(Dim dim)
  {
    switch (dim)
      {
        case Dim::Length:
          return "m";
        case Dim::Time:
          return "s";
        case Dim::Mass:
          return "kg";
        case Dim::Pressure:
          return "Pa";
        case Dim::Force:
          return "N";
        case Dim::Density:
          return "kg/m^3";
        case Dim::Velocity:
          return "m/s";
        case Dim::Acceleration:
          return "m/s^2";
        case Dim::Viscosity:
          return "Pa.s";
        case Dim::SurfaceEnergy:
          return "J/m^2";
        case Dim::Dimensionless:
          return "";
      }
    return "";
  }

  std::string format_quantity(Real value, Dim dim)
  {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    std::string out(buf);
    const std::string_view suffix = si_suffix(dim);
    if (!suffix.empty())
      {
        out += ' ';
        out += suffix;
      }
    return out;
  }
} // namespace sandprod::units
