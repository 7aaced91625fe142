// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sandprod
{
  enum class StageId : std::uint8_t
  {
    Generate  = 0,
    Compress  = 1,
    Perforate = 2,
    Produce   = 3
  };

  const char* stage_name(StageId s);

  struct ProducedParticle
  {
    Real         time = 0.0; // stage-local clock (s)
    std::int64_t id   = 0;
    Real         diameter = 0.0;
    Real         mass     = 0.0;
    int          bin      = 0;
    StageId      stage    = StageId::Produce;
  };

  /// Time-stamped record of every particle that left through the outlet.
  struct ProductionLog
  {
    std::vector<ProducedParticle> entries;

    Real total_mass(StageId stage) const;
    Real total_mass() const;

    /// Deterministic CSV body; identical state serializes byte-identically.
    std::string to_csv() const;
  };
} // namespace sandprod
