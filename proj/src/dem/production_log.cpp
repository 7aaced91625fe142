// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/dem/production_log.hpp>

#include <cstdio>

namespace sandprod
{
  const char* stage_name(StageId s)
  {
    switch (s)
      {
        case StageId::Generate:
          return "generate";
        case StageId::Compress:
          return "compress";
        case StageId::Perforate:
          return "perforate";
        case StageId::Produce:
          return "produce";
      }
    return "unknown";
  }

  Real ProductionLog::total_mass(StageId stage) const
  {
    Real sum = 0.0, c = 0.0;
    for (const auto& e : entries)
      {
        if (e.stage != stage)
          continue;
        const Real y = e.mass - c;
        const Real t = sum + y;
        c            = (t - sum) - y;
        sum          = t;
      }
    return sum;
  }

  Real ProductionLog::total_mass() const
  {
    Real sum = 0.0, c = 0.0;
    for (const auto& e : entries)
      {
        const Real y = e.mass - c;
        const Real t = sum + y;
        c            = (t - sum) - y;
        sum          = t;
      }
    return sum;
  }

  std::string ProductionLog::to_csv() const
  {
    std::string out = "stage,time,id,diameter,mass,bin\n";
    char        line[256];
    for (const auto& e : entries)
      {
        std::snprintf(line, sizeof(line), "%s,%.17g,%lld,%.17g,%.17g,%d\n",
                      stage_name(e.stage), e.time,
                      static_cast<long long>(e.id), e.diameter, e.mass, e.bin);
        out += line;
      }
    return out;
  }
} // namespace sandprod
