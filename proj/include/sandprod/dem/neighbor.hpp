// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cstdint>
#include <vector>

namespace sandprod
{
  struct CandidatePair
  {
    std::uint32_t i;
    std::uint32_t j;
  };

  /// Uniform cell list over an axis-aligned box. Cell size is at least the
  /// largest particle diameter plus the skin, so every pair with
  /// gap < skin appears among the candidates (no false negatives).
  class NeighborSearch
  {
  public:
    /// bounds_lo/hi: box covering all particle centers. Pairs come out in a
    /// fixed lexicographic cell order; the list order is deterministic.
    void build(const std::vector<Vec3>& positions,
               const std::vector<Real>& radii, Real skin, const Vec3& lo,
               const Vec3& hi);

    const std::vector<CandidatePair>& pairs() const { return pairs_; }

    Real skin() const { return skin_; }

  private:
    std::vector<CandidatePair>  pairs_;
    std::vector<std::int32_t>   head_;
    std::vector<std::int32_t>   next_;
    Real                        skin_ = 0.0;
  };
} // namespace sandprod
