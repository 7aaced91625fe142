// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/dem/neighbor.hpp>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  void NeighborSearch::build(const std::vector<Vec3>& positions,
                             const std::vector<Real>& radii, Real skin,
                             const Vec3& lo, const Vec3& hi)
  {
    pairs_.clear();
    skin_ = skin;
    const std::size_t n = positions.size();
    if (n == 0)
      return;

    Real max_d = 0.0;
    for (const Real r : radii)
      max_d = std::max(max_d, 2.0 * r);
    const Real cell = max_d + skin;

    Vec3i dims;
    Vec3  span = hi - lo;
    for (int k = 0; k < 3; ++k)
      dims[k] = std::max(1, static_cast<int>(std::floor(span[k] / cell)));

    auto cell_of = [&](const Vec3& x) -> Vec3i {
      Vec3i c;
      for (int k = 0; k < 3; ++k)
        {
          const int idx = static_cast<int>(std::floor((x[k] - lo[k]) / span[k] *
                                                      static_cast<Real>(dims[k])));
          c[k] = std::clamp(idx, 0, dims[k] - 1);
        }
      return c;
    };
    auto flat = [&](const Vec3i& c) {
      return (c.z() * dims.y() + c.y()) * dims.x() + c.x();
    };

    const std::size_t ncells =
      static_cast<std::size_t>(dims.x()) * dims.y() * dims.z();
    head_.assign(ncells, -1);
    next_.assign(n, -1);
    // Insert in reverse so each cell's chain lists indices in ascending order.
    for (std::size_t p = n; p-- > 0;)
      {
        const std::size_t c = static_cast<std::size_t>(flat(cell_of(positions[p])));
        next_[p]            = head_[c];
        head_[c]            = static_cast<std::int32_t>(p);
      }

    // Forward half-stencil: self plus 13 of the 26 neighbors.
    static const int stencil[13][3] = {
      {1, 0, 0},  {-1, 1, 0}, {0, 1, 0},  {1, 1, 0},  {-1, -1, 1},
      {0, -1, 1}, {1, -1, 1}, {-1, 0, 1}, {0, 0, 1},  {1, 0, 1},
      {-1, 1, 1}, {0, 1, 1},  {1, 1, 1}};

    auto keep = [&](std::uint32_t a, std::uint32_t b) {
      const Real reach =
        radii[a] + radii[b] + skin;
      if ((positions[a] - positions[b]).squaredNorm() < reach * reach)
        pairs_.push_back({a, b});
    };

    for (int cz = 0; cz < dims.z(); ++cz)
      for (int cy = 0; cy < dims.y(); ++cy)
        for (int cx = 0; cx < dims.x(); ++cx)
          {
            const Vec3i c(cx, cy, cz);
            const std::size_t cc = static_cast<std::size_t>(flat(c));
            for (std::int32_t a = head_[cc]; a >= 0; a = next_[a])
              {
                for (std::int32_t b = next_[a]; b >= 0; b = next_[b])
                  keep(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
                for (const auto& s : stencil)
                  {
                    const Vec3i nb(cx + s[0], cy + s[1], cz + s[2]);
                    if (nb.x() < 0 || nb.x() >= dims.x() || nb.y() < 0 ||
                        nb.y() >= dims.y() || nb.z() < 0 || nb.z() >= dims.z())
                      continue;
                    const std::size_t nc = static_cast<std::size_t>(flat(nb));
                    for (std::int32_t b = head_[nc]; b >= 0; b = next_[b])
                      keep(static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b));
                  }
              }
          }
  }
} // namespace sandprod
