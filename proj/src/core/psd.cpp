// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/core/psd.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sandprod
{
  Real PsdSpec::number_mean_diameter() const
  {
    Real wsum = 0.0, dsum = 0.0;
    for (const auto& b : bins)
      {
        const Real n = b.mass_fraction / (b.diameter * b.diameter * b.diameter);
        wsum += n;
        dsum += n * b.diameter;
      }
    return wsum > 0.0 ? dsum / wsum : 0.0;
  }

  Real PsdSpec::mass_mean_diameter() const
  {
    Real dsum = 0.0;
    for (const auto& b : bins)
      dsum += b.mass_fraction * b.diameter;
    return dsum;
  }

  Real PsdSpec::min_diameter() const
  {
    Real d = bins.empty() ? 0.0 : bins.front().diameter;
    for (const auto& b : bins)
      d = std::min(d, b.diameter);
    return d;
  }

  Real PsdSpec::max_diameter() const
  {
    Real d = 0.0;
    for (const auto& b : bins)
      d = std::max(d, b.diameter);
    return d;
  }

  SampledDiameters sample_diameters(const PsdSpec& psd, Real total_mass,
                                    Real density, Rng& rng, std::string* error)
  {
    SampledDiameters out;
    out.bin_counts.resize(psd.bins.size(), 0);
    out.realized_mass_fraction.resize(psd.bins.size(), 0.0);

    for (std::size_t b = 0; b < psd.bins.size(); ++b)
      {
        const Real m_single = sphere_mass(psd.bins[b].diameter, density);
        const Real m_bin    = psd.bins[b].mass_fraction * total_mass;
        // round-half-up
        const auto count =
          static_cast<std::int64_t>(std::floor(m_bin / m_single + 0.5));
        if (count < 1)
          {
            if (error)
              *error = "total_mass too small: PSD bin with diameter " +
                       std::to_string(psd.bins[b].diameter) +
                       " m cannot hold a single particle";
            return out;
          }
        out.bin_counts[b] = count;
        out.total_mass += static_cast<Real>(count) * m_single;
      }
    out.residual_mass = total_mass - out.total_mass;

    for (std::size_t b = 0; b < psd.bins.size(); ++b)
      {
        const Real m_single = sphere_mass(psd.bins[b].diameter, density);
        out.realized_mass_fraction[b] =
          static_cast<Real>(out.bin_counts[b]) * m_single / out.total_mass;
        for (std::int64_t i = 0; i < out.bin_counts[b]; ++i)
          out.diameters.push_back(psd.bins[b].diameter);
      }

    // Fisher-Yates with the deterministic generator, so insertion order does
    // not segregate sizes.
    for (std::size_t i = out.diameters.size(); i > 1; --i)
      {
        const std::uint64_t j = rng.uniform_index(i);
        std::swap(out.diameters[i - 1], out.diameters[j]);
      }
    return out;
  }

  Real mass_for_target_count(const PsdSpec& psd, std::int64_t target_count,
                             Real density)
  {
    Real count_per_mass = 0.0; // sum over bins of w_b / m_b
    for (const auto& b : psd.bins)
      count_per_mass += b.mass_fraction / sphere_mass(b.diameter, density);
    return static_cast<Real>(target_count) / count_per_mass;
  }

  std::vector<std::int64_t> largest_remainder_allocate(
    const std::vector<Real>& weights, std::int64_t total)
  {
    const Real wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::int64_t> counts(weights.size(), 0);
    std::vector<std::pair<Real, std::size_t>> remainders;
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      {
        const Real exact = static_cast<Real>(total) * weights[i] / wsum;
        counts[i]        = static_cast<std::int64_t>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
      }
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first)
                  return a.first > b.first;
                return a.second < b.second; // stable tie-break by bin index
              });
    for (std::int64_t k = 0; k < total - assigned; ++k)
      ++counts[remainders[static_cast<std::size_t>(k) % remainders.size()].second];
    return counts;
  }
} // namespace sandprod
