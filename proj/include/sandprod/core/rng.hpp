// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cmath>
#include <cstdint>
#include <string_view>

namespace sandprod
{
  /// Deterministic 64-bit generator (splitmix64 core). The standard-library
  /// distributions are implementation-defined, so uniform/normal draws are
  /// spelled out here; results are identical on every platform.
  class Rng
  {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64()
    {
      std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    Real uniform()
    {
      return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53;
    }

    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

    /// Index in [0, n).
    std::uint64_t uniform_index(std::uint64_t n)
    {
      // Rejection-free modulo bias is negligible for n << 2^64 but avoid it
      // anyway with Lemire's multiply-shift reduction.
      const unsigned __int128 prod =
        static_cast<unsigned __int128>(next_u64()) * n;
      return static_cast<std::uint64_t>(prod >> 64);
    }

    /// Standard normal via Box-Muller (fresh pair every other call).
    Real normal()
    {
      if (have_spare_)
        {
          have_spare_ = false;
          return spare_;
        }
      Real u1 = uniform();
      Real u2 = uniform();
      if (u1 <= 0.0)
        u1 = 0x1.0p-53;
      const Real r     = std::sqrt(-2.0 * std::log(u1));
      const Real theta = 2.0 * pi * u2;
      spare_           = r * std::sin(theta);
      have_spare_      = true;
      return r * std::cos(theta);
    }

    /// Derives an independent sub-stream, e.g. one per stage, so that a stage
    /// replayed from a checkpoint consumes exactly the same sequence as the
    /// fused run.
    Rng derive(std::string_view label) const
    {
      std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
      for (const char c : label)
        {
          h ^= static_cast<std::uint8_t>(c);
          h *= 0x100000001b3ULL;
        }
      Rng sub(state_ ^ h);
      sub.next_u64(); // decorrelate from the parent state
      return sub;
    }

    std::uint64_t state() const { return state_; }
    void          set_state(std::uint64_t s)
    {
      state_      = s;
      have_spare_ = false;
    }

  private:
    std::uint64_t state_;
    Real          spare_      = 0.0;
    bool          have_spare_ = false;
  };
} // namespace sandprod
