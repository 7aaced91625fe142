// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/contact/contact_state.hpp>

#include <cstdint>
#include <unordered_map>

namespace sandprod
{
  /// Persistent per-pair contact state keyed by stable particle ids.
  /// Wall contacts use the wall's index in the high key with a flag bit.
  class ContactTable
  {
  public:
    static std::uint64_t pair_key(std::int64_t id_a, std::int64_t id_b)
    {
      const std::uint64_t lo = static_cast<std::uint64_t>(id_a < id_b ? id_a : id_b);
      const std::uint64_t hi = static_cast<std::uint64_t>(id_a < id_b ? id_b : id_a);
      return (hi << 31) | lo;
    }

    static std::uint64_t wall_key(std::int64_t particle_id, int wall_index)
    {
      return (1ULL << 62) |
             (static_cast<std::uint64_t>(wall_index) << 40) |
             static_cast<std::uint64_t>(particle_id);
    }

    ContactState& ensure(std::uint64_t key) { return map_[key]; }

    ContactState* find(std::uint64_t key)
    {
      auto it = map_.find(key);
      return it == map_.end() ? nullptr : &it->second;
    }

    /// Drops entries that carry no information (not bonded, not broken, not
    /// adhering, relaxed spring) and fail the predicate `keep`.
    template <typename Pred>
    void prune(Pred&& keep)
    {
      for (auto it = map_.begin(); it != map_.end();)
        {
          const ContactState& s = it->second;
          const bool inert = s.bond == BondState::NeverBonded && !s.adhering &&
                             s.tangential_disp.isZero();
          if (inert && !keep(it->first))
            it = map_.erase(it);
          else
            ++it;
        }
    }

    auto begin() { return map_.begin(); }
    auto end() { return map_.end(); }
    auto begin() const { return map_.begin(); }
    auto end() const { return map_.end(); }
    std::size_t size() const { return map_.size(); }
    void clear() { map_.clear(); }

  private:
    std::unordered_map<std::uint64_t, ContactState> map_;
  };
} // namespace sandprod
