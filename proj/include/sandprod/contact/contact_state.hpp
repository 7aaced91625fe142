// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <cstdint>

namespace sandprod
{
  /// Bond life cycle of the cemented contact model. Broken is absorbing; new
  /// contacts after breakage stay Hertzian.
  enum class BondState : std::uint8_t
  {
    NeverBonded = 0,
    Bonded      = 1,
    Broken      = 2
  };

  /// Persistent per-pair state, kept in the contact table across steps.
  struct ContactState
  {
    Vec3      tangential_disp = Vec3::Zero(); // Mindlin spring stretch (m)
    Real      contact_radius  = 0.0;          // warm start for the JKR inversion
    BondState bond            = BondState::NeverBonded;
    bool      adhering        = false; // original-JKR contact currently sticky
  };
} // namespace sandprod
