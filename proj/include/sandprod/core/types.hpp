// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace sandprod
{
  using Real  = double;
  using Vec3  = Eigen::Vector3d;
  using Vec3i = Eigen::Vector3i;
  using Index = std::int64_t;

  inline constexpr Real pi = 3.14159265358979323846;
} // namespace sandprod
