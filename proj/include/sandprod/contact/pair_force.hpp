// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/contact/contact_state.hpp>
#include <sandprod/contact/hertz.hpp>
#include <sandprod/contact/jkr.hpp>
#include <sandprod/core/material.hpp>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  enum class ContactModel
  {
    Hertz,       // plain repulsion + friction (walls, broken bonds)
    OriginalJkr, // sticky; re-adheres on touch, detaches at the fold point S
    ModifiedJkr  // cemented; bonded pairs break irreversibly at point C
  };

  /// Pairwise effective properties, precomputed once per pair evaluation.
  struct PairProps
  {
    Real rstar = 0.0;
    Real estar = 0.0;
    Real gstar = 0.0;
    Real mstar = 0.0;
    Real gamma = 0.0;
    Real mu    = 0.0;
    Real restitution = 1.0;
  };

  inline PairProps particle_pair_props(const Material& m, Real r1, Real r2,
                                       Real mass1, Real mass2)
  {
    PairProps p;
    p.rstar       = effective_radius(r1, r2);
    p.estar       = effective_youngs_modulus(m, m);
    p.gstar       = effective_shear_modulus(m, m);
    p.mstar       = effective_mass(mass1, mass2);
    p.gamma       = m.surface_energy;
    p.mu          = m.friction;
    p.restitution = m.restitution;
    return p;
  }

  inline PairProps wall_pair_props(const Material& m, Real r, Real mass)
  {
    PairProps p;
    p.rstar       = r;
    p.estar       = wall_effective_youngs_modulus(m);
    p.gstar       = wall_effective_shear_modulus(m);
    p.mstar       = mass;
    p.gamma       = m.surface_energy;
    p.mu          = m.friction;
    p.restitution = m.restitution;
    return p;
  }

  /// Relative kinematics of j with respect to i at the contact point.
  struct PairKinematics
  {
    Vec3 normal  = Vec3::UnitZ(); // unit vector from i to j
    Real overlap = 0.0;           // r_i + r_j - distance; negative = gap
    Vec3 rel_velocity = Vec3::Zero();
    Real dt           = 0.0;
  };

  struct PairForceResult
  {
    Vec3 force_on_j     = Vec3::Zero(); // equal and opposite on i
    Vec3 tangential     = Vec3::Zero(); // tangential part of force_on_j
    Real normal_scalar  = 0.0;          // elastic normal force, signed
    bool in_contact     = false;
    bool bond_broke     = false;
  };

  /// Evaluates one contact law application and updates the persistent state.
  /// Pure in everything except `state`; identical inputs give identical
  /// outputs regardless of evaluation order.
  inline PairForceResult evaluate_pair_force(ContactModel model,
                                             const PairProps& props,
                                             const PairKinematics& kin,
                                             ContactState& state)
  {
    PairForceResult out;
    const Vec3 n   = kin.normal;
    const Real v_n = kin.rel_velocity.dot(n); // > 0 separating
    const Vec3 v_t = kin.rel_velocity - v_n * n;

    Real fn_elastic = 0.0;
    Real a          = 0.0;
    bool active     = false;

    switch (model)
      {
        case ContactModel::Hertz:
          if (kin.overlap > 0.0)
            {
              a          = hertz_contact_radius(kin.overlap, props.rstar);
              fn_elastic = hertz_normal_force(kin.overlap, props.rstar, props.estar);
              active     = true;
            }
          break;

        case ContactModel::OriginalJkr:
          {
            const auto points =
              jkr_characteristic_points(props.rstar, props.estar, props.gamma);
            if (!state.adhering && kin.overlap >= 0.0)
              state.adhering = true;
            if (state.adhering)
              {
                if (kin.overlap < points.delta_s)
                  {
                    state.adhering       = false;
                    state.contact_radius = 0.0;
                  }
                else
                  {
                    a = jkr_contact_radius(kin.overlap, props.rstar, props.estar,
                                           props.gamma, state.contact_radius);
                    fn_elastic =
                      jkr_normal_force(a, props.rstar, props.estar, props.gamma);
                    active = true;
                  }
              }
          }
          break;

        case ContactModel::ModifiedJkr:
          if (state.bond == BondState::Bonded)
            {
              const auto points = jkr_characteristic_points(
                props.rstar, props.estar, props.gamma);
              if (kin.overlap < points.delta_c)
                {
                  state.bond           = BondState::Broken;
                  state.contact_radius = 0.0;
                  out.bond_broke       = true;
                  // The force drops to the unbonded branch immediately; with
                  // overlap below delta_C < 0 that branch carries no force.
                }
              else
                {
                  a = jkr_contact_radius(kin.overlap, props.rstar, props.estar,
                                         props.gamma, state.contact_radius);
                  fn_elastic =
                    jkr_normal_force(a, props.rstar, props.estar, props.gamma);
                  active = true;
                }
            }
          if (state.bond != BondState::Bonded && kin.overlap > 0.0)
            {
              a          = hertz_contact_radius(kin.overlap, props.rstar);
              fn_elastic = hertz_normal_force(kin.overlap, props.rstar, props.estar);
              active     = true;
            }
          break;
      }

    if (!active)
      {
        state.tangential_disp.setZero();
        state.contact_radius = 0.0;
        return out;
      }

    state.contact_radius = a;
    out.in_contact       = true;
    out.normal_scalar    = fn_elastic;

    // Dashpot only under compressive overlap.
    Real fn_damp = 0.0;
    if (kin.overlap > 0.0)
      fn_damp = hertz_damping_force(v_n, props.estar, a, props.mstar,
                                    props.restitution);

    // Mindlin tangential spring with Coulomb cap.
    const Real k_t = 8.0 * props.gstar * a;
    Vec3& xi = state.tangential_disp;
    xi -= xi.dot(n) * n; // keep the stretch in the tangent plane
    xi += v_t * kin.dt;
    Vec3       f_t   = -k_t * xi;
    const Real cap   = props.mu * std::abs(fn_elastic);
    const Real f_t_n = f_t.norm();
    if (f_t_n > cap)
      {
        f_t = cap > 0.0 ? Vec3(f_t * (cap / f_t_n)) : Vec3::Zero();
        // Slide: shorten the spring so it sits exactly at the cap.
        xi = k_t > 0.0 ? Vec3(-f_t / k_t) : Vec3::Zero();
      }

    out.tangential = f_t;
    out.force_on_j = (fn_elastic + fn_damp) * n + f_t;
    return out;
  }
} // namespace sandprod
