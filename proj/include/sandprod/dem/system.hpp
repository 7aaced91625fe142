// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sandprod/contact/pair_force.hpp>
#include <sandprod/core/config.hpp>
#include <sandprod/core/domain.hpp>
#include <sandprod/dem/contact_table.hpp>
#include <sandprod/dem/neighbor.hpp>
#include <sandprod/dem/particle_set.hpp>
#include <sandprod/dem/production_log.hpp>
#include <sandprod/dem/walls.hpp>
#include <sandprod/parallel/thread_pool.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sandprod
{
  struct StepDiagnostics
  {
    Real         max_speed         = 0.0;
    Real         max_overlap_ratio = 0.0; // overlap / min radius over contacts
    Real         plate_force       = 0.0; // normal force magnitude on the top plate
    Real         penetrometer_force_z = 0.0; // net contact force on the tool
    int          removed             = 0;
    std::int64_t bonds_broken        = 0;
  };

  struct InstabilityError : std::runtime_error
  {
    explicit InstabilityError(const std::string& what)
      : std::runtime_error(what)
    {}
  };

  /// Explicit DEM engine: cell-list neighbor search with a Verlet skin,
  /// deterministic parallel force evaluation (per-worker accumulation buffers
  /// merged in worker order), semi-implicit Euler integration, moving top
  /// plate, penetrometer, and outlet removal.
  class DemSystem
  {
  public:
    DemSystem(const Material& material, const SimDomain& domain,
              ThreadPool& pool, Real velocity_cap, Real skin = 0.0);

    ParticleSet  particles;
    ContactTable contacts;
    ProductionLog log;

    // live geometry
    Real         ceiling_z;
    Real         ceiling_velocity = 0.0;
    bool         top_hole_open    = false;
    bool         remove_at_outlet = false;
    Penetrometer pen;

    ContactModel pp_model            = ContactModel::Hertz;
    bool         gravity_on          = true;
    Real         global_damping_rate = 0.0; // generation-stage viscous damper

    /// Per-particle coupling force (drag + buoyancy), held across substeps.
    std::vector<Vec3> external_force;

    StageId current_stage = StageId::Generate;
    Real    time          = 0.0; // stage-local clock

    const Material&  material() const { return material_; }
    const SimDomain& domain() const { return domain_; }

    /// One explicit step. Throws InstabilityError when any particle exceeds
    /// the velocity cap.
    StepDiagnostics step(Real dt);

    /// Marks every particle pair currently in contact (overlap >= 0) Bonded.
    std::int64_t mark_all_contacts_bonded();

    std::int64_t bonded_contact_count() const;

    /// Bonds per particle, indexed like `particles`.
    std::vector<int> bonds_per_particle() const;

    Real kinetic_energy() const;

    /// Force the next step to rebuild neighbor structures.
    void invalidate_neighbors() { rebuild_needed_ = true; }

    void sync_external_arrays() { external_force.assign(particles.size(), Vec3::Zero()); }

    Real skin() const { return skin_; }

  private:
    void rebuild();
    void removal_pass(Real dt, StepDiagnostics& diag);

    struct PairEntry
    {
      std::uint32_t i, j;
      ContactState* state;
      Real          reach_contact_sq;  // (r_i + r_j)^2
      Real          reach_adhesion_sq; // contact reach plus the JKR range
    };

    struct WallEntry
    {
      std::uint32_t particle;
      std::int16_t  wall; // 0..5 planes, 6 penetrometer
      ContactState* state;
    };

    ThreadPool& pool_;
    Material    material_;
    SimDomain   domain_;
    Real        velocity_cap_;
    Real        skin_;

    NeighborSearch          search_;
    std::vector<PairEntry>  pair_entries_;
    std::vector<WallEntry>  wall_entries_;
    std::vector<Vec3>       ref_positions_;
    Real                    ref_ceiling_   = 0.0;
    Real                    ref_pen_tip_   = 0.0;
    bool                    rebuild_needed_ = true;
    int                     rebuilds_since_prune_ = 0;

    // per-worker accumulation
    struct WorkerBuf
    {
      std::vector<Vec3>          force;
      std::vector<Vec3>          torque;
      std::vector<std::uint32_t> stamp;
      Real                       plate_fz   = 0.0;
      Real                       pen_fz     = 0.0;
      Real                       max_olap   = 0.0;
      Real                       max_speed  = 0.0;
      Real                       max_disp_sq = 0.0;
      std::int64_t               broke      = 0;
      bool                       unstable   = false;
      std::int64_t               unstable_id = -1;
    };
    std::vector<WorkerBuf> bufs_;
    std::uint32_t          epoch_ = 0;

    PairProps pp_props_base_; // estar/gstar/gamma/mu/e for particle pairs
    PairProps pw_props_base_; // ditto for particle-wall

    std::vector<PlaneWall> plane_walls() const;
  };
} // namespace sandprod
