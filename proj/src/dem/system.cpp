// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/dem/system.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sandprod
{
  DemSystem::DemSystem(const Material& material, const SimDomain& domain,
                       ThreadPool& pool, Real velocity_cap, Real skin)
    : pool_(pool), material_(material), domain_(domain),
      velocity_cap_(velocity_cap), skin_(skin)
  {
    ceiling_z = domain.lz;
    if (skin_ <= 0.0)
      skin_ = 0.15 * 0.5 * 0.15e-3; // overwritten below once particles exist
    pp_props_base_ = particle_pair_props(material_, 1.0, 1.0, 1.0, 1.0);
    pw_props_base_ = wall_pair_props(material_, 1.0, 1.0);
    bufs_.resize(static_cast<std::size_t>(pool_.worker_count()));
  }

  std::vector<PlaneWall> DemSystem::plane_walls() const
  {
    std::vector<PlaneWall> walls(6);
    walls[0].point  = Vec3::Zero();
    walls[0].normal = Vec3::UnitX();
    walls[1].point  = Vec3(domain_.lx, 0, 0);
    walls[1].normal = -Vec3::UnitX();
    walls[2].point  = Vec3::Zero();
    walls[2].normal = Vec3::UnitY();
    walls[3].point  = Vec3(0, domain_.ly, 0);
    walls[3].normal = -Vec3::UnitY();
    walls[4].point  = Vec3::Zero();
    walls[4].normal = Vec3::UnitZ(); // floor; fluid-only hole stays solid here
    walls[5].point  = Vec3(0, 0, ceiling_z);
    walls[5].normal = -Vec3::UnitZ();
    walls[5].velocity = Vec3(0, 0, ceiling_velocity);
    walls[5].has_hole = top_hole_open;
    walls[5].hole     = domain_.outlet_top;
    return walls;
  }

  void DemSystem::rebuild()
  {
    const std::size_t n = particles.size();
    ref_positions_      = particles.position;
    ref_ceiling_        = ceiling_z;
    ref_pen_tip_        = pen.tip_z;

    if (n > 0 && skin_ <= 0.0)
      {
        // Auto skin: a third of the smallest radius.
        Real rmin = particles.radius[0];
        for (const Real r : particles.radius)
          rmin = std::min(rmin, r);
        skin_ = rmin / 3.0;
      }
    Vec3 lo = Vec3::Zero(), hi = Vec3::Ones();
    if (n > 0)
      {
        lo = hi = particles.position[0];
        for (const auto& x : particles.position)
          {
            lo = lo.cwiseMin(x);
            hi = hi.cwiseMax(x);
          }
      }
    lo.array() -= 1e-9;
    hi.array() += 1e-9;
    search_.build(particles.position, particles.radius, skin_, lo, hi);

    // JKR adhesion reach: |delta_S| grows like R*^(1/3); precompute the unit
    // coefficient once.
    const Real estar = effective_youngs_modulus(material_, material_);
    const Real gamma = material_.surface_energy;
    const Real range_unit =
      1.5 / std::cbrt(2.0) *
      std::cbrt(pi * pi * gamma * gamma / (estar * estar));

    pair_entries_.clear();
    pair_entries_.reserve(search_.pairs().size());
    for (const auto& pr : search_.pairs())
      {
        PairEntry e;
        e.i = pr.i;
        e.j = pr.j;
        const Real sum_r = particles.radius[pr.i] + particles.radius[pr.j];
        const Real rstar =
          effective_radius(particles.radius[pr.i], particles.radius[pr.j]);
        const Real range    = 1.02 * range_unit * std::cbrt(rstar);
        e.reach_contact_sq  = sum_r * sum_r;
        const Real adhesive = sum_r + range;
        e.reach_adhesion_sq = adhesive * adhesive;
        e.state             = &contacts.ensure(
          ContactTable::pair_key(particles.id[pr.i], particles.id[pr.j]));
        pair_entries_.push_back(e);
      }

    // Particles near walls or the tool get persistent wall-contact slots.
    wall_entries_.clear();
    const auto walls = plane_walls();
    for (std::uint32_t p = 0; p < n; ++p)
      {
        const Vec3& x = particles.position[p];
        const Real  reach = particles.radius[p] + skin_;
        for (int w = 0; w < 6; ++w)
          {
            if ((x - walls[w].point).dot(walls[w].normal) < reach)
              wall_entries_.push_back(
                {p, static_cast<std::int16_t>(w),
                 &contacts.ensure(ContactTable::wall_key(particles.id[p], w))});
          }
        if (pen.active)
          {
            const Real dx  = x.x() - pen.center_x;
            const Real dy  = x.y() - pen.center_y;
            const Real rho = std::sqrt(dx * dx + dy * dy);
            const bool near_lateral =
              rho < pen.radius + reach && x.z() > pen.tip_z - reach;
            const bool near_tip = rho < pen.radius + reach &&
                                  std::abs(x.z() - pen.tip_z) < reach + pen.radius;
            if (near_lateral || near_tip)
              wall_entries_.push_back(
                {p, static_cast<std::int16_t>(6),
                 &contacts.ensure(ContactTable::wall_key(particles.id[p], 6))});
          }
      }

    if (++rebuilds_since_prune_ >= 64)
      {
        rebuilds_since_prune_ = 0;
        std::unordered_set<std::uint64_t> live;
        live.reserve(pair_entries_.size() + wall_entries_.size());
        for (const auto& e : pair_entries_)
          live.insert(ContactTable::pair_key(particles.id[e.i], particles.id[e.j]));
        for (const auto& e : wall_entries_)
          live.insert(ContactTable::wall_key(particles.id[e.particle], e.wall));
        contacts.prune([&](std::uint64_t key) { return live.count(key) != 0; });
        // Pointers may still be valid (no rehash on erase), but re-resolve to
        // stay safe against erased entries.
        for (auto& e : pair_entries_)
          e.state = &contacts.ensure(
            ContactTable::pair_key(particles.id[e.i], particles.id[e.j]));
        for (auto& e : wall_entries_)
          e.state =
            &contacts.ensure(ContactTable::wall_key(particles.id[e.particle], e.wall));
      }

    for (auto& b : bufs_)
      {
        b.force.assign(n, Vec3::Zero());
        b.torque.assign(n, Vec3::Zero());
        b.stamp.assign(n, 0);
      }
    epoch_          = 0;
    rebuild_needed_ = false;
  }

  StepDiagnostics DemSystem::step(Real dt)
  {
    const std::size_t n = particles.size();
    StepDiagnostics   diag;
    if (external_force.size() != n)
      external_force.assign(n, Vec3::Zero());

    // Displacement-based rebuild trigger (includes moving boundaries).
    if (!rebuild_needed_ && !ref_positions_.empty())
      {
        const Real half_skin = 0.5 * skin_;
        const Real boundary_move = std::abs(ceiling_z - ref_ceiling_) +
                                   std::abs(pen.tip_z - ref_pen_tip_);
        Real max_disp_sq = 0.0;
        for (auto& b : bufs_)
          max_disp_sq = std::max(max_disp_sq, b.max_disp_sq);
        if (std::sqrt(max_disp_sq) + boundary_move > half_skin)
          rebuild_needed_ = true;
      }
    if (rebuild_needed_ || ref_positions_.size() != n)
      rebuild();

    ++epoch_;
    const std::uint32_t epoch = epoch_;
    const auto          walls = plane_walls();

    for (auto& b : bufs_)
      {
        b.plate_fz    = 0.0;
        b.pen_fz      = 0.0;
        b.max_olap    = 0.0;
        b.broke       = 0;
        b.max_speed   = 0.0;
        b.max_disp_sq = 0.0;
        b.unstable    = false;
        b.unstable_id = -1;
      }

    // Phase 1: pair forces, one contiguous chunk of the pair list per worker.
    const auto& positions = particles.position;
    pool_.parallel_range(
      pair_entries_.size(),
      [&](int w, std::size_t begin, std::size_t end) {
        WorkerBuf& buf = bufs_[static_cast<std::size_t>(w)];
        auto accumulate = [&](std::uint32_t p, const Vec3& f, const Vec3& t) {
          if (buf.stamp[p] != epoch)
            {
              buf.stamp[p]  = epoch;
              buf.force[p]  = f;
              buf.torque[p] = t;
            }
          else
            {
              buf.force[p] += f;
              buf.torque[p] += t;
            }
        };
        for (std::size_t k = begin; k < end; ++k)
          {
            const PairEntry& e   = pair_entries_[k];
            const Vec3       rel = positions[e.j] - positions[e.i];
            const Real       d2  = rel.squaredNorm();
            if (d2 > e.reach_adhesion_sq)
              {
                ContactState& s = *e.state;
                if (s.bond == BondState::Bonded)
                  {
                    s.bond = BondState::Broken;
                    ++buf.broke;
                  }
                s.adhering       = false;
                s.contact_radius = 0.0;
                if (!s.tangential_disp.isZero())
                  s.tangential_disp.setZero();
                continue;
              }
            const Real dist = std::sqrt(d2);
            const Real r_i  = particles.radius[e.i];
            const Real r_j  = particles.radius[e.j];

            PairKinematics kin;
            kin.normal  = dist > 0.0 ? Vec3(rel / dist) : Vec3::UnitZ();
            kin.overlap = r_i + r_j - dist;
            kin.dt      = dt;

            const Vec3 arm_i = (r_i - 0.5 * kin.overlap) * kin.normal;
            const Vec3 arm_j = -(r_j - 0.5 * kin.overlap) * kin.normal;
            kin.rel_velocity =
              (particles.velocity[e.j] +
               particles.angular_velocity[e.j].cross(arm_j)) -
              (particles.velocity[e.i] +
               particles.angular_velocity[e.i].cross(arm_i));

            PairProps props = pp_props_base_;
            props.rstar     = effective_radius(r_i, r_j);
            props.mstar = effective_mass(particles.mass[e.i], particles.mass[e.j]);

            ContactState&   s   = *e.state;
            PairForceResult res = evaluate_pair_force(pp_model, props, kin, s);
            if (res.bond_broke)
              ++buf.broke;
            if (!res.in_contact)
              continue;

            accumulate(e.j, res.force_on_j,
                       arm_j.cross(res.tangential));
            accumulate(e.i, -res.force_on_j,
                       arm_i.cross(-res.tangential));
            if (kin.overlap > 0.0)
              buf.max_olap = std::max(buf.max_olap,
                                      kin.overlap / std::min(r_i, r_j));
          }
      });

    // Phase 2: wall and tool forces.
    pool_.parallel_range(
      wall_entries_.size(),
      [&](int w, std::size_t begin, std::size_t end) {
        WorkerBuf& buf = bufs_[static_cast<std::size_t>(w)];
        auto accumulate = [&](std::uint32_t p, const Vec3& f, const Vec3& t) {
          if (buf.stamp[p] != epoch)
            {
              buf.stamp[p]  = epoch;
              buf.force[p]  = f;
              buf.torque[p] = t;
            }
          else
            {
              buf.force[p] += f;
              buf.torque[p] += t;
            }
        };
        for (std::size_t k = begin; k < end; ++k)
          {
            const WallEntry& e = wall_entries_[k];
            const std::uint32_t p = e.particle;
            std::optional<WallContact> c;
            if (e.wall < 6)
              c = walls[static_cast<std::size_t>(e.wall)].probe(
                positions[p], particles.radius[p]);
            else
              c = pen.probe(positions[p], particles.radius[p]);
            ContactState& s = *e.state;
            if (!c)
              {
                s.adhering       = false;
                s.contact_radius = 0.0;
                if (!s.tangential_disp.isZero())
                  s.tangential_disp.setZero();
                continue;
              }

            PairKinematics kin;
            kin.normal  = c->normal;
            kin.overlap = c->overlap;
            kin.dt      = dt;
            const Vec3 arm =
              -(particles.radius[p] - 0.5 * c->overlap) * c->normal;
            kin.rel_velocity = (particles.velocity[p] +
                                particles.angular_velocity[p].cross(arm)) -
                               c->surface_velocity;

            PairProps props = pw_props_base_;
            props.rstar     = particles.radius[p];
            props.mstar     = particles.mass[p];

            // Walls are never cohesive: plain Hertz in every stage.
            PairForceResult res =
              evaluate_pair_force(ContactModel::Hertz, props, kin, s);
            if (!res.in_contact)
              continue;
            accumulate(p, res.force_on_j, arm.cross(res.tangential));
            if (e.wall == 5)
              buf.plate_fz += -res.force_on_j.z();
            else if (e.wall == 6)
              buf.pen_fz += -res.force_on_j.z();
            buf.max_olap =
              std::max(buf.max_olap, c->overlap / particles.radius[p]);
          }
      });

    // Phase 3: merge per-worker buffers in worker order, integrate.
    const int  workers   = pool_.worker_count();
    const Vec3 g_accel   = gravity_on ? domain_.gravity : Vec3::Zero();
    const Real damp      = global_damping_rate;
    const Real cap_sq    = velocity_cap_ * velocity_cap_;

    pool_.parallel_range(n, [&](int w, std::size_t begin, std::size_t end) {
      WorkerBuf& mine      = bufs_[static_cast<std::size_t>(w)];
      Real       max_v_sq  = 0.0;
      Real       max_d_sq  = 0.0;
      for (std::size_t p = begin; p < end; ++p)
        {
          Vec3 f = particles.mass[p] * g_accel + external_force[p];
          Vec3 t = Vec3::Zero();
          for (int b = 0; b < workers; ++b)
            {
              const WorkerBuf& buf = bufs_[static_cast<std::size_t>(b)];
              if (buf.stamp[p] == epoch)
                {
                  f += buf.force[p];
                  t += buf.torque[p];
                }
            }
          if (damp > 0.0)
            f -= damp * particles.mass[p] * particles.velocity[p];

          particles.velocity[p] += (dt / particles.mass[p]) * f;
          particles.position[p] += dt * particles.velocity[p];
          particles.angular_velocity[p] += (dt / particles.inertia[p]) * t;

          const Real v_sq = particles.velocity[p].squaredNorm();
          max_v_sq        = std::max(max_v_sq, v_sq);
          if (v_sq > cap_sq && !mine.unstable)
            {
              mine.unstable    = true;
              mine.unstable_id = particles.id[p];
            }
          max_d_sq = std::max(
            max_d_sq, (particles.position[p] - ref_positions_[p]).squaredNorm());
        }
      mine.max_speed   = std::sqrt(max_v_sq);
      mine.max_disp_sq = max_d_sq;
    });

    std::int64_t unstable_id = -1;
    for (const auto& b : bufs_)
      {
        diag.max_speed         = std::max(diag.max_speed, b.max_speed);
        diag.max_overlap_ratio = std::max(diag.max_overlap_ratio, b.max_olap);
        diag.plate_force += b.plate_fz;
        diag.penetrometer_force_z += b.pen_fz;
        diag.bonds_broken += b.broke;
        if (b.unstable && unstable_id < 0)
          unstable_id = b.unstable_id;
      }
    if (unstable_id >= 0)
      {
        std::ostringstream os;
        os << "instability guard: particle " << unstable_id
           << " exceeded the velocity cap (" << diag.max_speed << " > "
           << velocity_cap_ << " m/s) in stage " << stage_name(current_stage)
           << " at t = " << time;
        throw InstabilityError(os.str());
      }

    // Moving boundaries advance with the step.
    ceiling_z += ceiling_velocity * dt;
    if (pen.active)
      pen.tip_z += pen.velocity_z * dt;

    removal_pass(dt, diag);
    time += dt;
    return diag;
  }

  void DemSystem::removal_pass(Real dt, StepDiagnostics& diag)
  {
    if (!remove_at_outlet || !top_hole_open)
      return;
    const std::size_t n = particles.size();
    std::vector<std::size_t> gone;
    for (std::size_t p = 0; p < n; ++p)
      {
        const Vec3& x = particles.position[p];
        if (x.z() > ceiling_z &&
            domain_.outlet_top.contains(x.x(), x.y()))
          gone.push_back(p);
      }
    if (gone.empty())
      return;
    for (const std::size_t p : gone)
      {
        log.entries.push_back({time + dt, particles.id[p],
                               2.0 * particles.radius[p], particles.mass[p],
                               particles.bin[p], current_stage});
      }
    // Remove back-to-front so swap-with-last cannot disturb pending indices.
    for (auto it = gone.rbegin(); it != gone.rend(); ++it)
      {
        particles.remove(*it);
        external_force[*it] = external_force.back();
        external_force.pop_back();
      }
    diag.removed = static_cast<int>(gone.size());
    rebuild_needed_ = true;
  }

  std::int64_t DemSystem::mark_all_contacts_bonded()
  {
    if (rebuild_needed_ || ref_positions_.size() != particles.size())
      rebuild();
    std::int64_t marked = 0;
    for (const auto& e : pair_entries_)
      {
        const Real d2 =
          (particles.position[e.j] - particles.position[e.i]).squaredNorm();
        if (d2 <= e.reach_contact_sq)
          {
            e.state->bond     = BondState::Bonded;
            e.state->adhering = false;
            ++marked;
          }
      }
    return marked;
  }

  std::int64_t DemSystem::bonded_contact_count() const
  {
    std::int64_t count = 0;
    for (const auto& kv : contacts)
      if (kv.second.bond == BondState::Bonded)
        ++count;
    return count;
  }

  std::vector<int> DemSystem::bonds_per_particle() const
  {
    std::unordered_map<std::int64_t, std::size_t> index_of;
    index_of.reserve(particles.size());
    for (std::size_t p = 0; p < particles.size(); ++p)
      index_of[particles.id[p]] = p;
    std::vector<int> counts(particles.size(), 0);
    for (const auto& kv : contacts)
      {
        if (kv.second.bond != BondState::Bonded)
          continue;
        if (kv.first & (1ULL << 62))
          continue; // wall entry
        const std::int64_t lo = static_cast<std::int64_t>(kv.first & ((1ULL << 31) - 1));
        const std::int64_t hi = static_cast<std::int64_t>(kv.first >> 31);
        auto               a  = index_of.find(lo);
        auto               b  = index_of.find(hi);
        if (a != index_of.end())
          ++counts[a->second];
        if (b != index_of.end())
          ++counts[b->second];
      }
    return counts;
  }

  Real DemSystem::kinetic_energy() const
  {
    Real e = 0.0;
    for (std::size_t p = 0; p < particles.size(); ++p)
      e += 0.5 * particles.mass[p] * particles.velocity[p].squaredNorm() +
           0.5 * particles.inertia[p] *
             particles.angular_velocity[p].squaredNorm();
    return e;
  }
} // namespace sandprod
