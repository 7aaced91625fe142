// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/cfd/solver.hpp>

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

namespace sandprod
{
  namespace
  {
    inline int wrap(int i, int n) { return (i % n + n) % n; }
  }

  FluidSolver::FluidSolver(int nx, int ny, int nz, Real hx, Real hy, Real hz,
                           const FluidConfig& fluid, const SimDomain& domain)
    : grid(nx, ny, nz, hx, hy, hz), density(fluid.density),
      viscosity(fluid.viscosity), reference_pressure(fluid.reference_pressure),
      inlet_velocity(fluid.inlet_velocity), gravity(domain.gravity),
      faces(fluid.faces), hole_lo(domain.outlet_bottom),
      hole_hi(domain.outlet_top), p_hole_lo(fluid.reference_pressure),
      p_hole_hi(fluid.reference_pressure)
  {
    std::fill(grid.pressure.begin(), grid.pressure.end(), reference_pressure);
    rebuild_masks();
    apply_boundary_fluxes();
  }

  void FluidSolver::rebuild_masks()
  {
    dirichlet_.assign(grid.cells(), 0);
    dirichlet_value_.assign(grid.cells(), reference_pressure);
    auto mark = [&](int k, const OutletSpec& hole, Real value) {
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
          {
            const Vec3 c = grid.cell_center(i, j, k);
            if (hole.contains(c.x(), c.y()))
              {
                dirichlet_[grid.cell(i, j, k)]       = 1;
                dirichlet_value_[grid.cell(i, j, k)] = value;
              }
          }
    };
    if (faces.z_lo == FaceBc::Hole)
      mark(0, hole_lo, p_hole_lo);
    if (faces.z_hi == FaceBc::Hole)
      mark(grid.nz - 1, hole_hi, p_hole_hi);
  }

  Real FluidSolver::face_porosity_x(int i, int j, int k) const
  {
    if (i == 0 || i == grid.nx)
      {
        if (faces.x_lo == FaceBc::Periodic)
          return 0.5 * (grid.porosity[grid.cell(0, j, k)] +
                        grid.porosity[grid.cell(grid.nx - 1, j, k)]);
        return grid.porosity[grid.cell(i == 0 ? 0 : grid.nx - 1, j, k)];
      }
    return 0.5 * (grid.porosity[grid.cell(i - 1, j, k)] +
                  grid.porosity[grid.cell(i, j, k)]);
  }

  Real FluidSolver::face_porosity_y(int i, int j, int k) const
  {
    if (j == 0 || j == grid.ny)
      {
        if (faces.y_lo == FaceBc::Periodic)
          return 0.5 * (grid.porosity[grid.cell(i, 0, k)] +
                        grid.porosity[grid.cell(i, grid.ny - 1, k)]);
        return grid.porosity[grid.cell(i, j == 0 ? 0 : grid.ny - 1, k)];
      }
    return 0.5 * (grid.porosity[grid.cell(i, j - 1, k)] +
                  grid.porosity[grid.cell(i, j, k)]);
  }

  Real FluidSolver::face_porosity_z(int i, int j, int k) const
  {
    if (k == 0 || k == grid.nz)
      {
        if (faces.z_lo == FaceBc::Periodic)
          return 0.5 * (grid.porosity[grid.cell(i, j, 0)] +
                        grid.porosity[grid.cell(i, j, grid.nz - 1)]);
        return grid.porosity[grid.cell(i, j, k == 0 ? 0 : grid.nz - 1)];
      }
    return 0.5 * (grid.porosity[grid.cell(i, j, k - 1)] +
                  grid.porosity[grid.cell(i, j, k)]);
  }

  void FluidSolver::apply_boundary_fluxes()
  {
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;

    // x boundary faces
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        {
          if (faces.x_lo == FaceBc::Periodic)
            {
              // One shared face: keep both slots identical.
              const Real v = grid.phi_x[grid.xface(0, j, k)];
              grid.phi_x[grid.xface(nx, j, k)] = v;
            }
          else
            {
              Real vlo = 0.0, vhi = 0.0;
              if (faces.x_lo == FaceBc::Inlet)
                vlo = inlet_velocity;
              if (faces.x_hi == FaceBc::Inlet)
                vhi = -inlet_velocity;
              grid.phi_x[grid.xface(0, j, k)]  = vlo;
              grid.phi_x[grid.xface(nx, j, k)] = vhi;
            }
        }

    // y boundary faces
    for (int k = 0; k < nz; ++k)
      for (int i = 0; i < nx; ++i)
        {
          if (faces.y_lo == FaceBc::Periodic)
            {
              const Real v = grid.phi_y[grid.yface(i, 0, k)];
              grid.phi_y[grid.yface(i, ny, k)] = v;
            }
          else
            {
              Real vlo = 0.0, vhi = 0.0;
              if (faces.y_lo == FaceBc::Inlet)
                vlo = inlet_velocity;
              if (faces.y_hi == FaceBc::Inlet)
                vhi = -inlet_velocity;
              grid.phi_y[grid.yface(i, 0, k)]  = vlo;
              grid.phi_y[grid.yface(i, ny, k)] = vhi;
            }
        }

    // z boundary faces: holes copy the adjacent interior face (free outflow),
    // everything else is a wall.
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        {
          if (faces.z_lo == FaceBc::Periodic)
            {
              const Real v = grid.phi_z[grid.zface(i, j, 0)];
              grid.phi_z[grid.zface(i, j, nz)] = v;
              continue;
            }
          Real vlo = 0.0, vhi = 0.0;
          if (faces.z_lo == FaceBc::Inlet)
            vlo = inlet_velocity;
          else if (faces.z_lo == FaceBc::Hole &&
                   dirichlet_[grid.cell(i, j, 0)])
            vlo = grid.phi_z[grid.zface(i, j, 1)];
          if (faces.z_hi == FaceBc::Inlet)
            vhi = -inlet_velocity;
          else if (faces.z_hi == FaceBc::Hole &&
                   dirichlet_[grid.cell(i, j, nz - 1)])
            vhi = grid.phi_z[grid.zface(i, j, nz - 1)];
          grid.phi_z[grid.zface(i, j, 0)]  = vlo;
          grid.phi_z[grid.zface(i, j, nz)] = vhi;
        }
  }

  namespace
  {
    /// Ghost-aware neighbor fetch for one staggered component. `axis` is the
    /// component's own axis; fetching across a boundary applies the face rule
    /// for the crossed direction: periodic wraps, no-slip mirrors tangential
    /// values, open faces copy (zero gradient), normal components on closed
    /// faces are zero.
    struct FieldAccess
    {
      const FluidGrid&  g;
      const FluidFaces& faces;
      const std::vector<Real>& f;
      int axis; // 0 = x faces, 1 = y faces, 2 = z faces

      Real normal_extent(int d) const
      {
        return d == 0 ? g.nx : (d == 1 ? g.ny : g.nz);
      }

      FaceBc face_type(int d) const
      {
        return d == 0 ? faces.x_lo : (d == 1 ? faces.y_lo : faces.z_lo);
      }

      std::size_t index(int i, int j, int k) const
      {
        return axis == 0 ? g.xface(i, j, k)
                         : (axis == 1 ? g.yface(i, j, k) : g.zface(i, j, k));
      }

      Real at(int i, int j, int k) const
      {
        int  c[3]     = {i, j, k};
        Real sign     = 1.0;
        for (int d = 0; d < 3; ++d)
          {
            const int n_faces =
              static_cast<int>(normal_extent(d)) + (d == axis ? 1 : 0);
            const int hi = d == axis ? n_faces - 1 : n_faces - 1;
            if (c[d] >= 0 && c[d] <= hi)
              continue;
            const FaceBc bc = face_type(d);
            if (bc == FaceBc::Periodic)
              {
                const int period = static_cast<int>(normal_extent(d));
                c[d]             = wrap(c[d], period);
                continue;
              }
            if (d == axis)
              {
                // Normal component beyond its boundary face: mirror about the
                // boundary value (approximately zero beyond walls/inlets).
                c[d] = c[d] < 0 ? 0 : hi;
                continue;
              }
            // Tangential neighbor across a boundary.
            if (bc == FaceBc::Hole)
              {
                c[d] = c[d] < 0 ? 0 : hi; // zero gradient
              }
            else
              {
                // No-slip (wall/inlet plug): mirror.
                c[d]  = c[d] < 0 ? 0 : hi;
                sign  = -sign;
              }
          }
        return sign * f[index(c[0], c[1], c[2])];
      }
    };
  } // namespace

  void FluidSolver::predictor(Real dt, std::vector<Real>& sx,
                              std::vector<Real>& sy, std::vector<Real>& sz)
  {
    const int  nx = grid.nx, ny = grid.ny, nz = grid.nz;
    const Real nu = viscosity / density;

    FieldAccess ax{grid, faces, grid.phi_x, 0};
    FieldAccess ay{grid, faces, grid.phi_y, 1};
    FieldAccess az{grid, faces, grid.phi_z, 2};

    const Real hx = grid.hx, hy = grid.hy, hz = grid.hz;

    auto upwind = [](Real u, Real minus, Real center, Real plus, Real h) {
      return u >= 0.0 ? u * (center - minus) / h : u * (plus - center) / h;
    };

    // x faces -----------------------------------------------------------
    const bool xper = faces.x_lo == FaceBc::Periodic;
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i)
          {
            const std::size_t f = grid.xface(i, j, k);
            const bool interior = (i > 0 && i < nx) || xper;
            if (!interior)
              {
                sx[f] = grid.phi_x[f]; // fixed boundary flux
                continue;
              }
            const int  im = xper && i == 0 ? nx - 1 : i - 1; // left cell
            const int  ic = xper && i == nx ? 0 : (i == nx ? nx - 1 : i);
            const Real n_f = face_porosity_x(i, j, k);

            // physical advecting velocity at this x-face
            const Real ux = ax.at(i, j, k) / n_f;
            const Real uy = 0.25 *
                            (ay.at(im, j, k) + ay.at(im, j + 1, k) +
                             ay.at(ic, j, k) + ay.at(ic, j + 1, k)) /
                            n_f;
            const Real uz = 0.25 *
                            (az.at(im, j, k) + az.at(im, j, k + 1) +
                             az.at(ic, j, k) + az.at(ic, j, k + 1)) /
                            n_f;

            const Real adv =
              upwind(ux, ax.at(i - 1, j, k), ax.at(i, j, k), ax.at(i + 1, j, k), hx) +
              upwind(uy, ax.at(i, j - 1, k), ax.at(i, j, k), ax.at(i, j + 1, k), hy) +
              upwind(uz, ax.at(i, j, k - 1), ax.at(i, j, k), ax.at(i, j, k + 1), hz);

            const Real lap =
              (ax.at(i + 1, j, k) - 2 * ax.at(i, j, k) + ax.at(i - 1, j, k)) / (hx * hx) +
              (ax.at(i, j + 1, k) - 2 * ax.at(i, j, k) + ax.at(i, j - 1, k)) / (hy * hy) +
              (ax.at(i, j, k + 1) - 2 * ax.at(i, j, k) + ax.at(i, j, k - 1)) / (hz * hz);

            const Real drag_f =
              0.5 * (grid.drag[grid.cell(im, j, k)].x() +
                     grid.drag[grid.cell(ic, j, k)].x());

            sx[f] = grid.phi_x[f] +
                    dt * (-adv + nu * lap + n_f * gravity.x() + drag_f / density);
          }

    // y faces -----------------------------------------------------------
    const bool yper = faces.y_lo == FaceBc::Periodic;
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i)
          {
            const std::size_t f = grid.yface(i, j, k);
            const bool interior = (j > 0 && j < ny) || yper;
            if (!interior)
              {
                sy[f] = grid.phi_y[f];
                continue;
              }
            const int  jm  = yper && j == 0 ? ny - 1 : j - 1;
            const int  jc  = yper && j == ny ? 0 : (j == ny ? ny - 1 : j);
            const Real n_f = face_porosity_y(i, j, k);

            const Real uy = ay.at(i, j, k) / n_f;
            const Real ux = 0.25 *
                            (ax.at(i, jm, k) + ax.at(i + 1, jm, k) +
                             ax.at(i, jc, k) + ax.at(i + 1, jc, k)) /
                            n_f;
            const Real uz = 0.25 *
                            (az.at(i, jm, k) + az.at(i, jm, k + 1) +
                             az.at(i, jc, k) + az.at(i, jc, k + 1)) /
                            n_f;

            const Real adv =
              upwind(ux, ay.at(i - 1, j, k), ay.at(i, j, k), ay.at(i + 1, j, k), hx) +
              upwind(uy, ay.at(i, j - 1, k), ay.at(i, j, k), ay.at(i, j + 1, k), hy) +
              upwind(uz, ay.at(i, j, k - 1), ay.at(i, j, k), ay.at(i, j, k + 1), hz);

            const Real lap =
              (ay.at(i + 1, j, k) - 2 * ay.at(i, j, k) + ay.at(i - 1, j, k)) / (hx * hx) +
              (ay.at(i, j + 1, k) - 2 * ay.at(i, j, k) + ay.at(i, j - 1, k)) / (hy * hy) +
              (ay.at(i, j, k + 1) - 2 * ay.at(i, j, k) + ay.at(i, j, k - 1)) / (hz * hz);

            const Real drag_f =
              0.5 * (grid.drag[grid.cell(i, jm, k)].y() +
                     grid.drag[grid.cell(i, jc, k)].y());

            sy[f] = grid.phi_y[f] +
                    dt * (-adv + nu * lap + n_f * gravity.y() + drag_f / density);
          }

    // z faces -----------------------------------------------------------
    const bool zper = faces.z_lo == FaceBc::Periodic;
    for (int k = 0; k <= nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          {
            const std::size_t f = grid.zface(i, j, k);
            const bool interior = (k > 0 && k < nz) || zper;
            if (!interior)
              {
                sz[f] = grid.phi_z[f];
                continue;
              }
            const int  km  = zper && k == 0 ? nz - 1 : k - 1;
            const int  kc  = zper && k == nz ? 0 : (k == nz ? nz - 1 : k);
            const Real n_f = face_porosity_z(i, j, k);

            const Real uz = az.at(i, j, k) / n_f;
            const Real ux = 0.25 *
                            (ax.at(i, j, km) + ax.at(i + 1, j, km) +
                             ax.at(i, j, kc) + ax.at(i + 1, j, kc)) /
                            n_f;
            const Real uy = 0.25 *
                            (ay.at(i, j, km) + ay.at(i, j + 1, km) +
                             ay.at(i, j, kc) + ay.at(i, j + 1, kc)) /
                            n_f;

            const Real adv =
              upwind(ux, az.at(i - 1, j, k), az.at(i, j, k), az.at(i + 1, j, k), hx) +
              upwind(uy, az.at(i, j - 1, k), az.at(i, j, k), az.at(i, j + 1, k), hy) +
              upwind(uz, az.at(i, j, k - 1), az.at(i, j, k), az.at(i, j, k + 1), hz);

            const Real lap =
              (az.at(i + 1, j, k) - 2 * az.at(i, j, k) + az.at(i - 1, j, k)) / (hx * hx) +
              (az.at(i, j + 1, k) - 2 * az.at(i, j, k) + az.at(i, j - 1, k)) / (hy * hy) +
              (az.at(i, j, k + 1) - 2 * az.at(i, j, k) + az.at(i, j, k - 1)) / (hz * hz);

            const Real drag_f =
              0.5 * (grid.drag[grid.cell(i, j, km)].z() +
                     grid.drag[grid.cell(i, j, kc)].z());

            sz[f] = grid.phi_z[f] +
                    dt * (-adv + nu * lap + n_f * gravity.z() + drag_f / density);
          }
  }

  FluidStepInfo FluidSolver::step(Real dt)
  {
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
    const Real hx = grid.hx, hy = grid.hy, hz = grid.hz;
    const std::size_t nc = grid.cells();

    apply_boundary_fluxes();
    std::vector<Real> sx(grid.phi_x.size()), sy(grid.phi_y.size()),
      sz(grid.phi_z.size());
    predictor(dt, sx, sy, sz);

    // --- pressure Poisson -------------------------------------------------
    using Trip = Eigen::Triplet<Real>;
    std::vector<Trip> trips;
    trips.reserve(nc * 7);
    Eigen::VectorXd rhs(nc);
    rhs.setZero();

    const Real ax_f = hy * hz, ay_f = hx * hz, az_f = hx * hy;
    const Real vol  = grid.cell_volume();
    const bool xper = faces.x_lo == FaceBc::Periodic;
    const bool yper = faces.y_lo == FaceBc::Periodic;
    const bool zper = faces.z_lo == FaceBc::Periodic;

    bool have_dirichlet = false;
    for (std::size_t c = 0; c < nc; ++c)
      if (dirichlet_[c])
        {
          have_dirichlet = true;
          break;
        }

    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          {
            const std::size_t c = grid.cell(i, j, k);
            if (dirichlet_[c] || (!have_dirichlet && c == 0))
              {
                trips.emplace_back(static_cast<int>(c), static_cast<int>(c), 1.0);
                rhs[static_cast<Eigen::Index>(c)] =
                  dirichlet_[c] ? dirichlet_value_[c] : reference_pressure;
                continue;
              }

            Real diag = 0.0;
            Real div  = 0.0;

            auto couple = [&](int ni, int nj, int nk, Real coef) {
              const std::size_t nb = grid.cell(ni, nj, nk);
              trips.emplace_back(static_cast<int>(c), static_cast<int>(nb), coef);
              diag -= coef;
            };

            // x- face
            {
              const Real phi_star = sx[grid.xface(i, j, k)];
              div -= phi_star * ax_f;
              if (i > 0 || xper)
                {
                  const Real nf = face_porosity_x(i, j, k);
                  couple(i > 0 ? i - 1 : nx - 1, j, k,
                         dt * nf / density * ax_f / hx);
                }
            }
            // x+ face
            {
              const Real phi_star = sx[grid.xface(i + 1, j, k)];
              div += phi_star * ax_f;
              if (i + 1 < nx || xper)
                {
                  const Real nf = face_porosity_x(i + 1, j, k);
                  couple(i + 1 < nx ? i + 1 : 0, j, k,
                         dt * nf / density * ax_f / hx);
                }
            }
            // y- face
            {
              const Real phi_star = sy[grid.yface(i, j, k)];
              div -= phi_star * ay_f;
              if (j > 0 || yper)
                {
                  const Real nf = face_porosity_y(i, j, k);
                  couple(i, j > 0 ? j - 1 : ny - 1, k,
                         dt * nf / density * ay_f / hy);
                }
            }
            // y+ face
            {
              const Real phi_star = sy[grid.yface(i, j + 1, k)];
              div += phi_star * ay_f;
              if (j + 1 < ny || yper)
                {
                  const Real nf = face_porosity_y(i, j + 1, k);
                  couple(i, j + 1 < ny ? j + 1 : 0, k,
                         dt * nf / density * ay_f / hy);
                }
            }
            // z- face
            {
              const Real phi_star = sz[grid.zface(i, j, k)];
              div -= phi_star * az_f;
              if (k > 0 || zper)
                {
                  const Real nf = face_porosity_z(i, j, k);
                  couple(i, j, k > 0 ? k - 1 : nz - 1,
                         dt * nf / density * az_f / hz);
                }
            }
            // z+ face
            {
              const Real phi_star = sz[grid.zface(i, j, k + 1)];
              div += phi_star * az_f;
              if (k + 1 < nz || zper)
                {
                  const Real nf = face_porosity_z(i, j, k + 1);
                  couple(i, j, k + 1 < nz ? k + 1 : 0,
                         dt * nf / density * az_f / hz);
                }
            }

            trips.emplace_back(static_cast<int>(c), static_cast<int>(c), diag);
            const Real dndt =
              (grid.porosity[c] - grid.porosity_old[c]) / dt;
            rhs[static_cast<Eigen::Index>(c)] = div + dndt * vol;
          }

    Eigen::SparseMatrix<Real> mat(static_cast<int>(nc), static_cast<int>(nc));
    mat.setFromTriplets(trips.begin(), trips.end());

    Eigen::BiCGSTAB<Eigen::SparseMatrix<Real>> solver;
    solver.setTolerance(1e-13);
    solver.setMaxIterations(static_cast<int>(nc) * 8 + 200);
    solver.compute(mat);

    Eigen::VectorXd p0 =
      Eigen::Map<const Eigen::VectorXd>(grid.pressure.data(),
                                        static_cast<Eigen::Index>(nc));
    Eigen::VectorXd p = solver.solveWithGuess(rhs, p0);
    if (solver.info() != Eigen::Success &&
        (mat * p - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
      {
        std::vector<Real> history{solver.error()};
        throw FluidSolveError("pressure solve did not converge (error " +
                                std::to_string(solver.error()) + ")",
                              history);
      }

    for (std::size_t c = 0; c < nc; ++c)
      grid.pressure[c] = p[static_cast<Eigen::Index>(c)];

    // --- correction --------------------------------------------------------
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i)
          {
            const std::size_t f = grid.xface(i, j, k);
            const bool interior = (i > 0 && i < nx) || xper;
            if (!interior)
              {
                grid.phi_x[f] = sx[f];
                continue;
              }
            const int  il = i > 0 ? i - 1 : nx - 1;
            const int  ir = i < nx ? i : 0;
            const Real nf = face_porosity_x(i, j, k);
            const Real dp = grid.pressure[grid.cell(ir, j, k)] -
                            grid.pressure[grid.cell(il, j, k)];
            grid.phi_x[f] = sx[f] - dt * nf / density * dp / hx;
          }
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i)
          {
            const std::size_t f = grid.yface(i, j, k);
            const bool interior = (j > 0 && j < ny) || yper;
            if (!interior)
              {
                grid.phi_y[f] = sy[f];
                continue;
              }
            const int  jl = j > 0 ? j - 1 : ny - 1;
            const int  jr = j < ny ? j : 0;
            const Real nf = face_porosity_y(i, j, k);
            const Real dp = grid.pressure[grid.cell(i, jr, k)] -
                            grid.pressure[grid.cell(i, jl, k)];
            grid.phi_y[f] = sy[f] - dt * nf / density * dp / hy;
          }
    for (int k = 0; k <= nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          {
            const std::size_t f = grid.zface(i, j, k);
            const bool interior = (k > 0 && k < nz) || zper;
            if (!interior)
              {
                grid.phi_z[f] = sz[f];
                continue;
              }
            const int  kl = k > 0 ? k - 1 : nz - 1;
            const int  kr = k < nz ? k : 0;
            const Real nf = face_porosity_z(i, j, k);
            const Real dp = grid.pressure[grid.cell(i, j, kr)] -
                            grid.pressure[grid.cell(i, j, kl)];
            grid.phi_z[f] = sz[f] - dt * nf / density * dp / hz;
          }

    apply_boundary_fluxes();

    FluidStepInfo info;
    info.poisson_iterations  = static_cast<int>(solver.iterations());
    info.continuity_residual = continuity_residual(dt);

    Real max_co = 0.0;
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          {
            const Vec3 u = grid.cell_velocity(i, j, k);
            max_co = std::max(max_co, std::abs(u.x()) * dt / hx);
            max_co = std::max(max_co, std::abs(u.y()) * dt / hy);
            max_co = std::max(max_co, std::abs(u.z()) * dt / hz);
          }
    info.max_courant = max_co;
    return info;
  }

  Real FluidSolver::flux_scale() const
  {
    Real s = 0.0;
    for (const Real v : grid.phi_x)
      s = std::max(s, std::abs(v));
    for (const Real v : grid.phi_y)
      s = std::max(s, std::abs(v));
    for (const Real v : grid.phi_z)
      s = std::max(s, std::abs(v));
    return s;
  }

  Real FluidSolver::continuity_residual(Real dt) const
  {
    // Velocity scale floor keeps the norm meaningful in no-flow states.
    const Real scale =
      std::max({flux_scale(), std::abs(inlet_velocity), 1e-12});
    const Real hmin  = std::min({grid.hx, grid.hy, grid.hz});
    Real       worst = 0.0;
    for (int k = 0; k < grid.nz; ++k)
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
          {
            const std::size_t c = grid.cell(i, j, k);
            if (dirichlet_[c])
              continue;
            const Real div =
              (grid.phi_x[grid.xface(i + 1, j, k)] -
               grid.phi_x[grid.xface(i, j, k)]) /
                grid.hx +
              (grid.phi_y[grid.yface(i, j + 1, k)] -
               grid.phi_y[grid.yface(i, j, k)]) /
                grid.hy +
              (grid.phi_z[grid.zface(i, j, k + 1)] -
               grid.phi_z[grid.zface(i, j, k)]) /
                grid.hz;
            const Real dndt = (grid.porosity[c] - grid.porosity_old[c]) / dt;
            worst = std::max(worst, std::abs(div + dndt));
          }
    return worst * hmin / scale;
  }
} // namespace sandprod
