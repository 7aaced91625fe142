// SPDX-FileCopyrightText: Copyright (c) 2026 The Sandprod Authors
// SPDX-License-Identifier: Apache-2.0

#include <sandprod/core/config.hpp>
#include <sandprod/core/units.hpp>
#include <sandprod/dem/rayleigh.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace sandprod
{
  using nlohmann::json;
  using units::Dim;

  namespace
  {
    /// Walks the document collecting every violation; missing-but-required
    /// and malformed fields both land in `errors`.
    class Reader
    {
    public:
      Reader(const json& root, std::vector<std::string>& errors)
        : root_(root), errors_(errors)
      {}

      const json* find(const std::string& path) const
      {
        const json* node = &root_;
        std::size_t pos  = 0;
        while (pos < path.size())
          {
            const std::size_t dot = path.find('.', pos);
            const std::string key =
              path.substr(pos, dot == std::string::npos ? dot : dot - pos);
            if (!node->is_object() || !node->contains(key))
              return nullptr;
            node = &(*node)[key];
            if (dot == std::string::npos)
              break;
            pos = dot + 1;
          }
        return node;
      }

      bool has(const std::string& path) const { return find(path) != nullptr; }

      Real quantity(const std::string& path, Dim dim, Real fallback,
                    bool required = false)
      {
        const json* node = find(path);
        if (!node)
          {
            if (required)
              fail(path, "missing required field");
            return fallback;
          }
        if (node->is_number())
          {
            if (dim != Dim::Dimensionless)
              {
                fail(path, "physical quantity must be a string with a unit "
                           "suffix, e.g. \"1.5 mm\"");
                return fallback;
              }
            return node->get<Real>();
          }
        if (!node->is_string())
          {
            fail(path, "expected a number or a quantity string");
            return fallback;
          }
        std::string msg;
        const auto  q = units::parse_quantity(node->get<std::string>(), dim, &msg);
        if (!q)
          {
            fail(path, msg);
            return fallback;
          }
        return q->value;
      }

      std::int64_t integer(const std::string& path, std::int64_t fallback,
                           bool required = false)
      {
        const json* node = find(path);
        if (!node)
          {
            if (required)
              fail(path, "missing required field");
            return fallback;
          }
        if (!node->is_number_integer() && !node->is_number_unsigned())
          {
            fail(path, "expected an integer");
            return fallback;
          }
        return node->get<std::int64_t>();
      }

      bool boolean(const std::string& path, bool fallback)
      {
        const json* node = find(path);
        if (!node)
          return fallback;
        if (!node->is_boolean())
          {
            fail(path, "expected a boolean");
            return fallback;
          }
        return node->get<bool>();
      }

      std::string text(const std::string& path, const std::string& fallback)
      {
        const json* node = find(path);
        if (!node)
          return fallback;
        if (!node->is_string())
          {
            fail(path, "expected a string");
            return fallback;
          }
        return node->get<std::string>();
      }

      void fail(const std::string& path, const std::string& msg)
      {
        errors_.push_back(path + ": " + msg);
      }

    private:
      const json&               root_;
      std::vector<std::string>& errors_;
    };

    FaceBc parse_face(Reader& r, const std::string& path, FaceBc fallback)
    {
      const std::string s = r.text(path, "");
      if (s.empty())
        return fallback;
      if (s == "wall")
        return FaceBc::Wall;
      if (s == "inlet")
        return FaceBc::Inlet;
      if (s == "periodic")
        return FaceBc::Periodic;
      if (s == "hole")
        return FaceBc::Hole;
      r.fail(path, "unknown face type '" + s +
                     "' (wall | inlet | periodic | hole)");
      return fallback;
    }

    const char* face_name(FaceBc f)
    {
      switch (f)
        {
          case FaceBc::Wall:
            return "wall";
          case FaceBc::Inlet:
            return "inlet";
          case FaceBc::Periodic:
            return "periodic";
          case FaceBc::Hole:
            return "hole";
        }
      return "wall";
    }
  } // namespace

  ValidationResult validate_config(const json& raw)
  {
    ValidationResult result;
    auto&            errors = result.errors;
    Reader           r(raw, errors);
    RunConfig        cfg;

    // --- material ---------------------------------------------------------
    cfg.material.density =
      r.quantity("material.density", Dim::Density, 0.0, true);
    cfg.material.youngs_modulus =
      r.quantity("material.youngs_modulus", Dim::Pressure, 0.0, true);
    cfg.material.poisson_ratio =
      r.quantity("material.poisson_ratio", Dim::Dimensionless, 0.0, true);
    cfg.material.restitution =
      r.quantity("material.restitution", Dim::Dimensionless, 0.0, true);
    cfg.material.friction =
      r.quantity("material.friction", Dim::Dimensionless, 0.0, true);
    cfg.material.surface_energy =
      r.quantity("material.surface_energy", Dim::SurfaceEnergy, 0.0, true);

    if (r.has("material.density") && cfg.material.density <= 0.0)
      r.fail("material.density", "must be positive");
    if (r.has("material.youngs_modulus") && cfg.material.youngs_modulus <= 0.0)
      r.fail("material.youngs_modulus", "must be positive");
    if (r.has("material.poisson_ratio") &&
        (cfg.material.poisson_ratio <= 0.0 || cfg.material.poisson_ratio >= 0.5))
      r.fail("material.poisson_ratio", "poisson_ratio out of range (0, 0.5)");
    if (r.has("material.restitution") &&
        (cfg.material.restitution <= 0.0 || cfg.material.restitution > 1.0))
      r.fail("material.restitution", "must lie in (0, 1]");
    if (r.has("material.friction") && cfg.material.friction < 0.0)
      r.fail("material.friction", "must be >= 0");
    if (r.has("material.surface_energy") && cfg.material.surface_energy <= 0.0)
      r.fail("material.surface_energy", "must be positive");

    // --- psd ---------------------------------------------------------------
    {
      const std::string mode = r.text("psd.mode", "polydisperse");
      if (mode == "polydisperse")
        cfg.psd.mode = PsdMode::Polydisperse;
      else if (mode == "monodisperse")
        cfg.psd.mode = PsdMode::Monodisperse;
      else
        r.fail("psd.mode", "must be 'polydisperse' or 'monodisperse'");

      const json* bins = r.find("psd.bins");
      if (!bins || !bins->is_array() || bins->empty())
        r.fail("psd.bins", "must be a non-empty array");
      else
        {
          Real wsum = 0.0;
          for (std::size_t i = 0; i < bins->size(); ++i)
            {
              const std::string base = "psd.bins[" + std::to_string(i) + "]";
              Reader            br((*bins)[i], errors);
              PsdBin            bin;
              std::string       msg;
              const json&       e = (*bins)[i];
              if (!e.is_object() || !e.contains("diameter") ||
                  !e.contains("mass_fraction"))
                {
                  r.fail(base, "bin needs 'diameter' and 'mass_fraction'");
                  continue;
                }
              if (e["diameter"].is_string())
                {
                  const auto q = units::parse_quantity(
                    e["diameter"].get<std::string>(), Dim::Length, &msg);
                  if (!q)
                    {
                      r.fail(base + ".diameter", msg);
                      continue;
                    }
                  bin.diameter = q->value;
                }
              else
                {
                  r.fail(base + ".diameter", "expected quantity string");
                  continue;
                }
              if (!e["mass_fraction"].is_number())
                {
                  r.fail(base + ".mass_fraction", "expected a number");
                  continue;
                }
              bin.mass_fraction = e["mass_fraction"].get<Real>();
              if (bin.diameter <= 0.0)
                r.fail(base + ".diameter", "must be positive");
              if (bin.mass_fraction <= 0.0)
                r.fail(base + ".mass_fraction", "must be positive");
              wsum += bin.mass_fraction;
              cfg.psd.bins.push_back(bin);
            }
          if (!cfg.psd.bins.empty() && std::abs(wsum - 1.0) > 1e-9)
            r.fail("psd.bins", "mass fractions must sum to 1 (got " +
                                 std::to_string(wsum) + ")");
          for (std::size_t i = 1; i < cfg.psd.bins.size(); ++i)
            if (cfg.psd.bins[i].diameter <= cfg.psd.bins[i - 1].diameter)
              {
                r.fail("psd.bins", "diameters must be strictly increasing");
                break;
              }
          if (cfg.psd.mode == PsdMode::Monodisperse && cfg.psd.bins.size() != 1)
            r.fail("psd.bins", "monodisperse PSD must have exactly one bin");
        }
    }

    // --- domain -------------------------------------------------------------
    cfg.domain.lx = r.quantity("domain.length_x", Dim::Length, 0.0, true);
    cfg.domain.ly = r.quantity("domain.length_y", Dim::Length, 0.0, true);
    cfg.domain.lz = r.quantity("domain.length_z", Dim::Length, 0.0, true);
    if (r.has("domain.length_x") && cfg.domain.lx <= 0.0)
      r.fail("domain.length_x", "must be positive");
    if (r.has("domain.length_y") && cfg.domain.ly <= 0.0)
      r.fail("domain.length_y", "must be positive");
    if (r.has("domain.length_z") && cfg.domain.lz <= 0.0)
      r.fail("domain.length_z", "must be positive");

    auto read_outlet = [&](const std::string& base, OutletSpec& o) {
      o.diameter = r.quantity(base + ".diameter", Dim::Length, 0.0, true);
      o.center_x =
        r.quantity(base + ".center_x", Dim::Length, 0.5 * cfg.domain.lx);
      o.center_y =
        r.quantity(base + ".center_y", Dim::Length, 0.5 * cfg.domain.ly);
      if (o.diameter <= 0.0 && r.has(base + ".diameter"))
        r.fail(base + ".diameter", "must be positive");
      const Real rad = 0.5 * o.diameter;
      if (cfg.domain.lx > 0 && cfg.domain.ly > 0 &&
          (o.center_x - rad < 0 || o.center_x + rad > cfg.domain.lx ||
           o.center_y - rad < 0 || o.center_y + rad > cfg.domain.ly))
        r.fail(base, "outlet disc must lie within the face");
    };
    read_outlet("domain.outlet_top", cfg.domain.outlet_top);
    read_outlet("domain.outlet_bottom", cfg.domain.outlet_bottom);

    {
      const Real g =
        r.quantity("domain.gravity", Dim::Acceleration, 9.81, false);
      cfg.domain.gravity = Vec3(0.0, 0.0, -g);
    }

    // --- fluid ---------------------------------------------------------------
    cfg.fluid.density = r.quantity("fluid.density", Dim::Density, 998.2);
    cfg.fluid.viscosity = r.quantity("fluid.viscosity", Dim::Viscosity, 1e-3);
    cfg.fluid.reference_pressure =
      r.quantity("fluid.reference_pressure", Dim::Pressure, 101325.0);
    cfg.fluid.inlet_velocity =
      r.quantity("fluid.inlet_velocity", Dim::Velocity, 1e-4);
    cfg.fluid.nx = static_cast<int>(r.integer("fluid.grid.nx", 0, true));
    cfg.fluid.ny = static_cast<int>(r.integer("fluid.grid.ny", 0, true));
    cfg.fluid.nz = static_cast<int>(r.integer("fluid.grid.nz", 0, true));
    if (r.has("fluid.grid.nx") &&
        (cfg.fluid.nx < 1 || cfg.fluid.ny < 1 || cfg.fluid.nz < 1))
      r.fail("fluid.grid", "cell counts must be >= 1");
    if (cfg.fluid.density <= 0.0)
      r.fail("fluid.density", "must be positive");
    if (cfg.fluid.viscosity <= 0.0)
      r.fail("fluid.viscosity", "must be positive");

    cfg.fluid.faces.x_lo = parse_face(r, "fluid.faces.x_lo", FaceBc::Periodic);
    cfg.fluid.faces.x_hi = parse_face(r, "fluid.faces.x_hi", FaceBc::Periodic);
    cfg.fluid.faces.y_lo = parse_face(r, "fluid.faces.y_lo", FaceBc::Inlet);
    cfg.fluid.faces.y_hi = parse_face(r, "fluid.faces.y_hi", FaceBc::Inlet);
    cfg.fluid.faces.z_lo = parse_face(r, "fluid.faces.z_lo", FaceBc::Hole);
    cfg.fluid.faces.z_hi = parse_face(r, "fluid.faces.z_hi", FaceBc::Hole);
    if ((cfg.fluid.faces.x_lo == FaceBc::Periodic) !=
        (cfg.fluid.faces.x_hi == FaceBc::Periodic))
      r.fail("fluid.faces", "periodic boundary on one x face only");
    if ((cfg.fluid.faces.y_lo == FaceBc::Periodic) !=
        (cfg.fluid.faces.y_hi == FaceBc::Periodic))
      r.fail("fluid.faces", "periodic boundary on one y face only");
    if ((cfg.fluid.faces.z_lo == FaceBc::Periodic) !=
        (cfg.fluid.faces.z_hi == FaceBc::Periodic))
      r.fail("fluid.faces", "periodic boundary on one z face only");

    // --- time ----------------------------------------------------------------
    cfg.dem_dt = r.quantity("time.dem_dt", Dim::Time, 0.0, true);
    cfg.cfd_dt = r.quantity("time.cfd_dt", Dim::Time, 0.0, true);
    cfg.safety_fraction =
      r.quantity("time.safety_fraction", Dim::Dimensionless, 0.2);
    if (r.has("time.dem_dt") && cfg.dem_dt <= 0.0)
      r.fail("time.dem_dt", "must be positive");
    if (r.has("time.cfd_dt") && cfg.cfd_dt <= 0.0)
      r.fail("time.cfd_dt", "must be positive");
    if (cfg.dem_dt > 0.0 && cfg.cfd_dt > 0.0)
      {
        const Real ratio = cfg.cfd_dt / cfg.dem_dt;
        const Real rounded = std::floor(ratio + 0.5);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded)
          r.fail("time.cfd_dt",
                 "must be an exact integer multiple of dem_dt (ratio " +
                   std::to_string(ratio) + ")");
        else
          cfg.substeps = static_cast<std::int64_t>(rounded);
      }

    // --- run -----------------------------------------------------------------
    cfg.seed = static_cast<std::uint64_t>(r.integer("run.seed", 0, true));
    cfg.workers = static_cast<int>(r.integer("run.workers", 1));
    cfg.output_every_cfd_steps = r.integer("run.output_every_cfd_steps", 100);
    cfg.output_every_dem_steps = r.integer("run.output_every_dem_steps", 20000);
    cfg.velocity_cap = r.quantity("run.velocity_cap", Dim::Velocity, 50.0);
    if (cfg.workers < 1)
      r.fail("run.workers", "must be >= 1");
    if (cfg.velocity_cap <= 0.0)
      r.fail("run.velocity_cap", "must be positive");

    // --- coupling options ------------------------------------------------------
    cfg.porosity_floor =
      r.quantity("coupling.porosity_floor", Dim::Dimensionless, 0.2);
    cfg.porosity_smoothing = r.boolean("coupling.porosity_smoothing", true);
    {
      const std::string slip = r.text("coupling.reynolds_slip", "as_printed");
      if (slip == "superficial")
        cfg.drag_superficial_re = true;
      else if (slip != "as_printed")
        r.fail("coupling.reynolds_slip", "must be 'as_printed' or 'superficial'");
    }
    {
      const std::string vi = r.text("coupling.velocity_interpolation", "cell");
      if (vi == "trilinear")
        cfg.drag_trilinear_interp = true;
      else if (vi != "cell")
        r.fail("coupling.velocity_interpolation",
               "must be 'cell' or 'trilinear'");
    }
    cfg.cell_size_gate_override =
      r.boolean("coupling.cell_size_gate_override", false);
    if (cfg.porosity_floor <= 0.0 || cfg.porosity_floor >= 1.0)
      r.fail("coupling.porosity_floor", "must lie in (0, 1)");

    {
      const std::string form = r.text("dem_options.rayleigh_shear_form",
                                      "standard");
      if (form == "as_printed")
        cfg.rayleigh_printed_shear = true;
      else if (form != "standard")
        r.fail("dem_options.rayleigh_shear_form",
               "must be 'standard' or 'as_printed'");
    }

    // --- coarse-grain metadata -------------------------------------------------
    cfg.ssp_mean_diameter =
      r.quantity("coarsegrain.ssp_mean_diameter", Dim::Length, 0.23e-3);
    cfg.coarsegrain.k =
      r.quantity("coarsegrain.k", Dim::Dimensionless, 1.0);
    cfg.coarsegrain.method      = r.text("coarsegrain.method", "");
    cfg.coarsegrain.source_hash = r.text("coarsegrain.source_hash", "");
    if (cfg.coarsegrain.k < 1.0)
      r.fail("coarsegrain.k", "must be >= 1");

    // --- stages ------------------------------------------------------------------
    cfg.generate.particle_count =
      r.integer("stages.generate.particle_count", 0);
    cfg.generate.total_mass =
      r.quantity("stages.generate.total_mass", Dim::Mass, 0.0);
    if (cfg.generate.particle_count <= 0 && cfg.generate.total_mass <= 0.0)
      r.fail("stages.generate",
             "either particle_count or total_mass must be given");
    cfg.generate.insertion_packing =
      r.quantity("stages.generate.insertion_packing", Dim::Dimensionless, 0.36);
    cfg.generate.settle_damping_rate = r.quantity(
      "stages.generate.settle_damping_rate", Dim::Dimensionless, 2e4);
    cfg.generate.settle_speed_threshold = r.quantity(
      "stages.generate.settle_speed_threshold", Dim::Velocity, 1e-3);
    cfg.generate.max_settle_steps =
      r.integer("stages.generate.max_settle_steps", 40000);
    cfg.generate.max_insert_attempts =
      r.integer("stages.generate.max_insert_attempts", 2000);
    if (cfg.generate.insertion_packing <= 0.0 ||
        cfg.generate.insertion_packing > 0.5)
      r.fail("stages.generate.insertion_packing", "must lie in (0, 0.5]");

    cfg.compress.target_stress =
      r.quantity("stages.compress.target_stress", Dim::Pressure, 1e6);
    cfg.compress.band =
      r.quantity("stages.compress.band", Dim::Dimensionless, 0.02);
    cfg.compress.plate_speed_max =
      r.quantity("stages.compress.plate_speed_max", Dim::Velocity, 0.2);
    cfg.compress.dwell_time =
      r.quantity("stages.compress.dwell_time", Dim::Time, 2e-4);
    cfg.compress.max_steps = r.integer("stages.compress.max_steps", 2000000);
    if (cfg.compress.target_stress < 0.0)
      r.fail("stages.compress.target_stress", "must be >= 0");

    cfg.perforate.diameter =
      r.quantity("stages.perforate.diameter", Dim::Length, 1.7e-3);
    cfg.perforate.height =
      r.quantity("stages.perforate.height", Dim::Length, 10e-3);
    cfg.perforate.drive_force =
      r.quantity("stages.perforate.drive_force", Dim::Force, 0.0);
    cfg.perforate.speed_cap =
      r.quantity("stages.perforate.speed_cap", Dim::Velocity, 0.5);
    cfg.perforate.stall_time =
      r.quantity("stages.perforate.stall_time", Dim::Time, 2e-3);
    cfg.perforate.max_steps = r.integer("stages.perforate.max_steps", 4000000);

    cfg.produce.total_time =
      r.quantity("stages.produce.total_time", Dim::Time, 0.04);
    if (const json* w = r.find("stages.produce.window_fractions"))
      {
        if (!w->is_array())
          r.fail("stages.produce.window_fractions", "expected an array");
        else
          {
            cfg.produce.window_fractions.clear();
            for (const auto& e : *w)
              if (e.is_number())
                cfg.produce.window_fractions.push_back(e.get<Real>());
              else
                r.fail("stages.produce.window_fractions",
                       "entries must be numbers");
            for (std::size_t i = 0; i < cfg.produce.window_fractions.size(); ++i)
              {
                const Real f = cfg.produce.window_fractions[i];
                if (f <= 0.0 || f >= 1.0 ||
                    (i > 0 && f <= cfg.produce.window_fractions[i - 1]))
                  {
                    r.fail("stages.produce.window_fractions",
                           "must be strictly increasing within (0, 1)");
                    break;
                  }
              }
          }
      }
    if (cfg.produce.total_time <= 0.0)
      r.fail("stages.produce.total_time", "must be positive");

    // --- cross-field checks ------------------------------------------------------
    if (errors.empty())
      {
        const Real dt_c = config_rayleigh_dt(cfg);
        if (cfg.dem_dt > cfg.safety_fraction * dt_c)
          {
            std::ostringstream os;
            os << "time.dem_dt: " << cfg.dem_dt
               << " s exceeds safety_fraction * Rayleigh critical step ("
               << cfg.safety_fraction << " * " << dt_c << " s)";
            errors.push_back(os.str());
          }
      }

    if (errors.empty())
      result.config = cfg;
    return result;
  }

  ValidationResult load_config(const std::string& path)
  {
    std::ifstream in(path);
    if (!in)
      {
        ValidationResult r;
        r.errors.push_back("cannot open config file '" + path + "'");
        return r;
      }
    json doc;
    try
      {
        in >> doc;
      }
    catch (const json::parse_error& e)
      {
        ValidationResult r;
        r.errors.push_back(std::string("config parse error: ") + e.what());
        return r;
      }
    return validate_config(doc);
  }

  namespace
  {
    std::string q(Real v, Dim d) { return units::format_quantity(v, d); }
  }

  json serialize_config(const RunConfig& cfg)
  {
    json j;
    j["material"] = {
      {"density", q(cfg.material.density, Dim::Density)},
      {"youngs_modulus", q(cfg.material.youngs_modulus, Dim::Pressure)},
      {"poisson_ratio", cfg.material.poisson_ratio},
      {"restitution", cfg.material.restitution},
      {"friction", cfg.material.friction},
      {"surface_energy", q(cfg.material.surface_energy, Dim::SurfaceEnergy)},
    };
    j["psd"]["mode"] =
      cfg.psd.mode == PsdMode::Polydisperse ? "polydisperse" : "monodisperse";
    for (const auto& b : cfg.psd.bins)
      j["psd"]["bins"].push_back({{"diameter", q(b.diameter, Dim::Length)},
                                  {"mass_fraction", b.mass_fraction}});
    j["domain"] = {
      {"length_x", q(cfg.domain.lx, Dim::Length)},
      {"length_y", q(cfg.domain.ly, Dim::Length)},
      {"length_z", q(cfg.domain.lz, Dim::Length)},
      {"gravity", q(-cfg.domain.gravity.z(), Dim::Acceleration)},
      {"outlet_top",
       {{"diameter", q(cfg.domain.outlet_top.diameter, Dim::Length)},
        {"center_x", q(cfg.domain.outlet_top.center_x, Dim::Length)},
        {"center_y", q(cfg.domain.outlet_top.center_y, Dim::Length)}}},
      {"outlet_bottom",
       {{"diameter", q(cfg.domain.outlet_bottom.diameter, Dim::Length)},
        {"center_x", q(cfg.domain.outlet_bottom.center_x, Dim::Length)},
        {"center_y", q(cfg.domain.outlet_bottom.center_y, Dim::Length)}}},
    };
    j["fluid"] = {
      {"density", q(cfg.fluid.density, Dim::Density)},
      {"viscosity", q(cfg.fluid.viscosity, Dim::Viscosity)},
      {"reference_pressure", q(cfg.fluid.reference_pressure, Dim::Pressure)},
      {"inlet_velocity", q(cfg.fluid.inlet_velocity, Dim::Velocity)},
      {"grid", {{"nx", cfg.fluid.nx}, {"ny", cfg.fluid.ny}, {"nz", cfg.fluid.nz}}},
      {"faces",
       {{"x_lo", face_name(cfg.fluid.faces.x_lo)},
        {"x_hi", face_name(cfg.fluid.faces.x_hi)},
        {"y_lo", face_name(cfg.fluid.faces.y_lo)},
        {"y_hi", face_name(cfg.fluid.faces.y_hi)},
        {"z_lo", face_name(cfg.fluid.faces.z_lo)},
        {"z_hi", face_name(cfg.fluid.faces.z_hi)}}},
    };
    j["time"] = {
      {"dem_dt", q(cfg.dem_dt, Dim::Time)},
      {"cfd_dt", q(cfg.cfd_dt, Dim::Time)},
      {"safety_fraction", cfg.safety_fraction},
    };
    j["run"] = {
      {"seed", cfg.seed},
      {"workers", cfg.workers},
      {"output_every_cfd_steps", cfg.output_every_cfd_steps},
      {"output_every_dem_steps", cfg.output_every_dem_steps},
      {"velocity_cap", q(cfg.velocity_cap, Dim::Velocity)},
    };
    j["coupling"] = {
      {"porosity_floor", cfg.porosity_floor},
      {"porosity_smoothing", cfg.porosity_smoothing},
      {"reynolds_slip", cfg.drag_superficial_re ? "superficial" : "as_printed"},
      {"velocity_interpolation",
       cfg.drag_trilinear_interp ? "trilinear" : "cell"},
      {"cell_size_gate_override", cfg.cell_size_gate_override},
    };
    j["dem_options"] = {
      {"rayleigh_shear_form",
       cfg.rayleigh_printed_shear ? "as_printed" : "standard"},
    };
    j["coarsegrain"] = {
      {"k", cfg.coarsegrain.k},
      {"method", cfg.coarsegrain.method},
      {"source_hash", cfg.coarsegrain.source_hash},
      {"ssp_mean_diameter", q(cfg.ssp_mean_diameter, Dim::Length)},
    };
    j["stages"]["generate"] = {
      {"particle_count", cfg.generate.particle_count},
      {"total_mass", q(cfg.generate.total_mass, Dim::Mass)},
      {"insertion_packing", cfg.generate.insertion_packing},
      {"settle_damping_rate", cfg.generate.settle_damping_rate},
      {"settle_speed_threshold",
       q(cfg.generate.settle_speed_threshold, Dim::Velocity)},
      {"max_settle_steps", cfg.generate.max_settle_steps},
      {"max_insert_attempts", cfg.generate.max_insert_attempts},
    };
    j["stages"]["compress"] = {
      {"target_stress", q(cfg.compress.target_stress, Dim::Pressure)},
      {"band", cfg.compress.band},
      {"plate_speed_max", q(cfg.compress.plate_speed_max, Dim::Velocity)},
      {"dwell_time", q(cfg.compress.dwell_time, Dim::Time)},
      {"max_steps", cfg.compress.max_steps},
    };
    j["stages"]["perforate"] = {
      {"diameter", q(cfg.perforate.diameter, Dim::Length)},
      {"height", q(cfg.perforate.height, Dim::Length)},
      {"drive_force", q(cfg.perforate.drive_force, Dim::Force)},
      {"speed_cap", q(cfg.perforate.speed_cap, Dim::Velocity)},
      {"stall_time", q(cfg.perforate.stall_time, Dim::Time)},
      {"max_steps", cfg.perforate.max_steps},
    };
    {
      json prod = {
        {"total_time", q(cfg.produce.total_time, Dim::Time)},
      };
      prod["window_fractions"] = cfg.produce.window_fractions;
      j["stages"]["produce"] = prod;
    }
    return j;
  }

  std::string RunConfig::hash() const
  {
    const std::string canonical = serialize_config(*this).dump();
    std::uint64_t     h         = 0xcbf29ce484222325ULL;
    for (const char c : canonical)
      {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
      }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
  }

  Real config_rayleigh_dt(const RunConfig& cfg)
  {
    const Real rbar = 0.5 * cfg.psd.number_mean_diameter();
    return rayleigh_critical_dt(rbar, cfg.material,
                                cfg.rayleigh_printed_shear);
  }
} // namespace sandprod
