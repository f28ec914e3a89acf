// Batch verification and computation front-end. Subcommands run the
// invariant suites (`check`) or emit geometry computations as deterministic
// JSON/CSV reports (`curvature`, `geodesic`, `jacobi`, `natmetric`).
//
// Exit codes: 0 all checks pass / computation done, 1 check failure,
// 2 unknown manifold, malformed config, or rejected (off-manifold) inputs.

#include "riemann/checks.hpp"
#include "riemann/natmetric.hpp"
#include "riemann/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace riemann;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string manifold;
  int n = 0;
  int p = 0;
  double alpha = 1.0;
  std::vector<int> partition;
  std::uint64_t seed = 0;
  int samples = 20;
  std::map<std::string, double> tol;
  int steps = 1000;
  double horizon = 1.0;
  std::vector<double> tgrid;
  std::string out;
  std::string format = "json";
  std::string inputs;
  int random_count = 0;
  bool tgrid_set = false;
  std::string profile = "sasaki";
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

void merge_config_file(RunConfig& cfg, const std::string& path,
                       const std::set<std::string>& already_set) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("malformed config: ") + ex.what());
  }
  auto take = [&](const char* key) { return !already_set.count(key) && j.contains(key); };
  try {
    if (take("manifold")) cfg.manifold = j["manifold"].get<std::string>();
    if (take("n")) cfg.n = j["n"].get<int>();
    if (take("p")) cfg.p = j["p"].get<int>();
    if (take("alpha")) cfg.alpha = j["alpha"].get<double>();
    if (take("partition")) cfg.partition = j["partition"].get<std::vector<int>>();
    if (take("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (take("samples")) cfg.samples = j["samples"].get<int>();
    if (take("steps")) cfg.steps = j["steps"].get<int>();
    if (take("horizon")) cfg.horizon = j["horizon"].get<double>();
    if (take("tgrid")) {
      cfg.tgrid = j["tgrid"].get<std::vector<double>>();
      cfg.tgrid_set = true;
    }
    if (take("out")) cfg.out = j["out"].get<std::string>();
    if (take("format")) cfg.format = j["format"].get<std::string>();
    if (take("inputs")) cfg.inputs = j["inputs"].get<std::string>();
    if (take("profile")) cfg.profile = j["profile"].get<std::string>();
    if (take("random")) cfg.random_count = j["random"].get<int>();
    if (j.contains("tol"))
      for (auto& [k, v] : j["tol"].items())
        if (!cfg.tol.count(k)) cfg.tol[k] = v.get<double>();
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("malformed config: ") + ex.what());
  }
}

manifolds::CatalogEntry entry_from(const RunConfig& cfg) {
  manifolds::CatalogRequest req;
  req.manifold = cfg.manifold;
  req.n = cfg.n;
  req.p = cfg.p;
  req.alpha = cfg.alpha;
  req.partition = cfg.partition;
  return manifolds::make_entry(req);
}

void emit(const RunConfig& cfg, const report::Report& rep) {
  const std::string text =
      (cfg.format == "csv") ? report::to_csv(rep) : report::to_json(rep);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    out << text;
  }
}

report::Report base_report(const RunConfig& cfg, const manifolds::CatalogEntry& e) {
  report::Report rep;
  rep.manifold = e.name;
  for (const auto& [k, v] : e.params) rep.params.emplace_back(k, v);
  rep.seed = cfg.seed;
  return rep;
}

// ---------------------------------------------------------------------------
// Input samples: groups of `arity` coordinate blocks per sample, either from
// a JSON file ({"samples": [[block, ...], ...]}, blocks flat or row-major
// nested), from a CSV file (blank-line separated blocks, row-major), or
// sampled randomly on the manifold.
// ---------------------------------------------------------------------------

using SampleGroup = std::vector<Vec>;

Vec flatten_json_block(const json& block) {
  std::vector<double> vals;
  if (block.is_array() && !block.empty() && block[0].is_array()) {
    for (const auto& row : block)
      for (const auto& v : row) vals.push_back(v.get<double>());
  } else {
    for (const auto& v : block) vals.push_back(v.get<double>());
  }
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::vector<SampleGroup> read_inputs(const std::string& path, int arity, int dim) {
  std::vector<SampleGroup> groups;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open inputs file: " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    json j;
    try {
      in >> j;
    } catch (const std::exception& ex) {
      throw ConfigError(std::string("malformed inputs: ") + ex.what());
    }
    if (!j.contains("samples")) throw ConfigError("inputs file lacks \"samples\"");
    for (const auto& sample : j["samples"]) {
      SampleGroup g;
      for (const auto& block : sample) g.push_back(flatten_json_block(block));
      if (static_cast<int>(g.size()) != arity)
        throw ConfigError("inputs sample has wrong number of blocks");
      groups.push_back(std::move(g));
    }
  } else {
    // CSV: blocks separated by blank lines; rows are comma-separated.
    std::vector<Vec> blocks;
    std::vector<double> current;
    std::string line;
    auto close_block = [&]() {
      if (current.empty()) return;
      blocks.push_back(
          Eigen::Map<Vec>(current.data(), static_cast<Eigen::Index>(current.size())));
      current.clear();
    };
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        close_block();
        continue;
      }
      std::stringstream ss(line);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) current.push_back(std::stod(item));
    }
    close_block();
    if (blocks.size() % arity != 0)
      throw ConfigError("inputs block count is not a multiple of the expected arity");
    for (std::size_t i = 0; i < blocks.size(); i += arity)
      groups.emplace_back(blocks.begin() + i, blocks.begin() + i + arity);
  }
  for (const auto& g : groups)
    for (const auto& b : g)
      if (b.size() != dim)
        throw ConfigError("inputs block size does not match the ambient dimension");
  return groups;
}

void require_on_manifold(const manifolds::CatalogEntry& e, const Vec& x) {
  const double r = e.structure.membership ? e.structure.membership(x) : 0.0;
  if (r > 1e-6)
    throw ConfigError("input point rejected: membership residual " +
                      report::format_double(r));
}

void require_tangent_input(const manifolds::CatalogEntry& e, const Vec& x, const Vec& w) {
  const double r = tangency_residual(e.structure, x, w);
  if (r > 1e-6 * (1.0 + w.norm()))
    throw ConfigError("input tangent rejected: tangency residual " +
                      report::format_double(r));
}

std::vector<double> t_grid(const RunConfig& cfg) {
  if (cfg.tgrid_set) return cfg.tgrid;  // an explicitly empty grid stays empty
  std::vector<double> grid;
  for (int i = 0; i <= 4; ++i) grid.push_back(cfg.horizon * i / 4.0);
  return grid;
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

int cmd_check(const RunConfig& cfg) {
  auto e = entry_from(cfg);
  checks::SuiteConfig scfg{cfg.seed, cfg.samples, cfg.tol};
  report::Report rep = base_report(cfg, e);
  rep.checks = checks::run_all(e, scfg);
  emit(cfg, rep);
  return rep.all_pass() ? 0 : 1;
}

int cmd_geodesic(const RunConfig& cfg) {
  auto e = entry_from(cfg);
  const bool lifted = e.submersion.has_value();
  std::vector<SampleGroup> groups;
  Rng rng(cfg.seed);
  if (!cfg.inputs.empty()) {
    groups = read_inputs(cfg.inputs, 2, e.structure.space.dim);
    for (auto& g : groups) {
      require_on_manifold(e, g[0]);
      require_tangent_input(e, g[0], g[1]);
    }
  } else {
    const int count = cfg.random_count > 0 ? cfg.random_count : 3;
    for (int i = 0; i < count; ++i) {
      const Vec x = e.random_point(rng);
      const Vec v = lifted ? random_horizontal(*e.submersion, rng, x)
                           : random_tangent(e.structure, rng, x);
      groups.push_back({x, v});
    }
  }
  report::Report rep = base_report(cfg, e);
  report::Table table;
  table.columns = {"sample", "t", "membership", "energy_rel_drift"};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Vec& x = groups[i][0];
    const Vec& v = groups[i][1];
    GeodesicSpec spec{&e.structure, x, v, cfg.horizon, cfg.steps,
                      lifted && e.geodesic_horizontal_cf ? e.geodesic_horizontal_cf
                                                         : e.geodesic_cf};
    const double e0 = metric_inner(e.structure, x, v, v);
    for (double t : t_grid(cfg)) {
      auto [gx, gv] = geodesic(spec, t);
      const double memb = e.structure.membership ? e.structure.membership(gx) : 0.0;
      const double drift =
          (e0 > 0) ? std::abs(metric_inner(e.structure, gx, gv, gv) / e0 - 1.0) : 0.0;
      table.rows.push_back({static_cast<double>(i), t, memb, drift});
    }
  }
  rep.tables.emplace_back("geodesic", std::move(table));
  emit(cfg, rep);
  return 0;
}

int cmd_curvature(const RunConfig& cfg) {
  auto e = entry_from(cfg);
  const bool lifted = e.submersion.has_value();
  std::vector<SampleGroup> groups;
  Rng rng(cfg.seed);
  if (!cfg.inputs.empty()) {
    groups = read_inputs(cfg.inputs, 4, e.structure.space.dim);
    for (auto& g : groups) {
      require_on_manifold(e, g[0]);
      for (int j = 1; j < 4; ++j) require_tangent_input(e, g[0], g[j]);
    }
  } else {
    const int count = cfg.random_count > 0 ? cfg.random_count : cfg.samples;
    for (int i = 0; i < count; ++i) {
      const Vec x = e.random_point(rng);
      auto draw = [&]() {
        return lifted ? random_horizontal(*e.submersion, rng, x)
                      : random_tangent(e.structure, rng, x);
      };
      groups.push_back({x, draw(), draw(), draw()});
    }
  }
  report::Report rep = base_report(cfg, e);
  report::Table table;
  table.columns = {"sample",        "sectional_numerator", "dev_variant_a",
                   "dev_variant_b", "dev_closed_form",     "bianchi_residual"};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Vec& x = groups[i][0];
    const Vec &xi = groups[i][1], &eta = groups[i][2], &phi = groups[i][3];
    double sect, dev_a, dev_b, dev_cf = std::nan(""), bianchi;
    if (lifted) {
      const auto& sub = *e.submersion;
      const Vec r1 =
          curvature_submersed(sub, x, xi, eta, phi, {SubmersedCurvaturePath::direct, {}, 0.0});
      const Vec r2 =
          curvature_submersed(sub, x, xi, eta, phi, {SubmersedCurvaturePath::ring, {}, 0.0});
      const Vec r3 = curvature_submersed(sub, x, xi, eta, phi,
                                         {SubmersedCurvaturePath::total_split, {}, 0.0});
      sect = sectional_numerator_submersed(sub, x, xi, eta);
      dev_a = (r1 - r2).cwiseAbs().maxCoeff();
      dev_b = (r1 - r3).cwiseAbs().maxCoeff();
      if (e.curvature_h_cf)
        dev_cf = (r1 - e.curvature_h_cf(x, xi, eta, phi)).cwiseAbs().maxCoeff();
      bianchi = (r1 + curvature_submersed(sub, x, eta, phi, xi) +
                 curvature_submersed(sub, x, phi, xi, eta))
                    .norm();
    } else {
      const EmbeddedStructure& s = e.structure;
      const Vec r1 = curvature_embedded(s, x, xi, eta, phi, {CurvatureVariant::rc1, 0.0});
      const Vec r1a = curvature_embedded(s, x, xi, eta, phi, {CurvatureVariant::rc1a, 0.0});
      const Vec r2 = curvature_embedded(s, x, xi, eta, phi, {CurvatureVariant::rc2, 0.0});
      sect = sectional_numerator(s, x, xi, eta);
      dev_a = (r1 - r1a).cwiseAbs().maxCoeff();
      dev_b = (r1 - r2).cwiseAbs().maxCoeff();
      if (e.curvature_cf)
        dev_cf = (r1 - e.curvature_cf(x, xi, eta, phi)).cwiseAbs().maxCoeff();
      bianchi = (r1 + curvature_embedded(s, x, eta, phi, xi) +
                 curvature_embedded(s, x, phi, xi, eta))
                    .norm();
    }
    table.rows.push_back({static_cast<double>(i), sect, dev_a, dev_b, dev_cf, bianchi});
  }
  rep.tables.emplace_back("curvature", std::move(table));
  emit(cfg, rep);
  return 0;
}

int cmd_jacobi(const RunConfig& cfg) {
  auto e = entry_from(cfg);
  const bool lifted = e.submersion.has_value();
  std::vector<SampleGroup> groups;
  Rng rng(cfg.seed);
  if (!cfg.inputs.empty()) {
    groups = read_inputs(cfg.inputs, 4, e.structure.space.dim);
    for (auto& g : groups) {
      require_on_manifold(e, g[0]);
      require_tangent_input(e, g[0], g[1]);
    }
  } else {
    const int count = cfg.random_count > 0 ? cfg.random_count : 2;
    for (int i = 0; i < count; ++i) {
      const Vec x = e.random_point(rng);
      if (lifted) {
        const auto& sub = *e.submersion;
        const Vec v = random_horizontal(sub, rng, x);
        const Vec nm = random_horizontal(sub, rng, x);
        const Vec nc = random_horizontal(sub, rng, x);
        groups.push_back({x, v, nm, connection_map_q_inverse(sub, x, nm, v, nc)});
      } else {
        const Vec v = random_tangent(e.structure, rng, x);
        const DoubleTangent q = random_double_tangent(e.structure, rng, x, v);
        groups.push_back({x, v, q.dm, q.dt});
      }
    }
  }
  report::Report rep = base_report(cfg, e);
  report::Table table;
  table.columns = {"sample",    "t",         "norm_cf",    "norm_fd",
                   "norm_ode",  "dev_cf_fd", "dev_cf_ode", "dev_fd_ode"};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Vec& x = groups[i][0];
    const Vec& v = groups[i][1];
    const Vec& dm = groups[i][2];
    const Vec& dt = groups[i][3];
    GeodesicSpec spec{&e.structure, x, v, cfg.horizon, cfg.steps,
                      lifted && e.geodesic_horizontal_cf ? e.geodesic_horizontal_cf
                                                         : e.geodesic_cf};
    for (double t : t_grid(cfg)) {
      Vec cf, fd, ode;
      bool has_cf = false;
      if (lifted) {
        const auto& sub = *e.submersion;
        fd = jacobi_horizontal_lift(sub, spec, dm, dt, t);
        ode = jacobi_ode_submersed(sub, spec, dm, dt, t);
        if (e.jacobi_h_cf) {
          cf = e.jacobi_h_cf(x, v, dm, dt, t);
          has_cf = true;
        }
      } else {
        const JacobiInit init{dm, dt};
        fd = jacobi_fd(spec, init, t);
        ode = jacobi_ode(spec, init, t);
        if (e.jacobi_cf) {
          cf = e.jacobi_cf(x, v, dm, dt, t);
          has_cf = true;
        }
      }
      const double nan = std::nan("");
      table.rows.push_back({static_cast<double>(i), t,
                            has_cf ? cf.norm() : nan, fd.norm(), ode.norm(),
                            has_cf ? (cf - fd).cwiseAbs().maxCoeff() : nan,
                            has_cf ? (cf - ode).cwiseAbs().maxCoeff() : nan,
                            (fd - ode).cwiseAbs().maxCoeff()});
    }
  }
  rep.tables.emplace_back("jacobi", std::move(table));
  emit(cfg, rep);
  return 0;
}

natmetric::AlphaBeta profile_from(const RunConfig& cfg) {
  if (cfg.profile == "sasaki") return natmetric::sasaki_profile();
  if (cfg.profile == "cheeger_gromoll") return natmetric::cheeger_gromoll_profile();
  throw ConfigError("unknown natural-metric profile: " + cfg.profile);
}

int cmd_natmetric(const RunConfig& cfg) {
  auto e = entry_from(cfg);
  const auto ab = profile_from(cfg);
  Rng rng(cfg.seed);
  const int n = e.structure.space.dim;
  report::Report rep = base_report(cfg, e);

  std::vector<SampleGroup> groups;
  if (!cfg.inputs.empty()) {
    groups = read_inputs(cfg.inputs, 6, n);
    for (auto& g : groups) {
      require_on_manifold(e, g[0]);
      require_tangent_input(e, g[0], g[1]);
    }
  } else {
    const int count = cfg.random_count > 0 ? cfg.random_count : 3;
    for (int i = 0; i < count; ++i) {
      const Vec x = e.random_point(rng);
      const Vec v = e.submersion ? random_horizontal(*e.submersion, rng, x)
                                 : random_tangent(e.structure, rng, x);
      // Random bundle tangents through the projection.
      const Mat pg = e.submersion ? natmetric::project_HG(*e.submersion, ab, x, v)
                                  : natmetric::project_G(e.structure, ab, x, v);
      const Vec t1 = pg * rng.gaussian_vec(2 * n);
      const Vec t2 = pg * rng.gaussian_vec(2 * n);
      groups.push_back({x, v, t1.head(n), t1.tail(n), t2.head(n), t2.tail(n)});
    }
  }

  report::Table table;
  table.columns = {"sample"};
  for (int j = 0; j < 2 * n; ++j) table.columns.push_back("g" + std::to_string(j));
  const std::string name = e.submersion ? "gamma_hq" : "gamma_g";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Vec& x = groups[i][0];
    const Vec& v = groups[i][1];
    Vec tx(2 * n), ty(2 * n);
    tx << groups[i][2], groups[i][3];
    ty << groups[i][4], groups[i][5];
    const Vec g = e.submersion
                      ? natmetric::gamma_HQ(*e.submersion, ab, x, v, tx, ty)
                      : natmetric::gamma_G(e.structure, ab, x, v, tx, ty);
    std::vector<double> row{static_cast<double>(i)};
    for (int j = 0; j < 2 * n; ++j) row.push_back(g[j]);
    table.rows.push_back(std::move(row));
  }
  rep.tables.emplace_back(name, std::move(table));
  emit(cfg, rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian geometry verification harness"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string partition_text, tgrid_text, config_path;
  std::vector<std::string> tol_items;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifold", cfg.manifold,
                    "catalog name: sphere|so|stiefel|sasaki|flag|grassmann");
    sub->add_option("--n", cfg.n, "primary dimension parameter");
    sub->add_option("--p", cfg.p, "secondary dimension parameter");
    sub->add_option("--alpha", cfg.alpha, "Stiefel metric parameter");
    sub->add_option("--partition", partition_text, "flag partition, e.g. 2,2,1");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "sample count for check suites");
    sub->add_option("--tol", tol_items, "tolerance override name=value (repeatable)");
    sub->add_option("--steps", cfg.steps, "integrator steps across the horizon");
    sub->add_option("--horizon", cfg.horizon, "time horizon");
    sub->add_option("--tgrid", tgrid_text, "comma-separated evaluation times");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json|csv");
    sub->add_option("--config", config_path, "JSON config file (same schema as flags)");
    sub->add_option("--inputs", cfg.inputs, "inputs file (.json or CSV blocks)");
    sub->add_option("--random", cfg.random_count, "number of random samples for tables");
    sub->add_option("--profile", cfg.profile,
                    "natural-metric preset: sasaki|cheeger_gromoll");
  };

  auto* check = app.add_subcommand("check", "run invariant suites");
  auto* curvature = app.add_subcommand("curvature", "curvature tables");
  auto* geodesic_cmd = app.add_subcommand("geodesic", "geodesic tables");
  auto* jacobi_cmd = app.add_subcommand("jacobi", "Jacobi field tables");
  auto* natmetric_cmd = app.add_subcommand("natmetric", "natural metric tables");
  for (auto* sub : {check, curvature, geodesic_cmd, jacobi_cmd, natmetric_cmd})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) return app.exit(ex);  // --help
    app.exit(ex);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::set<std::string> set_flags;
  for (const char* key :
       {"--manifold", "--n", "--p", "--alpha", "--partition", "--seed", "--samples",
        "--steps", "--horizon", "--tgrid", "--out", "--format", "--inputs", "--random",
        "--profile"}) {
    if (sub->count(key) > 0) set_flags.insert(key + 2);
  }

  try {
    if (!config_path.empty()) merge_config_file(cfg, config_path, set_flags);
    if (!partition_text.empty()) cfg.partition = parse_partition(partition_text);
    if (sub->count("--tgrid") > 0) {
      cfg.tgrid = parse_grid(tgrid_text);
      cfg.tgrid_set = true;
    }
    for (const auto& item : tol_items) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("expected --tol name=value");
      cfg.tol[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    if (!set_flags.count("seed") && cfg.seed == 0) {
      if (const char* env = std::getenv("AMBIENT_RIEMANN_SEED"))
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (cfg.manifold.empty()) throw ConfigError("no manifold selected");

    if (sub == check) return cmd_check(cfg);
    if (sub == curvature) return cmd_curvature(cfg);
    if (sub == geodesic_cmd) return cmd_geodesic(cfg);
    if (sub == jacobi_cmd) return cmd_jacobi(cfg);
    if (sub == natmetric_cmd) return cmd_natmetric(cfg);
    return 2;
  } catch (const ConfigError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const InvalidParameter& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
