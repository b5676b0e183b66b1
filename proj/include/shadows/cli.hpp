#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "shadows/io.hpp"

namespace shadows {

/// One resolved invocation. Precedence: explicit flags > config file >
/// defaults; SHADOWS_WORKERS supplies the default worker count.
struct RunConfig {
  std::string command;
  std::string polytope = "cube";
  int dim = 3;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  int workers = 0;  // 0 = hardware concurrency
  std::string method = "mc";
  int grid_theta = 256;
  int grid_phi = 256;
  int bins = 16;
  std::string format = "table";
  std::string out;
};

namespace detail {

inline void apply_config_json(RunConfig& c, const Json& j) {
  if (j.contains("polytope")) c.polytope = j.at("polytope").get<std::string>();
  if (j.contains("dim")) c.dim = j.at("dim").get<int>();
  if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) c.workers = j.at("workers").get<int>();
  if (j.contains("method")) c.method = j.at("method").get<std::string>();
  if (j.contains("grid")) {
    c.grid_theta = j.at("grid").get<int>();
    c.grid_phi = c.grid_theta;
  }
  if (j.contains("grid_theta")) c.grid_theta = j.at("grid_theta").get<int>();
  if (j.contains("grid_phi")) c.grid_phi = j.at("grid_phi").get<int>();
  if (j.contains("bins")) c.bins = j.at("bins").get<int>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
}

inline int default_workers_from_env() {
  if (const char* env = std::getenv("SHADOWS_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 0;
}

struct ValidateRow {
  std::string key;
  double reference = 0.0;
  double estimate = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool exact = false;   // Exact entries gate the exit status
  bool failed = false;  // exact and |z| > 5
};

inline double safe_z(double est, double ref, double se) {
  if (se > 0.0) return (est - ref) / se;
  return est == ref ? 0.0 : std::numeric_limits<double>::infinity();
}

inline void validate_body(const Polytope& poly, std::uint64_t samples,
                          std::uint64_t seed, int workers,
                          std::vector<ValidateRow>& rows) {
  const ReferenceTable& table = reference_table();
  const MomentReport r = estimate_mc(poly, samples, seed, workers);
  const std::string prefix = r.polytope + ".";

  const auto add = [&](const std::string& suffix, double est, double se) {
    const ReferenceEntry* e = table.find(prefix + suffix);
    if (!e) return;
    ValidateRow row;
    row.key = e->key;
    row.reference = e->value;
    row.estimate = est;
    row.se = se;
    row.z = safe_z(est, e->value, se);
    row.exact = e->status == RefStatus::Exact;
    row.failed = row.exact && !(std::abs(row.z) <= 5.0);
    rows.push_back(row);
  };

  add("E_cw", r.mean_cw, r.se_cw);
  add("E_cw2", r.mean_cw2, r.se_cw2);
  add("E_pw", r.mean_pw, r.se_pw);
  add("E_pw2", r.mean_pw2, r.se_pw2);
  add("E_cwpw", r.mean_cwpw, r.se_cwpw);
  add("corr", r.correlation, r.se_correlation);

  const double n = static_cast<double>(r.n_samples);
  double mean_k = 0.0, mean_k2 = 0.0;
  for (const auto& [k, f] : r.vertex_hist) {
    const double se = std::sqrt(f * (1.0 - f) / n);
    add("p" + std::to_string(k), f, se);
    mean_k += k * f;
    mean_k2 += static_cast<double>(k) * k * f;
  }
  if (poly.dim == 4) {
    const double se_k =
        std::sqrt(std::max(0.0, mean_k2 - mean_k * mean_k) / n);
    add("E_nverts", mean_k, se_k);
  }
}

}  // namespace detail

/// Executes a resolved configuration, writing the report to `os`.
/// Returns 0 on success, 2 on configuration errors; `validate` returns 1
/// when any exact reference entry shows |z| > 5.
inline int run(const RunConfig& cfg, std::ostream& os) {
  const auto emit_json = [&](const Json& j) { os << j.dump(2) << "\n"; };

  try {
    if (cfg.command == "reference") {
      const ReferenceTable& t = reference_table();
      if (cfg.format == "json")
        emit_json(to_json(t));
      else if (cfg.format == "csv")
        os << reference_csv(t);
      else
        os << reference_text(t);
      return 0;
    }

    if (cfg.command == "moments") {
      const Polytope poly =
          make_polytope(polytope_name_from_string(cfg.polytope), cfg.dim);
      MomentReport r;
      if (cfg.method == "quadrature") {
        if (cfg.dim != 3) {
          os << "error: quadrature supports only dim 3\n";
          return 2;
        }
        r = estimate_quadrature3(poly, cfg.grid_theta, cfg.grid_phi);
      } else if (cfg.method == "mc") {
        r = estimate_mc(poly, cfg.samples, cfg.seed, cfg.workers);
      } else {
        os << "error: unknown method '" << cfg.method << "'\n";
        return 2;
      }
      if (cfg.format == "json")
        emit_json(to_json(r));
      else if (cfg.format == "csv")
        os << report_csv_header() << "\n" << report_csv_row(r) << "\n";
      else
        os << report_table(r);
      return 0;
    }

    if (cfg.command == "vertex-dist") {
      const Polytope poly =
          make_polytope(polytope_name_from_string(cfg.polytope), cfg.dim);
      const VertexDistribution d =
          vertex_distribution(poly, cfg.samples, cfg.seed, cfg.workers);
      if (cfg.format == "json") {
        emit_json(to_json(d));
      } else {
        os << "body " << d.polytope << "  n " << d.n_samples << "  seed "
           << d.seed << "\n";
        for (const auto& [k, pse] : d.probabilities)
          os << "  p(" << k << ") = " << fmt_g17(pse.first) << " +/- "
             << fmt_g17(pse.second) << "\n";
        os << "  E(vertices) = " << fmt_g17(d.expected_vertices) << " +/- "
           << fmt_g17(d.se_expected) << "\n";
      }
      return 0;
    }

    if (cfg.command == "xcheck") {
      const OracleBody body =
          oracle_body(polytope_name_from_string(cfg.polytope), cfg.dim);
      const XCheckReport r = xcheck(body, cfg.samples, cfg.seed);
      emit_json(to_json(r));
      return 0;
    }

    if (cfg.command == "density") {
      const PolytopeName name = polytope_name_from_string(cfg.polytope);
      const WidthTestReport r =
          width_chi2_test(name, cfg.samples, cfg.seed, cfg.bins);
      emit_json(to_json(r));
      return r.pass ? 0 : 1;
    }

    if (cfg.command == "identity-test") {
      const IdentityTestReport r =
          distribution_identity_test(cfg.samples, cfg.seed);
      emit_json(to_json(r));
      return 0;
    }

    if (cfg.command == "validate") {
      std::vector<detail::ValidateRow> rows;
      const std::vector<PolytopeName> bodies = {PolytopeName::Simplex,
                                                PolytopeName::Cube,
                                                PolytopeName::Crosspolytope};
      for (PolytopeName name : bodies) {
        const Polytope poly = make_polytope(name, cfg.dim);
        const std::uint64_t body_seed =
            derive_seed(cfg.seed, static_cast<std::uint32_t>(name));
        detail::validate_body(poly, cfg.samples, body_seed, cfg.workers, rows);
      }
      bool any_failed = false;
      Json arr = Json::array();
      for (const auto& row : rows) {
        any_failed = any_failed || row.failed;
        if (cfg.format == "json") {
          Json j;
          j["key"] = row.key;
          j["reference"] = row.reference;
          j["estimate"] = row.estimate;
          j["se"] = row.se;
          j["z"] = row.z;
          j["tested"] = row.exact;
          j["failed"] = row.failed;
          arr.push_back(j);
        } else {
          char buf[200];
          std::snprintf(buf, sizeof(buf),
                        "%-18s ref %-20.12g est %-20.12g z %+8.3f %s%s\n",
                        row.key.c_str(), row.reference, row.estimate, row.z,
                        row.exact ? "tested" : "info  ",
                        row.failed ? "  FAIL" : "");
          os << buf;
        }
      }
      if (cfg.format == "json") emit_json(arr);
      os << (any_failed ? "validate: FAIL\n" : "validate: OK\n");
      return any_failed ? 1 : 0;
    }

    os << "error: unknown command '" << cfg.command << "'\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    os << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    os << "error: " << e.what() << "\n";
    return 2;
  }
}

/// Runs the config, honoring cfg.out; returns the process exit status.
inline int run_to_destination(const RunConfig& cfg) {
  if (cfg.out.empty()) return run(cfg, std::cout);
  std::ofstream f(cfg.out);
  if (!f) {
    std::cerr << "error: cannot open output path " << cfg.out << "\n";
    return 2;
  }
  return run(cfg, f);
}

}  // namespace shadows
