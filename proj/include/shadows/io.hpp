#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "shadows/closedforms.hpp"
#include "shadows/estimators.hpp"
#include "shadows/oracles.hpp"
#include "shadows/polytopes.hpp"

namespace shadows {

using Json = nlohmann::ordered_json;

/// 17 significant digits: enough to round-trip an IEEE double exactly.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline Json to_json(const Polytope& p) {
  Json j;
  j["name"] = to_string(p.name);
  j["dim"] = p.dim;
  Json verts = Json::array();
  for (const VecN& v : p.vertices) {
    Json row = Json::array();
    for (int i = 0; i < p.dim; ++i) row.push_back(fmt_g17(v[i]));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  return j;
}

inline Json to_json(const MomentReport& r) {
  Json j;
  j["polytope"] = r.polytope;
  j["dim"] = r.dim;
  j["method"] = to_string(r.method);
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["degenerate_count"] = r.degenerate_count;
  j["mean_cw"] = r.mean_cw;
  j["se_cw"] = r.se_cw;
  j["mean_cw2"] = r.mean_cw2;
  j["se_cw2"] = r.se_cw2;
  j["mean_pw"] = r.mean_pw;
  j["se_pw"] = r.se_pw;
  j["mean_pw2"] = r.mean_pw2;
  j["se_pw2"] = r.se_pw2;
  j["mean_cwpw"] = r.mean_cwpw;
  j["se_cwpw"] = r.se_cwpw;
  j["correlation"] = r.correlation;
  j["se_correlation"] = r.se_correlation;
  Json hist;
  for (const auto& [k, f] : r.vertex_hist) hist[std::to_string(k)] = f;
  j["vertex_hist"] = hist;
  return j;
}

inline std::string report_csv_header() {
  return "polytope,dim,method,n_samples,seed,degenerate_count,"
         "mean_cw,se_cw,mean_cw2,se_cw2,mean_pw,se_pw,mean_pw2,se_pw2,"
         "mean_cwpw,se_cwpw,correlation,se_correlation,vertex_hist";
}

inline std::string report_csv_row(const MomentReport& r) {
  std::ostringstream os;
  os << r.polytope << ',' << r.dim << ',' << to_string(r.method) << ','
     << r.n_samples << ',' << r.seed << ',' << r.degenerate_count;
  for (double v : {r.mean_cw, r.se_cw, r.mean_cw2, r.se_cw2, r.mean_pw,
                   r.se_pw, r.mean_pw2, r.se_pw2, r.mean_cwpw, r.se_cwpw,
                   r.correlation, r.se_correlation})
    os << ',' << fmt_g17(v);
  os << ',';
  bool first = true;
  for (const auto& [k, f] : r.vertex_hist) {
    if (!first) os << ';';
    os << k << ':' << fmt_g17(f);
    first = false;
  }
  return os.str();
}

inline std::string report_table(const MomentReport& r) {
  std::ostringstream os;
  os << "body " << r.polytope << "  method " << to_string(r.method)
     << "  n " << r.n_samples << "  seed " << r.seed << "  degenerate "
     << r.degenerate_count << "\n";
  const auto row = [&](const char* name, double mean, double se) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  %-10s %-22.15g +/- %.3g\n", name, mean, se);
    os << buf;
  };
  row("E(cw)", r.mean_cw, r.se_cw);
  row("E(cw^2)", r.mean_cw2, r.se_cw2);
  row("E(pw)", r.mean_pw, r.se_pw);
  row("E(pw^2)", r.mean_pw2, r.se_pw2);
  row("E(cw pw)", r.mean_cwpw, r.se_cwpw);
  row("corr", r.correlation, r.se_correlation);
  os << "  vertices  ";
  for (const auto& [k, f] : r.vertex_hist)
    os << k << ": " << fmt_g17(f) << "  ";
  os << "\n";
  return os.str();
}

inline Json to_json(const ReferenceTable& t) {
  Json arr = Json::array();
  for (const auto& e : t.entries()) {
    Json j;
    j["key"] = e.key;
    j["formula"] = e.formula;
    j["value"] = e.value;
    j["status"] = to_string(e.status);
    if (!e.digits.empty()) j["printed"] = e.digits;
    arr.push_back(j);
  }
  return arr;
}

inline std::string reference_csv(const ReferenceTable& t) {
  std::ostringstream os;
  os << "key,value,status,formula\n";
  for (const auto& e : t.entries())
    os << e.key << ',' << fmt_g17(e.value) << ',' << to_string(e.status)
       << ",\"" << e.formula << "\"\n";
  return os.str();
}

inline std::string reference_text(const ReferenceTable& t) {
  std::ostringstream os;
  for (const auto& e : t.entries()) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-18s %-22.15g %-17s %s\n", e.key.c_str(),
                  e.value, to_string(e.status).c_str(), e.formula.c_str());
    os << buf;
  }
  return os.str();
}

inline Json to_json(const VertexDistribution& d) {
  Json j;
  j["polytope"] = d.polytope;
  j["n_samples"] = d.n_samples;
  j["seed"] = d.seed;
  Json probs;
  for (const auto& [k, pse] : d.probabilities) {
    Json e;
    e["p"] = pse.first;
    e["se"] = pse.second;
    probs[std::to_string(k)] = e;
  }
  j["probabilities"] = probs;
  j["expected_vertices"] = d.expected_vertices;
  j["se_expected"] = d.se_expected;
  return j;
}

inline Json to_json(const XCheckReport& r) {
  Json j;
  j["body"] = r.body;
  j["n_points"] = r.n_points;
  j["seed"] = r.seed;
  j["max_abs_err_cw"] = r.max_abs_err_cw;
  j["max_abs_err_pw"] = r.max_abs_err_pw;
  Json counts;
  for (const auto& [b, c] : r.branch_counts) counts[std::to_string(b)] = c;
  j["branch_counts"] = counts;
  return j;
}

inline Json to_json(const WidthTestReport& r) {
  Json j;
  j["body"] = r.body;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["bins"] = r.bins;
  j["chi2"] = r.chi2;
  j["dof"] = r.dof;
  j["p_value"] = r.p_value;
  j["density_integral"] = r.density_integral;
  j["pass"] = r.pass;
  return j;
}

inline Json to_json(const IdentityTestReport& r) {
  Json j;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["ks_statistic"] = r.ks_statistic;
  j["p_value"] = r.p_value;
  j["verdict"] = r.verdict;
  j["mean_tetra_doubled"] = r.mean_tetra_doubled;
  j["mean_octa"] = r.mean_octa;
  j["mean_diff"] = r.mean_diff;
  j["combined_se"] = r.combined_se;
  return j;
}

}  // namespace shadows
