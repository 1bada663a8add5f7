#include "hedonic/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hedonic {

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Vec vec_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw validation_error(std::string(what) + " must be an array");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw validation_error(std::string(what) + " must hold numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Mat mat_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw validation_error(std::string(what) + " must be a nonempty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) throw validation_error(std::string(what) + " rows must be arrays");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) throw validation_error(std::string(what) + " rows must be equal length");
  }
  Mat m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number())
        throw validation_error(std::string(what) + " must hold numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  return m;
}

json to_json(const MarketInstance& inst) {
  json j{{"n", inst.n}, {"m", inst.m}, {"alpha", inst.alpha},
         {"beta", to_json(inst.beta)}, {"gamma", to_json(inst.gamma)}};
  if (inst.network) j["network"] = to_json(*inst.network);
  if (inst.ownership) j["ownership"] = to_json(*inst.ownership);
  return j;
}

MarketInstance instance_from_json(const json& j, double tol) {
  if (!j.is_object()) throw validation_error("instance must be a JSON object");
  for (const char* key : {"alpha", "beta", "gamma"})
    if (!j.contains(key)) throw validation_error(std::string("instance needs field ") + key);

  MarketInstance inst;
  if (!j["alpha"].is_number()) throw validation_error("alpha must be a number");
  inst.alpha = j["alpha"].get<double>();
  inst.beta = vec_from_json(j["beta"], "beta");
  inst.gamma = vec_from_json(j["gamma"], "gamma");
  inst.m = j.contains("m") ? j["m"].get<int>() : static_cast<int>(inst.beta.size());
  inst.n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(inst.gamma.size());
  if (j.contains("network")) inst.network = mat_from_json(j["network"], "network");
  if (j.contains("ownership")) inst.ownership = mat_from_json(j["ownership"], "ownership");
  inst.validate(tol);
  return inst;
}

MarketInstance load_instance(const std::string& path_or_inline, bool is_inline, double tol) {
  json j;
  try {
    if (is_inline) {
      j = json::parse(path_or_inline);
    } else {
      std::ifstream in(path_or_inline);
      if (!in) throw validation_error("cannot open instance file: " + path_or_inline);
      j = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j, tol);
}

json to_json(const CharProfile& profile) { return to_json(profile.columns); }

json to_json(const Allocation& alloc) {
  return json{{"profile", to_json(alloc.profile)},
              {"output", to_json(alloc.output)},
              {"aggregate", to_json(alloc.aggregate)}};
}

json to_json(const BenchmarkResult& r) {
  return json{{"regime", regime_name(r.regime)},
              {"q", to_json(r.q)},
              {"rho", r.rho},
              {"allocation", to_json(r.allocation)},
              {"welfare", r.welfare}};
}

json to_json(const EquilibriumRecord& r) {
  json j{{"kind", kind_name(r.kind)},
         {"allocation", to_json(r.allocation)},
         {"markups", to_json(r.markups)},
         {"profits", to_json(r.profits)},
         {"boundary", r.boundary},
         {"output_floor_violation", r.output_floor_violation},
         {"alignment_residual", r.alignment_residual}};
  if (r.kind == EquilibriumKind::SignVector) {
    j["sigma"] = r.sigma;
    j["phi"] = r.phi;
  }
  return j;
}

json to_json(const VerifyReport& r) {
  return json{{"output_floor_violation", r.output_floor_violation},
              {"alignment_residual", r.alignment_residual},
              {"worst_deviation_gain", r.worst_deviation_gain},
              {"accepted", r.accepted}};
}

json to_json(const WelfareComparison& c) {
  return json{{"left", c.left_label},
              {"right", c.right_label},
              {"left_welfare", c.left_welfare},
              {"right_welfare", c.right_welfare},
              {"prediction_made", c.prediction_made},
              {"predicted_sign", c.predicted_sign},
              {"observed_sign", c.observed_sign},
              {"agreement", c.agreement},
              {"notes", c.notes}};
}

json to_json(const NetworkOutputs& o) {
  return json{{"q_planner", to_json(o.q_planner)},
              {"q_monopoly", to_json(o.q_monopoly)},
              {"q_equilibrium", to_json(o.q_equilibrium)},
              {"planner_interior", o.planner_interior},
              {"monopoly_interior", o.monopoly_interior},
              {"equilibrium_exists", o.equilibrium_exists}};
}

json to_json(const OwnershipEquilibrium& e) {
  return json{{"kappa", e.kappa},
              {"allocation", to_json(e.allocation)},
              {"aggregate_target", to_json(e.aggregate_target)},
              {"cosine", e.cosine},
              {"welfare_closed_form", e.welfare_closed_form},
              {"welfare_direct", e.welfare_direct},
              {"boundary", e.boundary}};
}

json to_json(const SpectralReport& r) {
  return json{{"eigenvalues", to_json(r.eigenvalues)},
              {"eigenvectors", to_json(r.eigenvectors)},
              {"major_count", r.major_count},
              {"weights", to_json(r.weights)},
              {"projections_sq", to_json(r.projections_sq)},
              {"q_planner", to_json(r.outputs.q_planner)},
              {"q_monopoly", to_json(r.outputs.q_monopoly)},
              {"q_equilibrium", to_json(r.outputs.q_equilibrium)},
              {"welfare_planner", r.welfares.planner},
              {"welfare_monopoly", r.welfares.monopoly},
              {"welfare_equilibrium", r.welfares.equilibrium},
              {"verdict", ranking_name(r.verdict)},
              {"identity_gap", r.identity_gap}};
}

SpectralInstance spectral_from_json(const json& j) {
  if (!j.is_object() || !j.contains("psi") || !j.contains("sigma"))
    throw validation_error("spectral instance needs psi and sigma");
  SpectralInstance s;
  s.psi = vec_from_json(j["psi"], "psi");
  s.sigma = mat_from_json(j["sigma"], "sigma");
  s.validate();
  return s;
}

std::string csv_field(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace hedonic
