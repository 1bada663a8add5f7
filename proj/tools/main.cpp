#include "hedonic/benchmarks.hpp"
#include "hedonic/equilibrium.hpp"
#include "hedonic/extensions.hpp"
#include "hedonic/figures.hpp"
#include "hedonic/model.hpp"
#include "hedonic/serialize.hpp"
#include "hedonic/spectral.hpp"
#include "hedonic/welfare.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using hedonic::json;

struct CommonOpts {
  std::string instance_path;
  std::string inline_json;
  std::string out;
  unsigned long long seed = 0;
  double tol = 1e-10;
  bool mirror = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool wants_instance = true) {
  if (wants_instance) {
    cmd->add_option("--instance", o.instance_path, "Path to a JSON instance file");
    cmd->add_option("--inline", o.inline_json, "Instance JSON given directly");
  }
  cmd->add_option("--out", o.out, "Write output here instead of stdout");
  cmd->add_option("--seed", o.seed, "Seed for any randomized checks");
  cmd->add_option("--tol", o.tol, "Validation tolerance override");
  cmd->add_flag("--mirror", o.mirror, "Pick the reflected branch of constructed profiles");
}

hedonic::MarketInstance load(const CommonOpts& o) {
  if (!o.inline_json.empty()) return hedonic::load_instance(o.inline_json, true, o.tol);
  if (!o.instance_path.empty()) return hedonic::load_instance(o.instance_path, false, o.tol);
  throw hedonic::validation_error("need --instance or --inline");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw hedonic::validation_error("cannot open output file: " + o.out);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

void emit(const CommonOpts& o, const json& j) { emit(o, j.dump(2)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium and welfare engine for linear hedonic competition"};
  app.require_subcommand(1);

  CommonOpts common;
  int exit_code = 0;

  auto* planner = app.add_subcommand("planner", "Surplus-maximizing allocation");
  add_common(planner, common);
  planner->callback([&] {
    auto inst = load(common);
    auto r = hedonic::planner_optimum(inst, common.mirror);
    json j = hedonic::to_json(r);
    j["total_surplus"] = hedonic::total_surplus(inst, r.allocation);
    emit(common, j);
  });

  auto* mono = app.add_subcommand("monopoly", "Multiproduct monopoly allocation");
  add_common(mono, common);
  mono->callback([&] {
    auto inst = load(common);
    auto r = hedonic::monopoly_optimum(inst, common.mirror);
    json j = hedonic::to_json(r);
    j["total_surplus"] = hedonic::total_surplus(inst, r.allocation);
    emit(common, j);
  });

  auto* eq = app.add_subcommand("equilibria", "Enumerate all equilibria");
  add_common(eq, common);
  bool run_verify = false;
  eq->add_flag("--verify", run_verify, "Run the sampling deviation check on each record");
  eq->callback([&] {
    auto inst = load(common);
    auto records = hedonic::enumerate_equilibria(inst, common.mirror);
    json arr = json::array();
    for (const auto& r : records) {
      json jr = hedonic::to_json(r);
      jr["total_surplus"] = hedonic::total_surplus(inst, r.allocation);
      if (run_verify) {
        hedonic::VerifyOptions vo;
        vo.seed = common.seed;
        jr["verify"] = hedonic::to_json(hedonic::verify_equilibrium(inst, r.allocation, vo));
      }
      arr.push_back(std::move(jr));
    }
    emit(common, json{{"count", records.size()}, {"records", std::move(arr)}});
  });

  auto* welfare = app.add_subcommand("welfare", "Welfare comparisons across outcomes");
  add_common(welfare, common);
  welfare->callback([&] {
    auto inst = load(common);
    json j;
    j["gamma_variance"] = hedonic::gamma_variance(inst.gamma);

    auto records = hedonic::enumerate_equilibria(inst, common.mirror);
    json recs = json::array();
    for (const auto& r : records) {
      json jr{{"kind", hedonic::kind_name(r.kind)},
              {"total_surplus", hedonic::total_surplus(inst, r.allocation)}};
      if (!r.sigma.empty()) jr["sigma"] = r.sigma;
      if (inst.n >= 2)
        jr["weighted_cosine"] = hedonic::weighted_cosine(inst.gamma, r.allocation.profile);
      recs.push_back(std::move(jr));
    }
    j["records"] = std::move(recs);

    auto d = hedonic::donut_radii(inst.gamma);
    if (d.inner <= 1 + 1e-12 && d.outer >= 2 + inst.alpha - 1e-12)
      j["monopoly_vs_differentiation"] = hedonic::to_json(hedonic::compare_mono_vs_diff(inst));
    if (d.outer <= 1 + 1e-12)
      j["monopoly_vs_concentration"] = hedonic::to_json(hedonic::compare_mono_vs_conc(inst));

    bool have_diff = !records.empty() &&
                     records.front().kind == hedonic::EquilibriumKind::Differentiation;
    if (have_diff) {
      json comps = json::array();
      for (const auto& r : records) {
        if (r.kind != hedonic::EquilibriumKind::SignVector) continue;
        comps.push_back(hedonic::to_json(hedonic::compare_diff_vs_sigma(inst, r.sigma)));
      }
      j["differentiation_vs_sign_vectors"] = std::move(comps);
    }
    emit(common, j);
  });

  auto* net = app.add_subcommand("network", "Outputs under cross-firm complementarities");
  add_common(net, common);
  int terms = 60;
  net->add_option("--terms", terms, "Series terms for the convergence diagnostic");
  net->callback([&] {
    auto inst = load(common);
    auto out = hedonic::network_outputs(inst);
    json j = hedonic::to_json(out);
    double level = 2 + inst.alpha;
    hedonic::Vec series = hedonic::bonacich_series(*inst.network, 1 / level,
                                                   hedonic::Vec(inst.gamma / level), terms);
    j["series_gap"] = (out.q_equilibrium - series).cwiseAbs().maxCoeff();
    j["series_terms"] = terms;
    emit(common, j);
  });

  auto* own = app.add_subcommand("ownership", "Symmetric common-ownership equilibrium");
  add_common(own, common);
  double kappa = 0;
  std::string kappa_grid;
  int fb_trials = 0;
  own->add_option("--kappa", kappa, "Internalization weight in [0, 1]");
  own->add_option("--grid", kappa_grid, "Sweep kappa over lo:hi:points (CSV output)");
  own->add_option("--first-best-trials", fb_trials,
                  "Also probe the first-best allocation against sampled weight matrices");
  own->callback([&] {
    auto inst = load(common);
    if (!kappa_grid.empty()) {
      auto grid = hedonic::GridSpec::parse(kappa_grid);
      std::string csv = "kappa,q,cosine,welfare,boundary\n";
      for (int k = 0; k < grid.points; ++k) {
        double kv = grid.at(k);
        auto e = hedonic::ownership_equilibrium(inst, kv, common.mirror);
        std::string line = hedonic::csv_field(kv);
        line += ',';
        if (e) {
          for (int i = 0; i < inst.n; ++i) {
            if (i) line += ' ';
            line += hedonic::csv_field(e->allocation.output[i]);
          }
          line += ',' + hedonic::csv_field(e->cosine);
          line += ',' + hedonic::csv_field(e->welfare_direct);
          line += std::string(",") + (e->boundary ? "boundary" : "interior");
        } else {
          line += ",,,absent";
        }
        csv += line + '\n';
      }
      emit(common, csv);
      return;
    }
    auto e = hedonic::ownership_equilibrium(inst, kappa, common.mirror);
    if (!e) throw hedonic::existence_error("no symmetric equilibrium at this kappa");
    json j = hedonic::to_json(*e);
    if (fb_trials > 0) {
      auto fb = hedonic::first_best_infeasibility_check(inst, std::nullopt, fb_trials,
                                                        common.seed);
      j["first_best_min_residual"] = fb.min_residual;
      j["first_best_trials"] = fb.trials;
    }
    emit(common, j);
  });

  auto* spec = app.add_subcommand("spectral", "Eigenvalue ranking for fixed-profile markets");
  add_common(spec, common);
  std::string psi_text, sigma_text;
  spec->add_option("--psi", psi_text, "Intercept vector as a JSON array");
  spec->add_option("--sigma", sigma_text, "Quadratic form as JSON rows");
  spec->callback([&] {
    hedonic::SpectralInstance s;
    if (!psi_text.empty() || !sigma_text.empty()) {
      if (psi_text.empty() || sigma_text.empty())
        throw hedonic::validation_error("--psi and --sigma go together");
      json jp = json::parse(psi_text, nullptr, false);
      json js = json::parse(sigma_text, nullptr, false);
      if (jp.is_discarded() || js.is_discarded())
        throw hedonic::validation_error("--psi/--sigma must be valid JSON");
      s.psi = hedonic::vec_from_json(jp, "psi");
      s.sigma = hedonic::mat_from_json(js, "sigma");
      s.validate(common.tol);
    } else if (!common.inline_json.empty() || !common.instance_path.empty()) {
      json j;
      if (!common.inline_json.empty()) {
        j = json::parse(common.inline_json, nullptr, false);
      } else {
        std::ifstream in(common.instance_path);
        if (!in)
          throw hedonic::validation_error("cannot open instance file: " + common.instance_path);
        j = json::parse(in, nullptr, false);
      }
      if (j.is_discarded()) throw hedonic::validation_error("instance is not valid JSON");
      s = hedonic::spectral_from_json(j);
    } else {
      throw hedonic::validation_error("need --psi/--sigma or --instance/--inline");
    }
    emit(common, hedonic::to_json(hedonic::ranking_condition(s)));
  });

  auto* fig = app.add_subcommand("figure", "CSV sweeps behind the standard figures");
  add_common(fig, common, /*wants_instance=*/false);
  std::string fig_name;
  int fig_n = 2;
  double fig_alpha = 1.0;
  std::string fig_grid;
  std::vector<double> fig_gammas{2.0, 3.0, 4.0};
  fig->add_option("name", fig_name, "One of fig4, fig6, fig8, table1")->required();
  fig->add_option("--n", fig_n, "Number of firms");
  fig->add_option("--alpha", fig_alpha, "Utility weight");
  fig->add_option("--grid", fig_grid, "lo:hi:points sweep grid");
  fig->add_option("--gammas", fig_gammas, "Symmetric gamma levels (fig8 only)")
      ->delimiter(',');
  fig->callback([&] {
    std::string csv;
    if (fig_name == "fig4") {
      auto grid = hedonic::GridSpec::parse(fig_grid.empty() ? "0:5:200" : fig_grid);
      csv = hedonic::fig_outputs_csv(fig_n, fig_alpha, grid);
    } else if (fig_name == "fig6") {
      auto grid = hedonic::GridSpec::parse(fig_grid.empty() ? "0:5:200" : fig_grid);
      csv = hedonic::fig_ratios_csv(fig_n, fig_alpha, grid);
    } else if (fig_name == "fig8") {
      auto grid = hedonic::GridSpec::parse(fig_grid.empty() ? "0:1:101" : fig_grid);
      csv = hedonic::fig_ownership_csv(fig_n, fig_alpha, fig_gammas, grid);
    } else if (fig_name == "table1") {
      auto grid = hedonic::GridSpec::parse(fig_grid.empty() ? "0:5:200" : fig_grid);
      csv = hedonic::table_welfare_csv(fig_n, fig_alpha, grid);
    } else {
      throw hedonic::validation_error("unknown figure: " + fig_name);
    }
    emit(common, csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const hedonic::existence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const hedonic::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
