#include "hedonic/figures.hpp"

#include "hedonic/extensions.hpp"
#include "hedonic/serialize.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

namespace hedonic {

double GridSpec::at(int k) const {
  if (points <= 1) return lo;
  return lo + (hi - lo) * (static_cast<double>(k) / (points - 1));
}

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.points) || colon1 != ':' ||
      colon2 != ':' || !in.eof())
    throw validation_error("grid must look like lo:hi:points");
  if (g.points < 1) throw validation_error("grid needs at least one point");
  if (g.hi < g.lo) throw validation_error("grid upper end must not be below the lower end");
  return g;
}

int worker_count() {
  if (const char* env = std::getenv("HEDONIC_EQ_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace {

// Runs job(k) for k in [0, count) across the worker pool; results land in
// index order because each job writes only its own slot.
void parallel_for(int count, const std::function<void(int)>& job) {
  int workers = std::min(worker_count(), std::max(1, count));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) job(k);
    });
  }
  for (auto& t : pool) t.join();
}

void append_cell(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += csv_field(*v);
}

}  // namespace

std::vector<SymmetricRow> symmetric_sweep(int n, double alpha, const GridSpec& grid) {
  std::vector<SymmetricRow> rows(grid.points);
  parallel_for(grid.points,
               [&](int k) { rows[k] = symmetric_welfare_row(n, alpha, grid.at(k)); });
  return rows;
}

std::string fig_outputs_csv(int n, double alpha, const GridSpec& grid) {
  auto rows = symmetric_sweep(n, alpha, grid);
  std::string out = "gamma,q_monopoly,q_diff,q_conc,q_polar_high,q_polar_low\n";
  for (const auto& r : rows) {
    std::string line = csv_field(r.gamma);
    line += ',';
    line += csv_field(r.q_monopoly);
    append_cell(line, r.q_diff);
    append_cell(line, r.q_conc);
    append_cell(line, r.q_polar_high);
    append_cell(line, r.q_polar_low);
    out += line;
    out += '\n';
  }
  return out;
}

std::string fig_ratios_csv(int n, double alpha, const GridSpec& grid) {
  auto rows = symmetric_sweep(n, alpha, grid);
  std::string out = "gamma,monopoly_ratio,diff_ratio,conc_ratio,polar_ratio\n";
  for (const auto& r : rows) {
    std::string line = csv_field(r.gamma);
    line += ',';
    line += csv_field(r.omega_monopoly / r.omega_planner);
    auto ratio = [&](const std::optional<double>& v) {
      return v ? std::optional<double>(*v / r.omega_planner) : std::nullopt;
    };
    append_cell(line, ratio(r.omega_diff));
    append_cell(line, ratio(r.omega_conc));
    append_cell(line, ratio(r.omega_polar));
    out += line;
    out += '\n';
  }
  return out;
}

std::string fig_ownership_csv(int n, double alpha, const std::vector<double>& gammas,
                              const GridSpec& kappa_grid) {
  if (gammas.empty()) throw validation_error("need at least one gamma level");
  std::string out = "kappa";
  for (double g : gammas) out += ",omega_gamma_" + csv_field(g);
  out += '\n';

  std::vector<std::string> lines(kappa_grid.points);
  parallel_for(kappa_grid.points, [&](int k) {
    double kappa = kappa_grid.at(k);
    std::string line = csv_field(kappa);
    for (double g : gammas) {
      MarketInstance inst;
      inst.n = n;
      inst.m = 2;
      inst.alpha = alpha;
      inst.beta = Vec::Zero(2);
      inst.beta[0] = 1;
      inst.gamma = Vec::Constant(n, g);
      // Cell is present only where the symmetric equilibrium exists.
      auto d = donut_radii(inst.gamma);
      double pivot = (2 + alpha * (1 - kappa)) / (1 + kappa);
      line += ',';
      if (d.inner <= pivot + 1e-12 && d.outer >= pivot - 1e-12)
        line += csv_field(ownership_welfare_closed_form(inst, kappa));
    }
    lines[k] = line;
  });
  for (auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string table_welfare_csv(int n, double alpha, const GridSpec& grid) {
  auto rows = symmetric_sweep(n, alpha, grid);
  std::string out =
      "gamma,planner_regime,omega_planner,omega_monopoly,omega_diff,omega_conc,"
      "omega_polar,q_monopoly,q_diff,q_conc,q_polar_high,q_polar_low\n";
  for (const auto& r : rows) {
    std::string line = csv_field(r.gamma);
    line += ',';
    line += n * r.gamma < 1 - 1e-12 ? "concentration" : "differentiation";
    line += ',';
    line += csv_field(r.omega_planner);
    line += ',';
    line += csv_field(r.omega_monopoly);
    append_cell(line, r.omega_diff);
    append_cell(line, r.omega_conc);
    append_cell(line, r.omega_polar);
    line += ',';
    line += csv_field(r.q_monopoly);
    append_cell(line, r.q_diff);
    append_cell(line, r.q_conc);
    append_cell(line, r.q_polar_high);
    append_cell(line, r.q_polar_low);
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace hedonic
