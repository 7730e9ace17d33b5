#include "fermipulse/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fermipulse/constants.hpp"
#include "fermipulse/coulomb.hpp"
#include "fermipulse/degeneracy.hpp"
#include "fermipulse/detection.hpp"

namespace fermipulse {

namespace {

using constants::electron_mass;
using constants::hbar;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

double pair_mean_k(const SourceEnsemble& ens) {
  return 0.5 * (ens.two_el.a().k0()[0] + ens.two_el.b().k0()[0]);
}

Table degeneracy_table(int n, const RunConfig& cfg) {
  const auto ens = make_ensemble(cfg.source);
  const auto det = make_detector(cfg.source, ens.one_el.dk());
  TwoElectronOptions opt;
  opt.interference_scale = cfg.interference_scale;
  Table t;
  t.xlabel = "t (s)";
  t.ylabel = "degeneracy";
  t.columns.push_back({"t_s", "s"});
  switch (n) {
    case 1:
      t.title = "one-electron 3D degeneracy at the detector";
      t.columns.push_back({"d1_3d", "1"});
      break;
    case 2:
      t.title = "symmetric and antisymmetric two-electron 3D degeneracy";
      t.columns.push_back({"d2_sym_3d", "1"});
      t.columns.push_back({"d2_antisym_3d", "1"});
      break;
    case 3:
      t.title = "total two-electron 3D degeneracy";
      t.columns.push_back({"d2_total_3d", "1"});
      break;
    default:
      t.title = "total degeneracy p1 d1 + p2 d2";
      t.columns.push_back({"d1_3d", "1"});
      t.columns.push_back({"d2_total_3d", "1"});
      t.columns.push_back({"d_total", "1"});
      break;
  }
  for (double time : figure_time_grid(cfg)) {
    std::vector<double> row{time};
    switch (n) {
      case 1:
        row.push_back(delta1_3d(det, ens.one_el, time));
        break;
      case 2:
        row.push_back(delta2_3d(Symmetry::Symmetric, det, ens.two_el, time, opt));
        row.push_back(delta2_3d(Symmetry::Antisymmetric, det, ens.two_el, time, opt));
        break;
      case 3:
        row.push_back(delta2_total_3d(det, ens.two_el, time, opt));
        break;
      default: {
        const auto b = delta_total(ens, det, time, opt);
        row.push_back(b.d1_3d);
        row.push_back(b.d2_total_3d);
        row.push_back(b.d_total);
        break;
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig5_table(const RunConfig& cfg) {
  const auto ens = make_ensemble(cfg.source);
  const PairAxis pair = ens.two_el.axis(0);
  const double x1 = cfg.source.detector_x_m;
  const double time = fig5_time(cfg);
  double lo = cfg.x_min_m;
  double hi = cfg.x_max_m;
  if (std::isnan(lo)) {
    const double sigma = 1.0 / (2.0 * pair.dk * std::sqrt(alpha(time, pair.dk)));
    lo = x1 - 8.0 * sigma;
    hi = x1 + 8.0 * sigma;
  }
  Table t;
  t.id = "fig5";
  t.title = "joint detection density, first detector fixed, equal times";
  t.xlabel = "x2 (m)";
  t.ylabel = "joint density (1/m^2)";
  t.columns = {{"x2_m", "m"},         {"P_sym", "1/m^2"},      {"P_antisym", "1/m^2"},
               {"P_total", "1/m^2"},  {"envelope", "1/m^2"},   {"correlation", "1"}};
  const PacketAxis a{pair.ka, pair.dk};
  const PacketAxis b{pair.kb, pair.dk};
  for (double x2 : linspace(lo, hi, cfg.n_x)) {
    const auto j = joint_density(pair, x1, time, x2, time);
    const double env = 0.5 * (p1_density(a, x1, time) * p1_density(b, x2, time) +
                              p1_density(b, x1, time) * p1_density(a, x2, time));
    t.rows.push_back({x2, j.sym, j.antisym, j.total, env, env > 0.0 ? j.total / env : 0.0});
  }
  return t;
}

Table fig6_table(const RunConfig& cfg) {
  const auto ens = make_ensemble(cfg.source);
  const auto sc = pair_scenario(ens, cfg.source.detector_x_m);
  double x_max = cfg.fig6_x_max_m;
  if (std::isnan(x_max)) {
    x_max = separation_at_detector(sc);
  }
  Table t;
  t.id = "fig6";
  t.title = "relative momentum against relative coordinate";
  t.xlabel = "x (m)";
  t.ylabel = "p / hbar (1/m)";
  t.log_x = true;
  t.columns = {{"x_m", "m"}, {"p_rel", "kg m/s"}, {"p_over_hbar", "1/m"}, {"p_over_p0", "1"}};
  for (const auto& pt : momentum_curve(sc, x_max, cfg.fig6_n)) {
    t.rows.push_back({pt.x, pt.p, pt.p / hbar, sc.p0_rel > 0.0 ? pt.p / sc.p0_rel : kNaN});
  }
  return t;
}

ScalarResult make_scalar(std::string name, std::string unit, double value, double reference, double lo,
                         double hi) {
  const bool pass = value >= lo && value <= hi;
  return {std::move(name), std::move(unit), value, reference, lo, hi, pass ? "PASS" : "FAIL"};
}

ScalarResult relative(std::string name, std::string unit, double value, double reference, double tol) {
  return make_scalar(std::move(name), std::move(unit), value, reference, reference * (1.0 - tol),
                     reference * (1.0 + tol));
}

ScalarResult info(std::string name, std::string unit, double value) {
  return {std::move(name), std::move(unit), value, kNaN, kNaN, kNaN, "INFO"};
}

ScalarResult skipped(std::string name, std::string unit) {
  return {std::move(name), std::move(unit), 0.0, kNaN, kNaN, kNaN, "SKIP"};
}

}  // namespace

void write_csv(const Table& table, const RunConfig& cfg, std::ostream& out) {
  out << "# fermipulse " << FERMIPULSE_VERSION << " config_hash=" << config_hash(cfg) << '\n';
  out << "# " << table.id << ": " << table.title << '\n';
  out << "# units:";
  for (const auto& c : table.columns) {
    out << ' ' << c.name << '=' << c.unit;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i].name;
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << num(row[i]);
    }
    out << '\n';
  }
}

std::string plot_script(const Table& table, const std::string& csv_name) {
  std::ostringstream s;
  s << "# gnuplot script for " << csv_name << '\n';
  s << "set datafile separator ','\n";
  s << "set datafile commentschars '#'\n";
  s << "set key autotitle columnhead\n";
  s << "set title '" << table.title << "'\n";
  s << "set xlabel '" << table.xlabel << "'\n";
  s << "set ylabel '" << table.ylabel << "'\n";
  if (table.log_x) {
    s << "set logscale x\n";
  }
  s << "plot ";
  std::size_t last = table.columns.size();
  if (table.id == "fig5") {
    last = 5;  // densities only; the correlation column has other units
  } else if (table.id == "fig6") {
    last = 3;
  }
  for (std::size_t c = 2; c <= last; ++c) {
    if (table.id == "fig6" && c == 2) {
      continue;
    }
    s << (c > 2 && !(table.id == "fig6" && c == 3) ? ", \\\n     " : "") << "'" << csv_name << "' using 1:" << c
      << " with lines";
  }
  s << '\n';
  return s.str();
}

std::vector<double> figure_time_grid(const RunConfig& cfg) {
  if (!std::isnan(cfg.t_min_s)) {
    return linspace(cfg.t_min_s, cfg.t_max_s, cfg.n_t);
  }
  const auto ens = make_ensemble(cfg.source);
  return transit_time_grid(cfg.source.detector_x_m, ens.one_el.k0()[0], ens.one_el.dk(), cfg.n_t);
}

double fig5_time(const RunConfig& cfg) {
  if (!std::isnan(cfg.fig5_t_s)) {
    return cfg.fig5_t_s;
  }
  return arrival_time(cfg.source.detector_x_m, pair_mean_k(make_ensemble(cfg.source)));
}

Table figure_table(int n, const RunConfig& cfg) {
  if (n >= 1 && n <= 4) {
    Table t = degeneracy_table(n, cfg);
    t.id = "fig" + std::to_string(n);
    return t;
  }
  if (n == 5) {
    return fig5_table(cfg);
  }
  if (n == 6) {
    return fig6_table(cfg);
  }
  throw std::invalid_argument("figure number must be 1..6");
}

std::vector<ScalarResult> compute_scalars(const RunConfig& cfg) {
  const auto ens = make_ensemble(cfg.source);
  const double dk = ens.one_el.dk();
  const auto det = make_detector(cfg.source, dk);
  TwoElectronOptions opt;
  opt.interference_scale = cfg.interference_scale;
  std::vector<ScalarResult> out;

  const auto src = delta_total(ens, source_window(dk), 0.0, opt);
  out.push_back(relative("source_degeneracy", "1", src.d_total, 0.2, 0.15));

  if (ens.p1 > 0.0) {
    const auto peak = peak_delta1_3d(det, ens.one_el);
    out.push_back(relative("detector_peak_d1_3d", "1", peak.value, 1.55e-14, 0.10));
    out.push_back(relative("detector_peak_time", "s", peak.t, 8.43e-9, 0.005));
  } else {
    out.push_back(skipped("detector_peak_d1_3d", "1"));
    out.push_back(skipped("detector_peak_time", "s"));
  }

  if (ens.p2 > 0.0) {
    const auto grid = figure_time_grid(cfg);
    std::vector<double> v;
    v.reserve(grid.size());
    for (double t : grid) {
      v.push_back(delta2_total_3d(det, ens.two_el, t, opt));
    }
    const auto dip = analyze_dip(grid, v);
    if (dip.found) {
      out.push_back(make_scalar("dip_fwhm", "s", dip.fwhm, kNaN, 5e-12, 100e-12));
      out.push_back(info("dip_maxima_separation", "s", dip.maxima_separation));
    } else {
      out.push_back({"dip_fwhm", "s", 0.0, kNaN, 5e-12, 100e-12, "FAIL"});
    }
  } else {
    out.push_back(skipped("dip_fwhm", "s"));
  }

  const auto sc = pair_scenario(ens, cfg.source.detector_x_m);
  const auto tr = integrate_relative_motion(sc);
  out.push_back(relative("coulomb_x0", "m", sc.x0_rel, 5.52e-9, 0.01));
  out.push_back(make_scalar("coulomb_pt_over_p0", "1", terminal_momentum(sc) / sc.p0_rel, 9.0, 8.5, 9.5));
  out.push_back(relative("coulomb_x_det", "m", tr.x_det, 5.77e-4, 0.02));
  out.push_back(relative("coulomb_x0_over_x_det", "1", sc.x0_rel / tr.x_det, 0.95e-5, 0.05));
  out.push_back(relative("dispersion_ratio", "1", dispersion_ratio(dk, tr.t_det), 3.1e-5, 0.05));
  const auto pc = pancake_comparison(sc, dk, cfg.transverse_factor);
  out.push_back(relative("pancake_r0", "m", pc.r0, 5.55e-8, 0.01));
  out.push_back(relative("pancake_quantum_ratio", "1", pc.quantum_ratio, 9.75e-8, 0.05));
  out.push_back(relative("pancake_coulomb_ratio", "1", pc.coulomb_ratio, 9.35e-8, 0.05));
  out.push_back(info("coulomb_t_det", "s", tr.t_det));
  return out;
}

void write_scalars(const std::vector<ScalarResult>& scalars, const RunConfig& cfg, std::ostream& out) {
  out << "# fermipulse " << FERMIPULSE_VERSION << " config_hash=" << config_hash(cfg) << '\n';
  out << "name,unit,value,reference,accept_lo,accept_hi,status\n";
  for (const auto& s : scalars) {
    out << s.name << ',' << s.unit << ',' << num(s.value) << ',' << (std::isnan(s.reference) ? "" : num(s.reference))
        << ',' << (std::isnan(s.lo) ? "" : num(s.lo)) << ',' << (std::isnan(s.hi) ? "" : num(s.hi)) << ','
        << s.status << '\n';
  }
}

}  // namespace fermipulse
