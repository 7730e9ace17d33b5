#include "fermipulse/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "json.hpp"

#include "fermipulse/constants.hpp"
#include "fermipulse/coulomb.hpp"
#include "fermipulse/degeneracy.hpp"
#include "fermipulse/detection.hpp"
#include "fermipulse/kernels.hpp"
#include "fermipulse/oracle.hpp"
#include "fermipulse/quadrature.hpp"
#include "fermipulse/report.hpp"

namespace fermipulse {

namespace {

using constants::electron_mass;
using constants::hbar;

constexpr double kRelTol = 1e-7;
constexpr double kAbsFloor = 1e-12;
constexpr double kPauliTol = 1e-18;
constexpr double kNormTol = 1e-8;

struct Sample {
  DetectorWindow win;
  double t;
};

class Tally {
 public:
  explicit Tally(CheckResult& r) : r_(r) {}

  void add(double got, double want, double where) {
    const double err = std::abs(got - want);
    const double tol = std::max(r_.rel_tol * std::abs(want), r_.abs_floor);
    ++r_.points;
    r_.max_abs_err = std::max(r_.max_abs_err, err);
    if (std::abs(want) > r_.abs_floor) {
      r_.max_rel_err = std::max(r_.max_rel_err, err / std::abs(want));
    }
    const double excess = std::isfinite(got) ? err / tol : std::numeric_limits<double>::infinity();
    if (excess > worst_) {
      worst_ = excess;
      r_.worst_at = where;
    }
    if (!(excess <= 1.0)) {
      ok_ = false;
    }
  }

  bool ok() const { return ok_ && r_.points > 0; }

 private:
  CheckResult& r_;
  double worst_ = -1.0;
  bool ok_ = true;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? 0.5 * (a + b) : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

class Suite {
 public:
  Suite(const RunConfig& cfg, const ValidateOptions& opt)
      : cfg_(cfg),
        opt_(opt),
        ens_(make_ensemble(cfg.source)),
        dk_(ens_.one_el.dk()),
        det_(make_detector(cfg.source, dk_)),
        spec_(cfg.quadrature_spec()) {
    topt_.interference_scale = cfg.interference_scale;
    samples_.push_back({source_window(dk_), 0.0});
    const auto grid = figure_time_grid(cfg);
    const std::size_t n = std::max<std::size_t>(opt.sweep_points, 1);
    for (std::size_t i = 0; i < n; ++i) {
      // Interior samples of the figure grid, always including its centre.
      const std::size_t idx = (grid.size() - 1) * (2 * i + 1) / (2 * n);
      samples_.push_back({det_, grid[idx]});
    }
    pair0_ = ens_.two_el.axis(0);
  }

  void run(const std::string& name, std::vector<CheckResult>& out) {
    CheckResult r;
    r.name = name;
    r.rel_tol = kRelTol;
    r.abs_floor = kAbsFloor;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.passed = dispatch(name, r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }

 private:
  bool dispatch(const std::string& name, CheckResult& r) {
    if (name == "fig1_delta1_axis") return fig1_axis(r);
    if (name == "fig1_delta1_3d") return fig1_3d(r);
    if (name == "fig2_delta2_axis") return fig2_axis(r);
    if (name == "fig2_delta2_sym_3d") return fig2_3d(r, Symmetry::Symmetric);
    if (name == "fig2_delta2_antisym_3d") return fig2_3d(r, Symmetry::Antisymmetric);
    if (name == "fig3_delta2_total_3d") return fig3(r);
    if (name == "fig4_d_total") return fig4(r);
    if (name == "fig5_joint_density") return fig5(r);
    if (name == "fig6_momentum") return fig6(r);
    if (name == "p1_density") return p1(r);
    if (name == "joint_density_t0") return joint_t0(r);
    if (name == "marginal_density") return marginal(r);
    if (name == "overlap") return overlap_check(r);
    if (name == "erf_complex") return erf_check(r);
    if (name == "pauli_zero") return pauli(r);
    if (name == "normalization") return norm(r);
    throw std::invalid_argument("unknown check " + name);
  }

  const std::vector<double>& oracle_d1() {
    if (!d1_) {
      d1_.emplace();
      for (const auto& s : samples_) {
        d1_->push_back(oracle::quadrature_density(s.win, ens_.one_el, s.t, spec_));
      }
    }
    return *d1_;
  }

  const std::vector<oracle::Degeneracy2>& oracle_d2() {
    if (!d2_) {
      d2_.emplace();
      for (const auto& s : samples_) {
        d2_->push_back(oracle::quadrature_degeneracy2(s.win, ens_.two_el, s.t, spec_));
      }
    }
    return *d2_;
  }

  bool fig1_axis(CheckResult& r) {
    Tally tally(r);
    const double k0 = ens_.one_el.k0()[0];
    for (const auto& s : samples_) {
      tally.add(delta1_axis(s.win.lo(0), s.win.hi(0), k0, dk_, s.t),
                oracle::quadrature_density(s.win.lo(0), s.win.hi(0), k0, dk_, s.t, spec_), s.t);
    }
    return tally.ok();
  }

  bool fig1_3d(CheckResult& r) {
    Tally tally(r);
    const auto& o = oracle_d1();
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      tally.add(delta1_3d(samples_[i].win, ens_.one_el, samples_[i].t), o[i], samples_[i].t);
    }
    return tally.ok();
  }

  bool fig2_axis(CheckResult& r) {
    Tally tally(r);
    for (const auto& s : samples_) {
      for (auto sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
        tally.add(delta2_axis(sym, s.win.lo(0), s.win.hi(0), pair0_, s.t, topt_),
                  oracle::quadrature_density2(sym, s.win.lo(0), s.win.hi(0), pair0_, s.t, spec_), s.t);
      }
    }
    return tally.ok();
  }

  bool fig2_3d(CheckResult& r, Symmetry sym) {
    Tally tally(r);
    const auto& o = oracle_d2();
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const auto& s = samples_[i];
      const double want = sym == Symmetry::Symmetric ? o[i].sym : o[i].antisym;
      tally.add(delta2_3d(sym, s.win, ens_.two_el, s.t, topt_), want, s.t);
    }
    return tally.ok();
  }

  bool fig3(CheckResult& r) {
    Tally tally(r);
    const auto& o = oracle_d2();
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const auto& s = samples_[i];
      tally.add(delta2_total_3d(s.win, ens_.two_el, s.t, topt_), 0.25 * o[i].sym + 0.75 * o[i].antisym, s.t);
    }
    return tally.ok();
  }

  bool fig4(CheckResult& r) {
    Tally tally(r);
    const auto& o1 = oracle_d1();
    const auto& o2 = oracle_d2();
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const auto& s = samples_[i];
      const double want = ens_.p1 * o1[i] + ens_.p2 * (0.25 * o2[i].sym + 0.75 * o2[i].antisym);
      tally.add(delta_total(ens_, s.win, s.t, topt_).d_total, want, s.t);
    }
    return tally.ok();
  }

  double fig5_peak(double t) const {
    const double p = p1_density({pair0_.ka, dk_}, hbar * pair0_.ka * t / electron_mass, t);
    return p * p;
  }

  bool fig5(CheckResult& r) {
    const auto table = figure_table(5, [&] {
      RunConfig c = cfg_;
      c.n_x = std::max<std::size_t>(opt_.fig5_points, 2);
      return c;
    }());
    const double t = fig5_time(cfg_);
    const double x1 = cfg_.source.detector_x_m;
    r.abs_floor = kAbsFloor * fig5_peak(t);
    Tally tally(r);
    for (const auto& row : table.rows) {
      const double x2 = row[0];
      tally.add(row[1], oracle::quadrature_density2(Symmetry::Symmetric, pair0_, x1, t, x2, t, spec_), x2);
      tally.add(row[2], oracle::quadrature_density2(Symmetry::Antisymmetric, pair0_, x1, t, x2, t, spec_), x2);
    }
    return tally.ok();
  }

  bool fig6(CheckResult& r) {
    Tally tally(r);
    const auto base = pair_scenario(ens_, cfg_.source.detector_x_m);
    for (double f : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
      auto sc = base;
      sc.L_detector = base.L_detector * f;
      const auto tr = integrate_relative_motion(sc);
      tally.add(tr.p_det / sc.p0_rel, relative_momentum(sc, tr.x_det) / sc.p0_rel, tr.x_det);
    }
    return tally.ok();
  }

  bool p1(CheckResult& r) {
    const double k0 = ens_.one_el.k0()[0];
    const double t1 = fig5_time(cfg_);
    const std::size_t half = std::max<std::size_t>(opt_.density_points / 2, 1);
    double floor = 0.0;
    for (double t : {0.0, t1}) {
      floor = std::max(floor, p1_density({k0, dk_}, hbar * k0 * t / electron_mass, t));
    }
    r.abs_floor = kAbsFloor * floor;
    Tally tally(r);
    for (double t : {0.0, t1}) {
      const double centre = hbar * k0 * t / electron_mass;
      const double sigma = 1.0 / (2.0 * dk_ * std::sqrt(alpha(t, dk_)));
      for (double x : linspace(centre - 6.0 * sigma, centre + 6.0 * sigma, half)) {
        tally.add(p1_density({k0, dk_}, x, t), std::norm(oracle::quadrature_envelope(k0, dk_, x, t, spec_)), x);
      }
    }
    return tally.ok();
  }

  bool joint_t0(CheckResult& r) {
    r.abs_floor = kAbsFloor * fig5_peak(0.0);
    Tally tally(r);
    const double sigma = 1.0 / (2.0 * dk_);
    const auto xs = linspace(-3.0 * sigma, 3.0 * sigma, 15);
    for (double x1 : xs) {
      for (double x2 : xs) {
        const auto j = joint_density_t0(pair0_, x1, x2);
        tally.add(j.sym, oracle::quadrature_density2(Symmetry::Symmetric, pair0_, x1, 0.0, x2, 0.0, spec_), x1);
        tally.add(j.antisym, oracle::quadrature_density2(Symmetry::Antisymmetric, pair0_, x1, 0.0, x2, 0.0, spec_),
                  x1);
      }
    }
    return tally.ok();
  }

  bool marginal(CheckResult& r) {
    r.abs_floor = kAbsFloor * p1_density({pair0_.ka, dk_}, 0.0, 0.0);
    Tally tally(r);
    const double sigma = 1.0 / (2.0 * dk_);
    quadrature::AdaptiveOptions aopt;
    aopt.rel_tol = 1e-12;
    for (double x : linspace(-4.0 * sigma, 4.0 * sigma, 101)) {
      const auto m = marginal_density(pair0_, x);
      const auto integral = quadrature::integrate_adaptive<std::array<double, 2>>(
          [&](double y) {
            const auto j = joint_density_t0(pair0_, x, y);
            return std::array<double, 2>{j.sym, j.antisym};
          },
          -12.0 * sigma, 12.0 * sigma, aopt);
      tally.add(m.sym, integral[0], x);
      tally.add(m.antisym, integral[1], x);
    }
    return tally.ok();
  }

  bool overlap_check(CheckResult& r) {
    Tally tally(r);
    tally.add(overlap(ens_.two_el), oracle::quadrature_overlap(ens_.two_el, spec_), 0.0);
    for (double off : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double ka = ens_.one_el.k0()[0];
      const double kb = ka - off * dk_;
      const double closed = std::exp(-(ka - kb) * (ka - kb) / (8.0 * dk_ * dk_));
      tally.add(closed, oracle::quadrature_overlap_axis(ka, kb, dk_, spec_), off);
    }
    return tally.ok();
  }

  bool erf_check(CheckResult& r) {
    Tally tally(r);
    // erf(z) = (2 / sqrt(pi)) int_0^1 z exp(-s^2 z^2) ds
    auto reference = [](Complex z) {
      const Complex v = quadrature::integrate_composite<Complex>(
          [&](double s) { return z * std::exp(-s * s * z * z); }, 0.0, 1.0, 64, 16);
      return v * (2.0 / std::sqrt(constants::pi));
    };
    std::vector<Complex> args;
    for (const auto& s : samples_) {
      for (double x : {s.win.lo(0), s.win.hi(0)}) {
        args.push_back(xi2(x, s.t, pair0_.ka, pair0_.kb, dk_));
        args.push_back(theta2(x, s.t, pair0_.ka, pair0_.kb, dk_));
      }
    }
    for (double re : linspace(-3.0, 3.0, 7)) {
      for (double im : linspace(-1.5, 1.5, 7)) {
        args.emplace_back(re, im);
      }
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Complex want = reference(args[i]);
      const Complex got = erf_complex(args[i]);
      tally.add(got.real(), want.real(), static_cast<double>(i));
      tally.add(got.imag(), want.imag(), static_cast<double>(i));
    }
    return tally.ok();
  }

  bool pauli(CheckResult& r) {
    r.rel_tol = 0.0;
    r.abs_floor = kPauliTol;
    Tally tally(r);
    const double sigma0 = 1.0 / (2.0 * dk_);
    for (double x : linspace(-4.0 * sigma0, 4.0 * sigma0, 41)) {
      tally.add(joint_density_t0(pair0_, x, x).antisym, 0.0, x);
    }
    for (double x : linspace(-2.0 * sigma0, 2.0 * sigma0, 5)) {
      tally.add(oracle::quadrature_density2(Symmetry::Antisymmetric, pair0_, x, 0.0, x, 0.0, spec_), 0.0, x);
    }
    const double t = fig5_time(cfg_);
    const double centre = hbar * 0.5 * (pair0_.ka + pair0_.kb) * t / electron_mass;
    const double sigma = 1.0 / (2.0 * dk_ * std::sqrt(alpha(t, dk_)));
    for (double x : linspace(centre - 4.0 * sigma, centre + 4.0 * sigma, 21)) {
      tally.add(joint_density(pair0_, x, t, x, t).antisym, 0.0, x);
    }
    for (double x : linspace(centre - sigma, centre + sigma, 3)) {
      tally.add(oracle::quadrature_density2(Symmetry::Antisymmetric, pair0_, x, t, x, t, spec_), 0.0, x);
    }
    return tally.ok();
  }

  bool norm(CheckResult& r) {
    r.rel_tol = 0.0;
    r.abs_floor = kNormTol;
    Tally tally(r);
    quadrature::AdaptiveOptions aopt;
    aopt.rel_tol = 1e-12;
    const double k0 = ens_.one_el.k0()[0];
    for (double t : {0.0, fig5_time(cfg_)}) {
      const double centre = hbar * k0 * t / electron_mass;
      const double sigma = 1.0 / (2.0 * dk_ * std::sqrt(alpha(t, dk_)));
      tally.add(quadrature::integrate_adaptive<double>([&](double x) { return p1_density({k0, dk_}, x, t); },
                                                       centre - 12.0 * sigma, centre + 12.0 * sigma, aopt),
                1.0, t);
    }
    const double s0 = 12.0 / (2.0 * dk_);
    quadrature::AdaptiveOptions inner = aopt;
    inner.rel_tol = 1e-11;
    const auto joint = quadrature::integrate_adaptive<std::array<double, 2>>(
        [&](double x) {
          return quadrature::integrate_adaptive<std::array<double, 2>>(
              [&](double y) {
                const auto j = joint_density_t0(pair0_, x, y);
                return std::array<double, 2>{j.sym, j.antisym};
              },
              -s0, s0, inner);
        },
        -s0, s0, aopt);
    tally.add(joint[0], 1.0, 1.0);
    tally.add(joint[1], 1.0, 2.0);
    const auto marg = quadrature::integrate_adaptive<std::array<double, 3>>(
        [&](double x) {
          const auto m = marginal_density(pair0_, x);
          return std::array<double, 3>{m.sym, m.antisym, m.total};
        },
        -s0, s0, aopt);
    tally.add(marg[0], 1.0, 3.0);
    tally.add(marg[1], 1.0, 4.0);
    tally.add(marg[2], 1.0, 5.0);
    for (double t : {0.0, 1e-12}) {
      tally.add(oracle::quadrature_total_mass(k0, dk_, t, spec_), 1.0, t);
    }
    return tally.ok();
  }

  RunConfig cfg_;
  ValidateOptions opt_;
  SourceEnsemble ens_;
  double dk_;
  DetectorWindow det_;
  oracle::QuadratureSpec spec_;
  TwoElectronOptions topt_;
  PairAxis pair0_{};
  std::vector<Sample> samples_;
  std::optional<std::vector<double>> d1_;
  std::optional<std::vector<oracle::Degeneracy2>> d2_;
};

}  // namespace

bool ValidationReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> validation_check_names() {
  return {"fig1_delta1_axis", "fig1_delta1_3d",       "fig2_delta2_axis", "fig2_delta2_sym_3d",
          "fig2_delta2_antisym_3d", "fig3_delta2_total_3d", "fig4_d_total",   "fig5_joint_density",
          "fig6_momentum",    "p1_density",           "joint_density_t0", "marginal_density",
          "overlap",          "erf_complex",          "pauli_zero",       "normalization"};
}

ValidationReport run_validation(const RunConfig& cfg, const ValidateOptions& opt) {
  for (const auto& name : opt.only) {
    const auto all = validation_check_names();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw std::invalid_argument("unknown validation check '" + name + "'");
    }
  }
  ValidationReport report;
  Suite suite(cfg, opt);
  for (const auto& name : validation_check_names()) {
    if (opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), name) != opt.only.end()) {
      suite.run(name, report.checks);
    }
  }
  return report;
}

std::string validation_json(const ValidationReport& report, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["tool"] = "fermipulse";
  j["version"] = FERMIPULSE_VERSION;
  j["config_hash"] = config_hash(cfg);
  j["kernel"] = kernels::active_isa() == kernels::Isa::Avx2 ? "avx2" : "scalar";
  j["oracle_rel_tol"] = cfg.oracle_rel_tol;
  j["interference_scale"] = cfg.interference_scale;
  std::size_t failed = 0;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.passed ? "PASS" : "FAIL";
    e["points"] = c.points;
    e["max_abs_err"] = c.max_abs_err;
    e["max_rel_err"] = c.max_rel_err;
    e["worst_at"] = c.worst_at;
    e["rel_tol"] = c.rel_tol;
    e["abs_floor"] = c.abs_floor;
    e["seconds"] = c.seconds;
    if (!c.error.empty()) {
      e["error"] = c.error;
    }
    failed += c.passed ? 0 : 1;
    checks.push_back(std::move(e));
  }
  j["passed"] = report.checks.size() - failed;
  j["failed"] = failed;
  j["status"] = report.passed() ? "PASS" : "FAIL";
  return j.dump(2);
}

}  // namespace fermipulse
