// Copyright 2026 The Locsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locsec/protocols.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

#include "locsec/baselines.h"
#include "locsec/capacity.h"
#include "locsec/errors.h"
#include "locsec/parallel.h"
#include "locsec/primal.h"
#include "locsec/spectral.h"

namespace locsec {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Table make_table(std::initializer_list<Column> columns) {
  Table t;
  t.columns = columns;
  return t;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

Eigen::VectorXd dirichlet(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = expo(rng);
  return v / v.sum();
}

std::string label(double p, double q) {
  std::ostringstream s;
  s << "bswc(" << p << "," << q << ")";
  return s.str();
}

}  // namespace

WiretapChannel random_wiretap(std::size_t nx, std::size_t ny, std::size_t nz,
                              std::mt19937_64& rng) {
  for (;;) {
    Eigen::MatrixXd bob(ny, nx);
    Eigen::MatrixXd eve(nz, nx);
    for (std::size_t x = 0; x < nx; ++x) {
      bob.col(x) = dirichlet(ny, rng);
      eve.col(x) = dirichlet(nz, rng);
    }
    const Eigen::VectorXd px = dirichlet(nx, rng);
    const Eigen::VectorXd py = bob * px;
    const Eigen::VectorXd pz = eve * px;
    if (px.minCoeff() < 1e-3 || py.minCoeff() < 1e-3 || pz.minCoeff() < 1e-3) continue;
    return WiretapChannel(Pmf(px), TransitionMatrix(bob), TransitionMatrix(eve));
  }
}

PerturbationStrategy random_strategy(const EitSystem& sys, std::size_t card_u, double reach,
                                     std::mt19937_64& rng) {
  if (!(reach > 0.0 && reach <= 1.0)) throw DomainError("random_strategy: reach must lie in (0, 1]");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Pmf pu = Pmf::renormalized(dirichlet(card_u, rng).array() + 0.1);
  Eigen::MatrixXd coords(sys.basis.cols(), card_u);
  for (Eigen::Index i = 0; i < coords.size(); ++i) coords.data()[i] = gauss(rng);
  Eigen::MatrixXd l = sys.basis * coords;
  l.colwise() -= l * pu.probs();
  l *= max_valid_epsilon(sys.px, l) / reach;
  return PerturbationStrategy(sys.px, pu, l, 0.5 * reach);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw DomainError("log_grid: need 0 < lo < hi and at least two points");
  }
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.back() = hi;
  return grid;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DimensionError("log_log_slope: need matching samples, at least two");
  }
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

ProtocolResult bswc_closed_form(const BswcClosedFormOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "bswc-closed-form";
  out.table = make_table({{"p_bob"}, {"q_eve"}, {"rate", true}, {"theta_over_r"},
                          {"lp_value", true}, {"closed_form", true}, {"abs_diff", true},
                          {"regime"}});
  double worst = 0.0;
  std::size_t cells = 0;
  for (double p : options.crossovers) {
    for (double q : options.crossovers) {
      const PencilSpectrum spec = pencil_spectrum(eit_system(bswc(p, q)));
      for (double rate : options.rates) {
        for (std::size_t k = 1; k <= options.ratio_points; ++k) {
          const double ratio = static_cast<double>(k) / static_cast<double>(options.ratio_points);
          const double leakage = ratio * rate;
          const LpSolution sol = solve_lp(build_lp(spec, rate, leakage), LpForm::kDualMin);
          const double closed = bswc_c_sic(p, q, rate, leakage);
          const double diff = std::abs(sol.value - closed);
          worst = std::max(worst, diff);
          ++cells;
          out.table.add_row({p, q, rate, ratio, sol.value, closed, diff, to_string(sol.regime)});
        }
      }
    }
  }
  out.passed = worst <= options.tolerance;
  std::ostringstream detail;
  detail << cells << " grid points, max |LP - closed form| = " << worst << " (tol "
         << options.tolerance << ")";
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult table1(const Table1Options& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "table1";
  out.table = make_table({{"channel"}, {"nx"}, {"eve_snr_db"}, {"seed"}, {"theta_over_r"},
                          {"form"}, {"lp_value", true}, {"vertex_search", true},
                          {"abs_diff", true}, {"rho"}, {"nu"}, {"regime"}});
  struct Job {
    std::size_t nx;
    double eve_db;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t nx : options.input_sizes) {
    for (std::size_t k = 0; k < options.channels_per_size; ++k) {
      jobs.push_back({nx, options.eve_snr_db[k % options.eve_snr_db.size()],
                      options.seed + jobs.size()});
    }
  }
  const auto blocks = parallel_map(
      jobs.size(),
      [&](std::size_t j) {
        const Job& job = jobs[j];
        AwgnQuantizerOptions q;
        q.edge_jitter = options.edge_jitter;
        const WiretapChannel wc = quantized_awgn_wiretap(job.nx, job.nx, job.nx,
                                                         options.bob_snr_db, job.eve_db,
                                                         job.seed, q);
        const PencilSpectrum spec = pencil_spectrum(eit_system(wc));
        std::vector<std::vector<Cell>> rows;
        for (double ratio : options.ratios) {
          const LpProblem lp = build_lp(spec, options.rate, ratio * options.rate);
          for (LpForm form : {LpForm::kDualMin, LpForm::kPaperLiteralMax}) {
            const VertexSearchResult oracle = exhaustive_vertex_search(lp, form);
            double value = kNan;
            double rho = kNan;
            double nu = kNan;
            std::string regime = "infeasible";
            try {
              const LpSolution sol = solve_lp(lp, form);
              value = sol.value;
              rho = sol.rho;
              nu = sol.nu;
              regime = to_string(sol.regime);
            } catch (const InfeasibleLpError&) {
            }
            const double reference = oracle.feasible ? oracle.best.value : kNan;
            double diff = std::abs(value - reference);
            if (std::isnan(value) && std::isnan(reference)) diff = 0.0;
            rows.push_back({as_int(j), as_int(job.nx), job.eve_db,
                            static_cast<std::int64_t>(job.seed), ratio, to_string(form), value,
                            reference, diff, rho, nu, regime});
          }
        }
        return rows;
      },
      options.workers);
  double worst = 0.0;
  for (const auto& block : blocks) {
    for (const auto& row : block) {
      const double diff = std::get<double>(row[8]);
      worst = std::isnan(diff) ? std::numeric_limits<double>::infinity() : std::max(worst, diff);
      out.table.add_row(row);
    }
  }
  out.passed = worst <= options.tolerance && jobs.size() >= 20;
  std::ostringstream detail;
  detail << jobs.size() << " channels x " << options.ratios.size()
         << " ratios x 2 forms, max |solver - vertex search| = " << worst << " (tol "
         << options.tolerance << ")";
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult table2(const Table2Options& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "table2";
  out.table = make_table({{"card_u"}, {"primal", true}, {"dual_lp", true},
                          {"dual_min", true}, {"exact_optimum", true}, {"rate_used", true},
                          {"leakage_used", true}});
  const WiretapChannel wc = quantized_awgn_wiretap(options.nx, options.nx, options.nx,
                                                   options.bob_snr_db, options.eve_snr_db,
                                                   options.channel_seed);
  const EitSystem sys = eit_system(wc);
  const double exact = exact_quadratic_capacity(sys, options.rate, options.leakage).value;
  PrimalOptions base;
  base.restarts = options.restarts;
  base.seed = options.seed;
  const std::vector<PuInvarianceRow> rows = pu_invariance_sweep(
      sys, options.rate, options.leakage, options.epsilon, options.card_lo, options.card_hi,
      base);
  bool below = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (const PuInvarianceRow& r : rows) {
    below = below && r.primal <= r.paper_max * (1.0 + 1e-12);
    lo = std::min(lo, r.primal);
    hi = std::max(hi, r.primal);
    sum += r.primal;
    out.table.add_row({as_int(r.card_u), r.primal, r.paper_max, r.dual_min, exact, r.rate_used,
                       r.leakage_used});
  }
  const double mean = sum / static_cast<double>(rows.size());
  const double spread = (hi - lo) / mean;
  out.passed = below && spread <= options.max_spread;
  std::ostringstream detail;
  detail << "primal in [" << lo << ", " << hi << "], dual LP " << rows.front().paper_max
         << (below ? " (primal <= dual in every row)" : " (primal exceeds dual)")
         << ", spread " << 100.0 * spread << "% (max " << 100.0 * options.max_spread
         << "%), exact optimum " << exact << ", DualMin " << rows.front().dual_min;
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult convergence_order(const ConvergenceOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "convergence-order";
  out.table = make_table({{"pair"}, {"nx"}, {"ny"}, {"nz"}, {"slope_ux"}, {"slope_uy"},
                          {"slope_uz"}, {"mixing_card_u"}, {"mixing_slope_ux"},
                          {"mixing_slope_uy"}, {"mixing_slope_uz"}});
  const std::vector<double> eps = log_grid(options.eps_lo, options.eps_hi, options.eps_points);
  auto slopes = [&](const WiretapChannel& wc, const EitSystem& sys,
                    const PerturbationStrategy& base) {
    std::vector<double> ex;
    std::vector<double> ey;
    std::vector<double> ez;
    for (double e : eps) {
      const PerturbationStrategy s(base.px(), base.pu(), base.l(), e);
      const StrategyInformation info = exact_strategy_mi(wc, s);
      ex.push_back(info.iux - eit_mi_x(s));
      ey.push_back(info.iuy - eit_mi_y(s, sys));
      ez.push_back(info.iuz - eit_mi_z(s, sys));
    }
    return std::array<double, 3>{log_log_slope(eps, ex), log_log_slope(eps, ey),
                                 log_log_slope(eps, ez)};
  };
  double worst = std::numeric_limits<double>::infinity();
  double worst_mixing = worst;
  std::size_t mixing_below = 0;
  for (std::size_t i = 0; i < options.pairs; ++i) {
    std::mt19937_64 rng(options.seed * 1000003ULL + i);
    std::uniform_int_distribution<std::size_t> size(2, 5);
    std::uniform_int_distribution<std::size_t> card(2, 4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // Antipodal unit directions whose validity range covers the grid twice.
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == 1000) throw DomainError("convergence_order: no valid strategy found");
      const std::size_t nx = size(rng);
      const std::size_t ny = size(rng);
      const std::size_t nz = size(rng);
      const WiretapChannel wc = random_wiretap(nx, ny, nz, rng);
      const EitSystem sys = eit_system(wc);
      Eigen::VectorXd g(sys.basis.cols());
      for (Eigen::Index k = 0; k < g.size(); ++k) g(k) = gauss(rng);
      const Eigen::VectorXd dir = (sys.basis * g).normalized();
      Eigen::MatrixXd l(nx, 2);
      l << dir, -dir;
      if (max_valid_epsilon(sys.px, l) < 2.0 * options.eps_hi) continue;
      const PerturbationStrategy antipodal(sys.px, Pmf::uniform(2), l, options.eps_hi);
      const auto s = slopes(wc, sys, antipodal);
      const PerturbationStrategy mixing = random_strategy(sys, card(rng), 1.0, rng);
      const auto m = slopes(wc, sys, mixing);
      worst = std::min({worst, s[0], s[1], s[2]});
      const double mixing_min = std::min({m[0], m[1], m[2]});
      worst_mixing = std::min(worst_mixing, mixing_min);
      if (mixing_min < options.min_slope) ++mixing_below;
      out.table.add_row({as_int(i), as_int(nx), as_int(ny), as_int(nz), s[0], s[1], s[2],
                         as_int(mixing.messages()), m[0], m[1], m[2]});
      break;
    }
  }
  out.passed = worst >= options.min_slope;
  std::ostringstream detail;
  detail << options.pairs << " pairs (antipodal, uniform P_U), min log-log error slope "
         << worst << " (need >= " << options.min_slope << "); mixing strategies: min slope "
         << worst_mixing << ", " << mixing_below << " pairs below";
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult dtm_invariants(const DtmOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "dtm-invariants";
  out.table = make_table({{"channel"}, {"leg"}, {"nx"}, {"n_out"}, {"sigma1_error"},
                          {"vector_error"}});
  double worst_sigma = 0.0;
  double worst_vector = 0.0;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> size(2, 7);
  for (std::size_t i = 0; i < options.channels; ++i) {
    const std::size_t nx = size(rng);
    const WiretapChannel wc = random_wiretap(nx, size(rng), size(rng), rng);
    const Eigen::VectorXd root = wc.px().probs().cwiseSqrt();
    for (int leg = 0; leg < 2; ++leg) {
      const TransitionMatrix& ch = leg == 0 ? wc.bob() : wc.eve();
      const Eigen::MatrixXd b = dtm(ch, wc.px());
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullV);
      const double sigma = std::abs(svd.singularValues()(0) - 1.0);
      Eigen::VectorXd v = svd.matrixV().col(0);
      if (v.dot(root) < 0.0) v = -v;
      const double vec = (v - root).norm();
      worst_sigma = std::max(worst_sigma, sigma);
      worst_vector = std::max(worst_vector, vec);
      out.table.add_row({as_int(i), std::string(leg == 0 ? "bob" : "eve"), as_int(nx),
                         as_int(ch.outputs()), sigma, vec});
    }
  }
  out.passed = worst_sigma <= 1e-10 && worst_vector <= 1e-8;
  std::ostringstream detail;
  detail << options.channels << " channels, max |sigma1 - 1| = " << worst_sigma
         << ", max ||v1 - sqrt(P_X)|| = " << worst_vector;
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult contraction(const ContractionOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "contraction";
  out.table = make_table({{"channel"}, {"eta_loc"}, {"closed_form"}, {"abs_diff"},
                          {"max_violation"}, {"principal_gap"}});
  double worst_closed = 0.0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  double worst_gap = 0.0;
  auto probe = [&](const std::string& name, const EitSystem& sys, double closed,
                   std::uint64_t seed) {
    const UtilityLeakageSamples s = utility_leakage_samples(sys, options.samples, seed);
    double violation = -std::numeric_limits<double>::infinity();
    for (const UtilityLeakageSample& p : s.points) {
      violation = std::max(violation, p.utility - s.eta_loc * p.leakage);
    }
    const UtilityLeakageSample& top = s.points.front();
    const double gap = std::abs(top.utility - s.eta_loc * top.leakage);
    const double diff = std::isnan(closed) ? 0.0 : std::abs(s.eta_loc - closed);
    worst_closed = std::max(worst_closed, diff);
    worst_violation = std::max(worst_violation, violation);
    worst_gap = std::max(worst_gap, gap);
    out.table.add_row({name, s.eta_loc, closed, std::isnan(closed) ? kNan : diff, violation, gap});
  };
  std::uint64_t seed = options.seed;
  for (double p : options.crossovers) {
    for (double q : options.crossovers) {
      const double closed = std::pow(1.0 - 2.0 * p, 2) / std::pow(1.0 - 2.0 * q, 2);
      probe(label(p, q), eit_system(bswc(p, q)), closed, seed++);
    }
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> size(3, 5);
  for (std::size_t i = 0; i < options.random_channels; ++i) {
    const std::size_t nx = size(rng);
    const WiretapChannel wc = random_wiretap(nx, size(rng), nx + 1, rng);
    probe("random-" + std::to_string(i), eit_system(wc), kNan, seed++);
  }
  out.passed = worst_closed <= 1e-10 && worst_violation <= 1e-12 && worst_gap <= 1e-9;
  std::ostringstream detail;
  detail << "max |eta - closed form| = " << worst_closed << ", max bound violation "
         << worst_violation << " over " << options.samples
         << " perturbations/channel, principal-mode gap " << worst_gap;
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult sandwich(const SandwichOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "sandwich";
  out.table = make_table({{"channel"}, {"p_min"}, {"eta_loc"}, {"max_ratio"}, {"min_ratio"},
                          {"upper_bound"}});
  std::vector<std::pair<std::string, WiretapChannel>> channels;
  for (double q : options.eve) {
    for (double p : options.bob) channels.emplace_back(label(p, q), bswc(p, q));
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = 0; i < options.ternary_channels; ++i) {
    channels.emplace_back("ternary-" + std::to_string(i), random_wiretap(3, 3, 3, rng));
  }
  const auto estimates = parallel_map(
      channels.size(),
      [&](std::size_t i) {
        return mc_global_contraction(channels[i].second, options.samples, options.eps_grid,
                                     options.seed + 1 + i);
      },
      options.workers);
  bool below = true;
  bool reaches = true;
  double tightest = std::numeric_limits<double>::infinity();
  double shortfall = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const ContractionEstimate& e = estimates[i];
    const double lowest = *std::min_element(e.ratios.begin(), e.ratios.end());
    below = below && e.max_ratio <= e.upper_bound;
    reaches = reaches && e.max_ratio >= e.eta_loc - options.slack;
    tightest = std::min(tightest, e.upper_bound / e.max_ratio);
    shortfall = std::max(shortfall, e.eta_loc - e.max_ratio);
    out.table.add_row({channels[i].first, channels[i].second.px().min_entry(), e.eta_loc,
                       e.max_ratio, lowest, e.upper_bound});
  }
  out.passed = below && reaches;
  std::ostringstream detail;
  detail << channels.size() << " channels x " << options.samples
         << " samples: min upper-bound/max-ratio = " << tightest
         << ", max (eta_loc - sampled max) = " << shortfall << " (slack " << options.slack << ")";
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult information_bottleneck(const IbOptionsProtocol& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "ib";
  out.table = make_table({{"beta"}, {"rate", true}, {"utility", true}, {"eit_utility", true},
                          {"converged"}});
  const WiretapChannel wc = bswc(options.crossover, options.crossover);
  const double eit_slope = pencil_spectrum(eit_system(wc)).lam_max_perp_v;
  const double expected = std::pow(1.0 - 2.0 * options.crossover, 2);
  const double capacity = mutual_information(wc.px(), wc.bob());

  IbOptions ib;
  ib.card_u = options.card_u;
  ib.seed = options.seed;
  ib.max_iters = 200000;
  const auto points = parallel_map(
      options.betas.size(),
      [&](std::size_t i) {
        IbOptions local = ib;
        local.seed = options.seed + i;
        return blahut_arimoto_ib(wc.px(), wc.bob(), {options.betas[i]}, local).front();
      },
      options.workers);
  std::vector<IbCurvePoint> curve = points;
  std::stable_sort(curve.begin(), curve.end(),
                   [](const IbCurvePoint& a, const IbCurvePoint& b) { return a.rate < b.rate; });

  double saturation = 0.0;
  bool converged = true;
  for (const IbCurvePoint& p : curve) {
    saturation = std::max(saturation, p.utility);
    converged = converged && p.converged;
    out.table.add_row({p.beta, p.rate, p.utility, eit_slope * p.rate,
                       static_cast<std::int64_t>(p.converged)});
  }
  std::vector<IbCurvePoint> informative;
  for (const IbCurvePoint& p : curve) {
    if (p.rate > 1e-6) informative.push_back(p);
  }
  double ba_slope = kNan;
  if (informative.size() >= 2) {
    ba_slope = (informative[1].utility - informative[0].utility) /
               (informative[1].rate - informative[0].rate);
  }
  const double sat_gap_bits = std::abs(from_nats(saturation - capacity, LogBase::kBits));
  out.passed = converged && sat_gap_bits <= options.saturation_tolerance_bits &&
               std::abs(ba_slope - eit_slope) <= options.slope_tolerance &&
               std::abs(eit_slope - expected) <= options.slope_tolerance;
  std::ostringstream detail;
  detail << "saturation " << from_nats(saturation, LogBase::kBits) << " bits vs I(X;Y) "
         << from_nats(capacity, LogBase::kBits) << " bits, small-rate slope " << ba_slope
         << " (Blahut-Arimoto) vs " << eit_slope << " (EIT)"
         << (converged ? "" : ", some points did not converge");
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult regimes(const RegimeOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "regimes";
  out.table = make_table({{"p_bob"}, {"q_eve"}, {"initial_slope"}, {"d_max"}, {"tail"},
                          {"lam_max_v"}, {"knee"}, {"knee_expected"}});
  double worst_slope = 0.0;
  double worst_tail = 0.0;
  double worst_knee = 0.0;
  for (const auto& [p, q] : options.channels) {
    const PencilSpectrum spec = pencil_spectrum(eit_system(bswc(p, q)));
    const double r = options.rate;
    auto normalized = [&](double ratio) {
      return solve_lp(build_lp(spec, r, ratio * r), LpForm::kDualMin).value / r;
    };
    auto regime = [&](double ratio) {
      return solve_lp(build_lp(spec, r, ratio * r), LpForm::kDualMin).regime;
    };
    const double slope = (normalized(2e-3) - normalized(1e-3)) / 1e-3;
    const double tail = normalized(10.0);
    double lo = 1e-6;
    double hi = 10.0;
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      (regime(mid) == Regime::kLeakageDominant ? lo : hi) = mid;
    }
    const double knee = 0.5 * (lo + hi);
    const double expected = spec.lam_max_perp_v / spec.d_max();
    worst_slope = std::max(worst_slope, std::abs(slope - spec.d_max()));
    worst_tail = std::max(worst_tail, std::abs(tail - spec.lam_max_perp_v));
    worst_knee = std::max(worst_knee, std::abs(knee - expected));
    out.table.add_row({p, q, slope, spec.d_max(), tail, spec.lam_max_perp_v, knee, expected});
  }
  out.passed = worst_slope <= options.tolerance && worst_tail <= options.tolerance &&
               worst_knee <= options.knee_tolerance;
  std::ostringstream detail;
  detail << "max slope error " << worst_slope << ", tail error " << worst_tail
         << ", knee error " << worst_knee;
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult perfect_secrecy(const PerfectSecrecyOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "perfect-secrecy";
  out.table = make_table({{"p_bob"}, {"q_eve"}, {"c_sic", true}, {"expected", true},
                          {"path"}});
  double worst_leak = 0.0;
  double worst_noise = 0.0;
  for (double p : options.crossovers) {
    for (double q : options.crossovers) {
      const PencilSpectrum spec = pencil_spectrum(eit_system(bswc(p, q)));
      const double c =
          solve_lp(build_lp(spec, options.rate, options.leakage), LpForm::kDualMin).value;
      worst_leak = std::max(worst_leak, c);
      out.table.add_row({p, q, c, 0.0, std::string("lp")});
    }
    const double lam_v = std::pow(1.0 - 2.0 * p, 2);
    const double expected = lam_v * options.rate;
    const double closed = bswc_c_sic(p, 0.5, options.rate, options.leakage);
    const double exact =
        exact_quadratic_capacity(eit_system(bswc(p, 0.5)), options.rate, options.leakage).value;
    worst_noise = std::max({worst_noise, std::abs(closed - expected), std::abs(exact - expected)});
    out.table.add_row({p, 0.5, closed, expected, std::string("closed-form")});
    out.table.add_row({p, 0.5, exact, expected, std::string("exact-quadratic")});
  }
  out.passed = worst_leak <= options.bound && worst_noise <= 1e-12;
  std::ostringstream detail;
  detail << "Theta = " << options.leakage << ": max C_SIC " << worst_leak
         << " for q != 0.5; q = 0.5 deviation from lam_V R " << worst_noise;
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult kkt(const KktOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "kkt";
  out.table = make_table({{"q_eve"}, {"p_bob"}, {"rate", true}, {"theta", true}, {"rho"},
                          {"nu"}, {"lam_v"}, {"lam_lam"}, {"residual"}, {"regime"}});
  double worst = 0.0;
  for (double q : options.eve) {
    for (std::size_t i = 0; i < options.bob_points; ++i) {
      const double p = 0.01 * static_cast<double>(i);
      const PencilSpectrum spec = pencil_spectrum(eit_system(bswc(p, q)));
      for (const auto& [rate, leakage] : options.budgets) {
        const LpSolution sol = solve_lp(build_lp(spec, rate, leakage), LpForm::kDualMin);
        const KktReport report = kkt_commuting_check(spec, sol, options.tolerance);
        worst = std::max(worst, report.max_active_residual);
        out.table.add_row({q, p, rate, leakage, sol.rho, sol.nu, spec.v_quotient(0),
                           spec.lam_quotient(0), report.max_active_residual,
                           to_string(sol.regime)});
      }
    }
  }
  out.passed = worst <= options.tolerance;
  std::ostringstream detail;
  detail << "max |lam_V - rho - nu lam_Lam| = " << worst << " (tol " << options.tolerance << ")";
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

ProtocolResult eve_quantization(const EveQuantizationOptions& options) {
  Stopwatch clock;
  ProtocolResult out;
  out.name = "eve-quantization";
  out.table = make_table({{"nz"}, {"i_xz", true}, {"c_sic", true}, {"exact_optimum", true},
                          {"pencil"}});
  std::vector<double> lp_values;
  std::vector<double> exact_values;
  bool exact_monotone = true;
  bool lp_monotone = true;
  for (std::size_t nz : options.eve_sizes) {
    const WiretapChannel wc = quantized_awgn_wiretap(options.nx, options.ny, nz,
                                                     options.bob_snr_db, options.eve_snr_db,
                                                     options.seed);
    const EitSystem sys = eit_system(wc);
    const double exact = exact_quadratic_capacity(sys, options.rate, options.leakage).value;
    if (!exact_values.empty() && exact > exact_values.back() + options.tolerance) {
      exact_monotone = false;
    }
    exact_values.push_back(exact);
    double c = kNan;
    std::string pencil = "regular";
    try {
      const PencilSpectrum spec = pencil_spectrum(sys);
      c = solve_lp(build_lp(spec, options.rate, options.leakage), LpForm::kDualMin).value;
      if (!lp_values.empty() && c > lp_values.back() + options.tolerance) lp_monotone = false;
      lp_values.push_back(c);
    } catch (const SingularPencilError&) {
      pencil = "singular";
    }
    out.table.add_row({as_int(nz), mutual_information(wc.px(), wc.eve()), c, exact, pencil});
  }
  out.passed = lp_monotone && exact_monotone && lp_values.size() >= 2;
  std::ostringstream detail;
  detail << "C_SIC (LP, " << lp_values.size() << " regular rows) "
         << (lp_monotone ? "non-increasing" : "NOT monotone") << "; exact quadratic optimum ("
         << exact_values.size() << " rows) "
         << (exact_monotone ? "non-increasing" : "NOT monotone") << " in |Z|";
  out.detail = detail.str();
  out.seconds = clock.seconds();
  return out;
}

}  // namespace locsec
