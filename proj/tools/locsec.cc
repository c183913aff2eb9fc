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

// Command-line front end: channel files, capacity solves and sweeps, and the
// validation protocols. Every run writes CSV tables plus a JSON manifest.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locsec/capacity.h"
#include "locsec/channel_io.h"
#include "locsec/channels.h"
#include "locsec/eit.h"
#include "locsec/errors.h"
#include "locsec/parallel.h"
#include "locsec/protocols.h"
#include "locsec/spectral.h"
#include "locsec/table.h"
#include "locsec/version.h"

namespace {

using locsec::Cell;
using locsec::Table;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInput = 3;
constexpr const char* kOutDirEnv = "LOCSEC_OUT_DIR";

struct Globals {
  std::string units = "nats";
  std::string out_dir;
  std::size_t jobs = 0;
};

locsec::LogBase unit_base(const Globals& g) {
  return g.units == "bits" ? locsec::LogBase::kBits : locsec::LogBase::kNats;
}

// Converts a user-supplied information quantity to nats.
double to_nats(double value, const Globals& g) {
  return unit_base(g) == locsec::LogBase::kBits ? value * std::numbers::ln2 : value;
}

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw locsec::ValidationError("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

// Collects the outputs of one run and writes its manifest.
class Run {
 public:
  Run(std::string command, const Globals& globals)
      : command_(std::move(command)), globals_(globals), stamp_(utc_stamp()) {
    dir_ = globals.out_dir;
    if (dir_.empty()) {
      const char* env = std::getenv(kOutDirEnv);
      dir_ = env != nullptr && *env != '\0' ? env : ".";
    }
    std::filesystem::create_directories(dir_);
    params_["units"] = globals.units;
    params_["jobs"] = globals.jobs;
  }

  json& params() { return params_; }
  void seed(const std::string& name, std::uint64_t value) { seeds_[name] = value; }

  std::string path(const std::string& file) const {
    return (std::filesystem::path(dir_) / file).string();
  }

  void write_table(const std::string& file, const Table& table) {
    std::ofstream out(path(file));
    if (!out) throw locsec::ValidationError("cannot write '" + path(file) + "'");
    locsec::write_csv(out, table, command_, stamp_, unit_base(globals_));
    outputs_.push_back(file);
  }

  void record(const std::string& file) { outputs_.push_back(file); }

  void finish() {
    json manifest;
    manifest["command"] = command_;
    manifest["version"] = locsec::kVersion;
    manifest["timestamp"] = stamp_;
    manifest["parameters"] = params_;
    manifest["seeds"] = seeds_;
    manifest["outputs"] = outputs_;
    std::string stem = command_;
    for (char& c : stem) {
      if (c == ' ' || c == '-') c = '_';
    }
    const std::string file = stem + ".manifest.json";
    std::ofstream out(path(file));
    if (!out) throw locsec::ValidationError("cannot write '" + path(file) + "'");
    out << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  const Globals& globals_;
  std::string stamp_;
  std::string dir_;
  json params_ = json::object();
  json seeds_ = json::object();
  std::vector<std::string> outputs_;
};

std::string join_modes(const std::vector<std::size_t>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(modes[i]);
  }
  return out;
}

// Columns (prefix..., form, rho, nu, value, regime, active_modes, status).
std::vector<locsec::Column> lp_columns(std::vector<locsec::Column> prefix) {
  prefix.insert(prefix.end(), {{"form"},
                               {"rho"},
                               {"nu"},
                               {"value", true},
                               {"regime"},
                               {"active_modes"},
                               {"status"}});
  return prefix;
}

// One row per LP form; a failed solve is reported in the status column.
std::vector<std::vector<Cell>> lp_rows(const std::vector<Cell>& prefix,
                                       const locsec::PencilSpectrum* spec, double rate,
                                       double leakage, const std::string& failure) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<Cell>> rows;
  for (locsec::LpForm form : {locsec::LpForm::kDualMin, locsec::LpForm::kPaperLiteralMax}) {
    std::vector<Cell> row = prefix;
    if (spec == nullptr) {
      row.insert(row.end(), {locsec::to_string(form), nan, nan, nan, std::string(""),
                             std::string(""), failure});
    } else {
      try {
        const locsec::LpSolution sol = locsec::solve_lp(locsec::build_lp(*spec, rate, leakage), form);
        row.insert(row.end(), {locsec::to_string(form), sol.rho, sol.nu, sol.value,
                               locsec::to_string(sol.regime), join_modes(sol.active_modes),
                               std::string("ok")});
      } catch (const locsec::InfeasibleLpError&) {
        row.insert(row.end(), {locsec::to_string(form), nan, nan, nan, std::string(""),
                               std::string(""), std::string("infeasible")});
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct SpectrumOrError {
  std::optional<locsec::PencilSpectrum> spec;
  std::string error;
};

SpectrumOrError try_spectrum(const locsec::WiretapChannel& wc) {
  try {
    return {locsec::pencil_spectrum(locsec::eit_system(wc)), ""};
  } catch (const locsec::SingularPencilError&) {
    return {std::nullopt, "singular-pencil"};
  }
}

// --- channel ---------------------------------------------------------------

struct ChannelGenArgs {
  std::vector<double> bswc;
  std::vector<std::size_t> awgn;
  std::vector<double> px;
  double bob_snr = 8.0;
  double eve_snr = 0.0;
  double jitter = 0.0;
  std::uint64_t seed = 1;
  std::string output;
};

int channel_gen(const ChannelGenArgs& a, const Globals& g) {
  if (a.bswc.empty() == a.awgn.empty()) {
    throw locsec::ValidationError("channel gen: give exactly one of --bswc or --awgn");
  }
  Run run("channel gen", g);
  std::optional<locsec::WiretapChannel> wc;
  if (!a.bswc.empty()) {
    std::optional<locsec::Pmf> px;
    if (!a.px.empty()) px = locsec::Pmf(Eigen::Map<const Eigen::VectorXd>(a.px.data(), a.px.size()));
    wc = locsec::bswc(a.bswc[0], a.bswc[1], px);
    run.params()["bswc"] = a.bswc;
    if (!a.px.empty()) run.params()["px"] = a.px;
  } else {
    locsec::AwgnQuantizerOptions q;
    q.edge_jitter = a.jitter;
    wc = locsec::quantized_awgn_wiretap(a.awgn[0], a.awgn[1], a.awgn[2], a.bob_snr, a.eve_snr,
                                        a.seed, q);
    run.params()["awgn"] = a.awgn;
    run.params()["bob_snr_db"] = a.bob_snr;
    run.params()["eve_snr_db"] = a.eve_snr;
    run.params()["jitter"] = a.jitter;
    run.seed("channel", a.seed);
  }
  const std::string file = a.output.empty() ? "channel.json" : a.output;
  run.params()["output"] = file;
  locsec::write_channel_file(run.path(file), *wc);
  run.record(file);
  run.finish();
  std::cout << "wrote " << run.path(file) << " (|X|=" << wc->nx() << ", |Y|=" << wc->ny()
            << ", |Z|=" << wc->nz() << ")\n";
  return kExitOk;
}

std::string vec_text(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += locsec::format_number(v(i));
  }
  return out + "]";
}

int channel_inspect(const std::string& path, const Globals& g) {
  const locsec::WiretapChannel wc = locsec::read_channel_file(path);
  const locsec::LogBase base = unit_base(g);
  const locsec::EitSystem sys = locsec::eit_system(wc);
  const double commutator = locsec::commutator_norm(sys);
  const double ixy = locsec::mutual_information(wc.px(), wc.bob(), base);
  const double ixz = locsec::mutual_information(wc.px(), wc.eve(), base);
  std::cout << "alphabets  |X|=" << wc.nx() << " |Y|=" << wc.ny() << " |Z|=" << wc.nz() << '\n'
            << "P_X        " << vec_text(wc.px().probs()) << '\n'
            << "P_Y        " << vec_text(wc.py().probs()) << '\n'
            << "P_Z        " << vec_text(wc.pz().probs()) << '\n'
            << "I(X;Y)     " << locsec::format_number(ixy) << ' ' << g.units << '\n'
            << "I(X;Z)     " << locsec::format_number(ixz) << ' ' << g.units << '\n'
            << "commutator " << locsec::format_number(commutator) << '\n';
  const SpectrumOrError s = try_spectrum(wc);
  if (s.spec) {
    std::cout << "eta_loc    " << locsec::format_number(s.spec->d_max()) << '\n'
              << "lam_max_V  " << locsec::format_number(s.spec->lam_max_perp_v) << '\n';
  } else {
    std::cout << "pencil     singular (Eve's Gram matrix is not positive definite on the "
                 "perturbation subspace)\n";
  }

  Run run("channel inspect", g);
  run.params()["channel"] = path;
  json summary;
  summary["nx"] = wc.nx();
  summary["ny"] = wc.ny();
  summary["nz"] = wc.nz();
  summary["i_xy"] = ixy;
  summary["i_xz"] = ixz;
  summary["commutator"] = commutator;
  summary["units"] = g.units;
  if (s.spec) {
    summary["eta_loc"] = s.spec->d_max();
    summary["lam_max_v"] = s.spec->lam_max_perp_v;
  }
  std::ofstream(run.path("inspect.json")) << summary.dump(2) << '\n';
  run.record("inspect.json");
  run.finish();
  return kExitOk;
}

// --- capacity --------------------------------------------------------------

struct CapacityArgs {
  std::string channel;
  double rate = 0.5;
  double theta = 0.05;
  double lo = 0.01;
  double hi = 1.0;
  std::size_t points = 100;
};

int capacity_solve(const CapacityArgs& a, const Globals& g) {
  const locsec::WiretapChannel wc = locsec::read_channel_file(a.channel);
  Run run("capacity solve", g);
  run.params()["channel"] = a.channel;
  run.params()["rate"] = a.rate;
  run.params()["theta"] = a.theta;
  Table t;
  t.columns = lp_columns({{"rate", true}, {"theta", true}});
  const SpectrumOrError s = try_spectrum(wc);
  for (auto& row : lp_rows({to_nats(a.rate, g), to_nats(a.theta, g)},
                           s.spec ? &*s.spec : nullptr, to_nats(a.rate, g),
                           to_nats(a.theta, g), s.error)) {
    t.add_row(std::move(row));
  }
  run.write_table("capacity_solve.csv", t);
  run.finish();
  for (const auto& row : t.rows) {
    std::cout << std::get<std::string>(row[2]) << ": rho=" << locsec::format_number(std::get<double>(row[3]))
              << " nu=" << locsec::format_number(std::get<double>(row[4])) << " value="
              << locsec::format_number(locsec::from_nats(std::get<double>(row[5]), unit_base(g)))
              << ' ' << std::get<std::string>(row[6]) << " [" << std::get<std::string>(row[8])
              << "]\n";
  }
  return kExitOk;
}

int capacity_sweep(const CapacityArgs& a, const Globals& g, bool by_ratio) {
  const locsec::WiretapChannel wc = locsec::read_channel_file(a.channel);
  const std::string name = by_ratio ? "capacity sweep-ratio" : "capacity sweep-theta";
  Run run(name, g);
  run.params()["channel"] = a.channel;
  run.params()["rate"] = a.rate;
  run.params()[by_ratio ? "ratio_min" : "theta_min"] = a.lo;
  run.params()[by_ratio ? "ratio_max" : "theta_max"] = a.hi;
  run.params()["points"] = a.points;
  const std::vector<double> grid = linear_grid(a.lo, a.hi, a.points);
  const SpectrumOrError s = try_spectrum(wc);
  const double rate = to_nats(a.rate, g);
  Table t;
  if (by_ratio) {
    t.columns = lp_columns({{"index"}, {"theta_over_r"}, {"rate", true}, {"theta", true}});
    t.columns.push_back({"normalized_value"});
  } else {
    t.columns = lp_columns({{"index"}, {"rate", true}, {"theta", true}});
  }
  const auto blocks = locsec::parallel_map(
      grid.size(),
      [&](std::size_t i) {
        const double theta = by_ratio ? grid[i] * rate : to_nats(grid[i], g);
        std::vector<Cell> prefix = {static_cast<std::int64_t>(i)};
        if (by_ratio) prefix.push_back(grid[i]);
        prefix.push_back(rate);
        prefix.push_back(theta);
        auto rows = lp_rows(prefix, s.spec ? &*s.spec : nullptr, rate, theta, s.error);
        if (by_ratio) {
          for (auto& row : rows) row.push_back(std::get<double>(row[prefix.size() + 3]) / rate);
        }
        return rows;
      },
      g.jobs);
  for (const auto& block : blocks) {
    for (const auto& row : block) t.add_row(row);
  }
  const std::string file = by_ratio ? "capacity_sweep_ratio.csv" : "capacity_sweep_theta.csv";
  run.write_table(file, t);
  run.finish();
  std::cout << "wrote " << run.path(file) << " (" << t.rows.size() << " rows)\n";
  return kExitOk;
}

int capacity_regimes(const CapacityArgs& a, const Globals& g) {
  const locsec::WiretapChannel wc = locsec::read_channel_file(a.channel);
  Run run("capacity regimes", g);
  run.params()["channel"] = a.channel;
  run.params()["rate"] = a.rate;
  run.params()["theta"] = a.theta;
  const locsec::PencilSpectrum spec = locsec::pencil_spectrum(locsec::eit_system(wc));
  const locsec::LpProblem lp = locsec::build_lp(spec, to_nats(a.rate, g), to_nats(a.theta, g));
  const locsec::RegimeReport r = locsec::regime_report(lp, spec);
  Table t;
  t.columns = {{"candidate"}, {"value", true}, {"rho"}, {"nu"}, {"detail"}};
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  t.add_row({std::string("C_R"), r.c_rate, nan, nan, std::string("")});
  t.add_row({std::string("C_Theta"), r.c_leakage, nan, nan, std::string("")});
  t.add_row({std::string("C_inter"), r.c_inter, nan, nan,
             std::to_string(r.interior_vertices.size()) + " interior vertices"});
  for (const locsec::LpVertex& v : r.interior_vertices) {
    t.add_row({std::string("interior_vertex"), v.value, v.rho, v.nu, std::string("")});
  }
  t.add_row({std::string("DualMin"), r.dual_min.value, r.dual_min.rho, r.dual_min.nu,
             locsec::to_string(r.dual_min.regime)});
  if (r.paper_max) {
    t.add_row({std::string("PaperLiteralMax"), r.paper_max->value, r.paper_max->rho,
               r.paper_max->nu, locsec::to_string(r.paper_max->regime)});
  } else {
    t.add_row({std::string("PaperLiteralMax"), nan, nan, nan, std::string("infeasible")});
  }
  t.add_row({std::string("sufficient_feasibility"), nan, nan, nan,
             std::string(r.sufficient_feasibility ? "true" : "false")});
  run.write_table("capacity_regimes.csv", t);
  run.finish();
  std::cout << "DualMin " << locsec::to_string(r.dual_min.regime) << ", value "
            << locsec::format_number(locsec::from_nats(r.dual_min.value, unit_base(g))) << '\n';
  return kExitOk;
}

struct SweepEveArgs {
  std::size_t nx = 8;
  std::size_t ny = 8;
  std::vector<std::size_t> nz = {2, 4, 8, 16};
  double bob_snr = 8.0;
  double eve_lo = -6.0;
  double eve_hi = 8.0;
  std::size_t points = 15;
  std::uint64_t seed = 7;
  double rate = 0.5;
  double theta = 0.1;
};

int capacity_sweep_eve(const SweepEveArgs& a, const Globals& g) {
  Run run("capacity sweep-eve", g);
  run.params()["nx"] = a.nx;
  run.params()["ny"] = a.ny;
  run.params()["nz"] = a.nz;
  run.params()["bob_snr_db"] = a.bob_snr;
  run.params()["eve_snr_min"] = a.eve_lo;
  run.params()["eve_snr_max"] = a.eve_hi;
  run.params()["points"] = a.points;
  run.params()["rate"] = a.rate;
  run.params()["theta"] = a.theta;
  run.seed("channel", a.seed);
  const std::vector<double> snrs = linear_grid(a.eve_lo, a.eve_hi, a.points);
  const double rate = to_nats(a.rate, g);
  const double theta = to_nats(a.theta, g);
  Table t;
  t.columns = lp_columns({{"nz"}, {"eve_snr_db"}});
  t.columns.push_back({"exact_optimum", true});
  const std::size_t cells = a.nz.size() * snrs.size();
  const auto blocks = locsec::parallel_map(
      cells,
      [&](std::size_t k) {
        const std::size_t nz = a.nz[k / snrs.size()];
        const double snr = snrs[k % snrs.size()];
        const std::vector<Cell> prefix = {static_cast<std::int64_t>(nz), snr};
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        try {
          const locsec::WiretapChannel wc =
              locsec::quantized_awgn_wiretap(a.nx, a.ny, nz, a.bob_snr, snr, a.seed);
          const SpectrumOrError s = try_spectrum(wc);
          const double exact =
              locsec::exact_quadratic_capacity(locsec::eit_system(wc), rate, theta).value;
          auto rows = lp_rows(prefix, s.spec ? &*s.spec : nullptr, rate, theta, s.error);
          for (auto& row : rows) row.push_back(exact);
          return rows;
        } catch (const locsec::ValidationError& e) {
          auto rows = lp_rows(prefix, nullptr, rate, theta, "invalid-channel");
          for (auto& row : rows) row.push_back(nan);
          return rows;
        }
      },
      g.jobs);
  for (const auto& block : blocks) {
    for (const auto& row : block) t.add_row(row);
  }
  run.write_table("capacity_sweep_eve.csv", t);
  run.finish();
  std::cout << "wrote " << run.path("capacity_sweep_eve.csv") << " (" << t.rows.size()
            << " rows)\n";
  return kExitOk;
}

// --- validate --------------------------------------------------------------

struct ValidateArgs {
  std::uint64_t seed = 1;
  std::string cardu = "5..12";
  std::size_t restarts = 8;
  std::size_t samples = 10000;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t v = std::stoul(text);
      return {v, v};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw locsec::ValidationError("bad range '" + text + "', expected N or LO..HI");
  }
}

int report(Run& run, const std::vector<locsec::ProtocolResult>& results) {
  bool ok = true;
  for (const auto& r : results) {
    std::string file = "validate_" + r.name + ".csv";
    for (char& c : file) {
      if (c == '-') c = '_';
    }
    run.write_table(file, r.table);
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  run.finish();
  return ok ? kExitOk : kExitValidation;
}

int validate(const std::string& which, const ValidateArgs& a, const Globals& g) {
  Run run("validate " + which, g);
  run.seed("seed", a.seed);
  if (which == "table1") {
    locsec::Table1Options o;
    o.seed = a.seed;
    o.workers = g.jobs;
    return report(run, {locsec::table1(o)});
  }
  if (which == "table2") {
    locsec::Table2Options o;
    std::tie(o.card_lo, o.card_hi) = parse_range(a.cardu);
    o.restarts = a.restarts;
    o.seed = a.seed;
    run.params()["cardu"] = a.cardu;
    run.params()["restarts"] = a.restarts;
    return report(run, {locsec::table2(o)});
  }
  if (which == "kkt") return report(run, {locsec::kkt()});
  if (which == "ib") {
    locsec::IbOptionsProtocol o;
    o.seed = a.seed;
    o.workers = g.jobs;
    return report(run, {locsec::information_bottleneck(o)});
  }
  locsec::ContractionOptions c;
  c.samples = a.samples;
  c.seed = a.seed;
  locsec::SandwichOptions s;
  s.samples = a.samples;
  s.seed = a.seed;
  s.workers = g.jobs;
  run.params()["samples"] = a.samples;
  return report(run, {locsec::contraction(c), locsec::sandwich(s)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locsec: local (EIT) secrecy analysis of discrete wiretap channels"};
  app.set_version_flag("--version", std::string(locsec::kVersion));
  app.require_subcommand(1);
  Globals g;
  app.add_option("--units", g.units, "Information unit of inputs and outputs")
      ->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--out-dir", g.out_dir,
                 std::string("Output directory (default: $") + kOutDirEnv + " or .)");
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps (0 = hardware)");

  int status = kExitOk;

  auto* channel = app.add_subcommand("channel", "Generate or inspect channel files");
  channel->require_subcommand(1);
  ChannelGenArgs gen;
  auto* gen_cmd = channel->add_subcommand("gen", "Write a channel JSON file");
  gen_cmd->add_option("--bswc", gen.bswc, "Binary symmetric wiretap channel: p_bob q_eve")
      ->expected(2);
  gen_cmd->add_option("--awgn", gen.awgn, "Quantized AWGN channel: nx ny nz")->expected(3);
  gen_cmd->add_option("--px", gen.px, "Input law for --bswc (default uniform)");
  gen_cmd->add_option("--bob-snr", gen.bob_snr, "Bob Eb/N0 in dB");
  gen_cmd->add_option("--eve-snr", gen.eve_snr, "Eve Eb/N0 in dB");
  gen_cmd->add_option("--jitter", gen.jitter, "Relative bin-edge jitter (default 0)");
  gen_cmd->add_option("--seed", gen.seed, "Seed for bin-edge jitter");
  gen_cmd->add_option("-o,--output", gen.output, "Output file name (default channel.json)");
  gen_cmd->callback([&] { status = channel_gen(gen, g); });

  std::string inspect_path;
  auto* inspect_cmd = channel->add_subcommand("inspect", "Summarize a channel file");
  inspect_cmd->add_option("channel", inspect_path, "Channel JSON file")->required();
  inspect_cmd->callback([&] { status = channel_inspect(inspect_path, g); });

  auto* capacity = app.add_subcommand("capacity", "Multiplier LP and local secrecy capacity");
  capacity->require_subcommand(1);
  CapacityArgs cap;
  auto add_channel = [&](CLI::App* cmd) {
    cmd->add_option("--channel", cap.channel, "Channel JSON file")->required();
    cmd->add_option("--rate", cap.rate, "Rate budget R");
  };
  auto* solve_cmd = capacity->add_subcommand("solve", "Solve both LP forms at (R, Theta)");
  add_channel(solve_cmd);
  solve_cmd->add_option("--theta", cap.theta, "Leakage budget Theta");
  solve_cmd->callback([&] { status = capacity_solve(cap, g); });

  auto* theta_cmd = capacity->add_subcommand("sweep-theta", "Sweep Theta at fixed R");
  add_channel(theta_cmd);
  theta_cmd->add_option("--theta-min", cap.lo, "First Theta");
  theta_cmd->add_option("--theta-max", cap.hi, "Last Theta");
  theta_cmd->add_option("--points", cap.points, "Grid points");
  theta_cmd->callback([&] { status = capacity_sweep(cap, g, false); });

  auto* ratio_cmd = capacity->add_subcommand("sweep-ratio", "Sweep Theta/R at fixed R");
  add_channel(ratio_cmd);
  ratio_cmd->add_option("--ratio-min", cap.lo, "First Theta/R");
  ratio_cmd->add_option("--ratio-max", cap.hi, "Last Theta/R");
  ratio_cmd->add_option("--points", cap.points, "Grid points");
  ratio_cmd->callback([&] { status = capacity_sweep(cap, g, true); });

  auto* regimes_cmd = capacity->add_subcommand("regimes", "Regime candidates at (R, Theta)");
  add_channel(regimes_cmd);
  regimes_cmd->add_option("--theta", cap.theta, "Leakage budget Theta");
  regimes_cmd->callback([&] { status = capacity_regimes(cap, g); });

  SweepEveArgs eve;
  auto* eve_cmd = capacity->add_subcommand("sweep-eve", "Sweep Eve SNR and quantizer size");
  eve_cmd->add_option("--nx", eve.nx, "Input alphabet size");
  eve_cmd->add_option("--ny", eve.ny, "Bob quantizer size");
  eve_cmd->add_option("--nz", eve.nz, "Eve quantizer sizes");
  eve_cmd->add_option("--bob-snr", eve.bob_snr, "Bob Eb/N0 in dB");
  eve_cmd->add_option("--eve-snr-min", eve.eve_lo, "First Eve Eb/N0 in dB");
  eve_cmd->add_option("--eve-snr-max", eve.eve_hi, "Last Eve Eb/N0 in dB");
  eve_cmd->add_option("--points", eve.points, "SNR grid points");
  eve_cmd->add_option("--seed", eve.seed, "Channel seed");
  eve_cmd->add_option("--rate", eve.rate, "Rate budget R");
  eve_cmd->add_option("--theta", eve.theta, "Leakage budget Theta");
  eve_cmd->callback([&] { status = capacity_sweep_eve(eve, g); });

  auto* validate_cmd = app.add_subcommand("validate", "Run a validation protocol");
  std::string which;
  ValidateArgs val;
  validate_cmd->add_option("protocol", which, "table1 | table2 | kkt | ib | contraction")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "kkt", "ib", "contraction"}));
  validate_cmd->add_option("--seed", val.seed, "Protocol seed");
  validate_cmd->add_option("--cardu", val.cardu, "Message alphabet range for table2, LO..HI");
  validate_cmd->add_option("--restarts", val.restarts, "Primal restarts for table2");
  validate_cmd->add_option("--samples", val.samples, "Samples per channel for contraction");
  validate_cmd->callback([&] { status = validate(which, val, g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const locsec::SingularPencilError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
