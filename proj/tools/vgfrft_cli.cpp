// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
// Failures print one line to stderr:
//   vgfrft: error status=<name> exit=<code> message=<text>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vgfrft/vgfrft.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

struct Failure {
  int exit;
  std::string status;
  std::string message;
};

int exit_for(vgf_status st) {
  switch (st) {
    case VGF_OK:
      return kOk;
    case VGF_E_ARGUMENT:
    case VGF_E_CONTRACT:
      return kUsage;
    case VGF_E_SIZE:
    case VGF_E_PARSE:
    case VGF_E_ORDERING:
    case VGF_E_IO:
    case VGF_E_DEGENERATE:
    case VGF_E_OUTLIER_LIMIT:
    case VGF_E_MOMENTS:
      return kData;
    default:
      return kNumeric;
  }
}

void check(vgf_status st) {
  if (st != VGF_OK) throw Failure{exit_for(st), vgf_status_name(st), vgf_last_error()};
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string header(const std::string& kind) {
  char buf[256];
  check(vgf_artifact_header(kind.c_str(), buf, sizeof buf));
  return buf;
}

using Sample = std::unique_ptr<vgf_sample, decltype(&vgf_sample_destroy)>;
using Fit = std::unique_ptr<vgf_fit, decltype(&vgf_fit_destroy)>;
using Density = std::unique_ptr<vgf_density, decltype(&vgf_density_destroy)>;

struct Options {
  std::string model = "avg";
  std::string init = "default";
  std::optional<double> a;
  std::optional<std::size_t> n;
  double gamma = 0.0;
  double scale = 100.0;
  std::string outlier_rule = "none";
  bool allow_excess = false;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string input;
  std::string tag;
  std::string summary;
  vgf_params params{0.0, 0.0, 1.0, 1.0, 1.0};
  int max_iters = 100;
  double grad_tol = 1e-4;
  bool derivatives = false;
  std::size_t count = 1000;
  double null_lo = 0.0;
  double null_hi = 0.0;
  std::size_t null_points = 0;
  std::vector<std::string> summaries;
};

void add_params(CLI::App* app, Options& o) {
  app->add_option("--mu", o.params.mu, "location");
  app->add_option("--delta", o.params.delta, "asymmetry");
  app->add_option("--sigma", o.params.sigma, "volatility (> 0)");
  app->add_option("--alpha", o.params.alpha, "Gamma shape (> 0)");
  app->add_option("--theta", o.params.theta, "Gamma scale (> 0)");
}

void add_grid(CLI::App* app, Options& o, bool with_n) {
  app->add_option("--a", o.a, "CF support width");
  if (with_n) app->add_option("--n", o.n, "grid size (power of two)");
  app->add_option("--gamma", o.gamma, "output step (default keeps the output span of the base grid)");
}

void add_data(CLI::App* app, Options& o) {
  app->add_option("--input", o.input, "price CSV or sample CSV")->required()->check(CLI::ExistingFile);
  app->add_option("--scale", o.scale, "return scale (100 = percent)");
  app->add_option("--outlier-rule", o.outlier_rule, "none | abs:T | z:K | count:N");
  app->add_flag("--allow-excess-outliers", o.allow_excess, "permit removing more than 5%");
}

vgf_grid grid_from(const Options& o, vgf_grid base) {
  vgf_grid g = base;
  if (o.a || o.n) g.gamma = 0.0;
  if (o.a) g.a = *o.a;
  if (o.n) g.n = *o.n;
  if (o.gamma > 0.0) g.gamma = o.gamma;
  else if (o.a || o.n) g.gamma = base.gamma * static_cast<double>(base.n) / static_cast<double>(g.n);
  // A bad override is a usage error whatever the library calls it.
  const vgf_status st = vgf_grid_validate(&g);
  if (st != VGF_OK) throw Failure{kUsage, vgf_status_name(st), vgf_last_error()};
  return g;
}

std::string artifact(const Options& o, const std::string& name) {
  return (fs::path(o.out_dir) / name).string();
}

Sample load_sample(const Options& o) {
  vgf_sample* raw = nullptr;
  check(vgf_sample_open(o.input.c_str(), o.scale, &raw));
  Sample s(raw, &vgf_sample_destroy);
  check(vgf_sample_filter(s.get(), o.outlier_rule.c_str(), o.allow_excess ? 1 : 0));
  return s;
}

std::string default_tag(const Options& o) {
  if (!o.tag.empty()) return o.tag;
  std::string tag = o.model;
  std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) { return std::toupper(c); });
  if (o.model == "clm") return tag;
  if (o.init == "moments") return tag + "1";
  if (o.init == "default") return tag + "2";
  return tag + "X";
}

void ensure_out_dir(const Options& o) {
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw Failure{kData, "io", "cannot create output directory '" + o.out_dir + "': " + ec.message()};
}

struct Run {
  vgf_summary summary{};
  bool converged = true;
};

void copy_text(char* dst, std::size_t size, const std::string& s) {
  std::snprintf(dst, size, "%s", s.c_str());
}

// Fits the requested model and computes the KS statistic against it.
Run fit_and_test(const Options& o, const double* y, std::size_t n, const std::string& tag, bool write_trace) {
  Run run;
  vgf_summary& s = run.summary;
  copy_text(s.tag, sizeof s.tag, tag);
  copy_text(s.init, sizeof s.init, o.model == "clm" ? "closed-form" : o.init);
  s.sample_size = n;
  s.has_ks = 1;

  if (o.model == "clm") {
    double mu = 0.0, sigma = 0.0, ll = 0.0;
    int degenerate = 0;
    check(vgf_fit_clm(y, n, &mu, &sigma, &degenerate, &ll));
    if (degenerate) throw Failure{kData, "degenerate", "sample has zero variance"};
    s.model = VGF_MODEL_CLM;
    s.params = {mu, 0.0, sigma, 0.0, 0.0};
    s.loglik = ll;
    s.converged = 1;
    copy_text(s.stop_reason, sizeof s.stop_reason, "closed form");
    check(vgf_ks_clm(y, n, mu, sigma, &s.ks));
    return run;
  }

  const bool symmetric = o.model == "svg";
  s.model = symmetric ? VGF_MODEL_SVG : VGF_MODEL_AVG;
  vgf_params init{0.0, 0.0, 1.0, 1.0, 1.0};
  if (o.init == "moments")
    check(vgf_init_moments(y, n, symmetric ? 1 : 0, &init));
  else if (o.init == "explicit")
    init = o.params;
  if (symmetric) init.delta = 0.0;

  vgf_fit_options opts;
  vgf_fit_options_default(&opts);
  opts.symmetric = symmetric ? 1 : 0;
  opts.max_iters = o.max_iters;
  opts.grad_tol = o.grad_tol;
  opts.grid = grid_from(o, opts.grid);

  vgf_fit* raw = nullptr;
  check(vgf_fit_mle(y, n, &init, &opts, &raw));
  Fit fit(raw, &vgf_fit_destroy);
  int converged = 0;
  check(vgf_fit_result(fit.get(), &s.params, &s.loglik, &converged));
  s.converged = converged;
  run.converged = converged != 0;
  s.iterations = static_cast<int>(vgf_fit_iteration_count(fit.get()));
  vgf_iteration last{};
  check(vgf_fit_iteration(fit.get(), vgf_fit_iteration_count(fit.get()) - 1, &last));
  s.grad_norm = last.grad_norm;
  s.hessian_condition = vgf_fit_hessian_condition(fit.get());
  copy_text(s.stop_reason, sizeof s.stop_reason, vgf_fit_stop_reason(fit.get()));
  if (write_trace) check(vgf_fit_write_trace(fit.get(), artifact(o, tag + "_trace.csv").c_str()));
  check(vgf_ks_vg(y, n, &s.params, &opts.grid, &s.ks));
  return run;
}

void print_summary(const vgf_summary& s) {
  std::printf("tag=%s model=%s n=%zu mu=%s delta=%s sigma=%s alpha=%s theta=%s loglik=%s converged=%d "
              "iterations=%d d_n=%s p_value=%s\n",
              s.tag, s.model == VGF_MODEL_AVG ? "avg" : s.model == VGF_MODEL_SVG ? "svg" : "clm",
              s.sample_size, fmt6(s.params.mu).c_str(), fmt6(s.params.delta).c_str(),
              fmt6(s.params.sigma).c_str(), fmt6(s.params.alpha).c_str(), fmt6(s.params.theta).c_str(),
              fmt(s.loglik).c_str(), s.converged, s.iterations, fmt6(s.ks.d_n).c_str(),
              fmt6(s.ks.p_value).c_str());
}

// ---------------------------------------------------------------- commands

int cmd_density(const Options& o) {
  ensure_out_dir(o);
  const vgf_grid g = grid_from(o, vgf_grid_fit_default());
  vgf_density* raw = nullptr;
  check(vgf_density_create(&o.params, &g, o.derivatives ? 1 : 0, &raw));
  Density d(raw, &vgf_density_destroy);
  const std::string path = artifact(o, o.tag.empty() ? "density.csv" : o.tag + "_density.csv");
  check(vgf_density_write_csv(d.get(), path.c_str(), 1, o.derivatives ? 1 : 0));
  vgf_moments m{};
  check(vgf_density_moments(d.get(), &m));
  std::printf("density=%s points=%zu tail=%s mean=%s variance=%s kurtosis=%s\n", path.c_str(),
              vgf_density_size(d.get()), fmt6(vgf_density_tail(d.get())).c_str(), fmt6(m.mean).c_str(),
              fmt6(m.variance).c_str(), fmt6(m.kurtosis).c_str());
  return kOk;
}

int cmd_fit(const Options& o) {
  ensure_out_dir(o);
  Sample s = load_sample(o);
  const std::string tag = default_tag(o);
  check(vgf_sample_save(s.get(), artifact(o, tag + "_sample.csv").c_str()));
  const Run run = fit_and_test(o, vgf_sample_values(s.get()), vgf_sample_size(s.get()), tag, true);
  check(vgf_summary_save(&run.summary, artifact(o, tag + "_summary.json").c_str()));
  print_summary(run.summary);
  if (!run.converged)
    throw Failure{kNumeric, "not_converged", one_line(run.summary.stop_reason)};
  return kOk;
}

int cmd_ks(const Options& o) {
  ensure_out_dir(o);
  Sample s = load_sample(o);
  const double* y = vgf_sample_values(s.get());
  const std::size_t n = vgf_sample_size(s.get());
  Run run;
  if (!o.summary.empty()) {
    check(vgf_summary_load(o.summary.c_str(), &run.summary));
    vgf_summary& sum = run.summary;
    if (sum.model == VGF_MODEL_CLM) {
      check(vgf_ks_clm(y, n, sum.params.mu, sum.params.sigma, &sum.ks));
    } else {
      vgf_fit_options opts;
      vgf_fit_options_default(&opts);
      const vgf_grid g = grid_from(o, opts.grid);
      check(vgf_ks_vg(y, n, &sum.params, &g, &sum.ks));
    }
    sum.has_ks = 1;
    sum.sample_size = n;
  } else {
    run = fit_and_test(o, y, n, default_tag(o), false);
  }
  const vgf_summary& sum = run.summary;
  std::string table = header("ks");
  table += "tag,n,d_minus,d_plus,d_n,p_value\n";
  table += std::string(sum.tag) + "," + std::to_string(sum.ks.n) + "," + fmt(sum.ks.d_minus) + "," +
           fmt(sum.ks.d_plus) + "," + fmt(sum.ks.d_n) + "," + fmt(sum.ks.p_value) + "\n";
  check(vgf_write_text(artifact(o, std::string(sum.tag) + "_ks.csv").c_str(), table.c_str()));
  if (o.null_points > 0) {
    const double lo = o.null_lo > 0.0 ? o.null_lo : 0.2 / std::sqrt(static_cast<double>(n));
    const double hi = o.null_hi > 0.0 ? o.null_hi : std::min(0.999, 2.5 / std::sqrt(static_cast<double>(n)));
    if (!(hi > lo) || o.null_points < 2)
      throw Failure{kUsage, "argument", "null grid needs hi > lo and at least two points"};
    std::vector<double> grid(o.null_points);
    for (std::size_t i = 0; i < grid.size(); ++i)
      grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    check(vgf_ks_write_null_csv(n, grid.data(), grid.size(),
                                artifact(o, "ks_null_" + std::to_string(n) + ".csv").c_str()));
  }
  std::printf("tag=%s n=%zu d_minus=%s d_plus=%s d_n=%s p_value=%s\n", sum.tag, sum.ks.n,
              fmt6(sum.ks.d_minus).c_str(), fmt6(sum.ks.d_plus).c_str(), fmt6(sum.ks.d_n).c_str(),
              fmt6(sum.ks.p_value).c_str());
  return kOk;
}

int cmd_simulate(const Options& o) {
  ensure_out_dir(o);
  if (o.count < 1) throw Failure{kUsage, "argument", "--n must be at least 1"};
  std::vector<double> y(o.count);
  check(vgf_simulate(&o.params, o.count, o.seed, y.data()));
  vgf_sample* raw = nullptr;
  const std::string meta = "simulated VG mu=" + fmt(o.params.mu) + " delta=" + fmt(o.params.delta) +
                           " sigma=" + fmt(o.params.sigma) + " alpha=" + fmt(o.params.alpha) +
                           " theta=" + fmt(o.params.theta) + " seed=" + std::to_string(o.seed);
  check(vgf_sample_from_values(y.data(), y.size(), meta.c_str(), &raw));
  Sample s(raw, &vgf_sample_destroy);
  const std::string path = artifact(o, o.tag.empty() ? "simulated.csv" : o.tag + "_simulated.csv");
  check(vgf_sample_save(s.get(), path.c_str()));
  std::printf("sample=%s n=%zu seed=%llu\n", path.c_str(), o.count, static_cast<unsigned long long>(o.seed));
  return kOk;
}

int cmd_report(const Options& o) {
  ensure_out_dir(o);
  std::vector<std::string> files = o.summaries;
  if (files.empty()) {
    static const std::map<std::string, int> kOrder = {{"AVG1", 0}, {"SVG1", 1}, {"AVG2", 2}, {"SVG2", 3}, {"CLM", 4}};
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(o.out_dir, ec)) {
      const std::string name = entry.path().filename().string();
      const std::string suffix = "_summary.json";
      if (name.size() > suffix.size() && name.ends_with(suffix)) files.push_back(entry.path().string());
    }
    auto rank = [&](const std::string& path) {
      const std::string name = fs::path(path).filename().string();
      const auto it = kOrder.find(name.substr(0, name.size() - 13));
      return std::make_pair(it == kOrder.end() ? 5 : it->second, name);
    };
    std::sort(files.begin(), files.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
  }
  if (files.empty()) throw Failure{kData, "io", "no *_summary.json files to merge"};
  std::vector<const char*> paths;
  for (const auto& f : files) paths.push_back(f.c_str());
  const std::string out = artifact(o, "comparison.csv");
  check(vgf_report_merge(paths.data(), paths.size(), out.c_str()));
  std::printf("report=%s runs=%zu\n", out.c_str(), files.size());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variance-Gamma fitting by fractional FFT density inversion"};
  app.set_version_flag("--version", std::string("vgfrft ") + vgf_version());
  app.require_subcommand(1);
  Options o;

  auto* density = app.add_subcommand("density", "write a density/CDF grid as CSV");
  add_params(density, o);
  add_grid(density, o, true);
  density->add_flag("--derivatives", o.derivatives, "include first derivatives");
  density->add_option("--out-dir", o.out_dir, "output directory");
  density->add_option("--tag", o.tag, "file name prefix");

  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit; writes trace CSV and summary JSON");
  add_data(fit, o);
  fit->add_option("--model", o.model, "avg | svg | clm")->check(CLI::IsMember({"avg", "svg", "clm"}));
  fit->add_option("--init", o.init, "moments | default | explicit")
      ->check(CLI::IsMember({"moments", "default", "explicit"}));
  add_params(fit, o);
  add_grid(fit, o, true);
  fit->add_option("--max-iters", o.max_iters, "iteration limit")->check(CLI::PositiveNumber);
  fit->add_option("--grad-tol", o.grad_tol, "score-norm tolerance")->check(CLI::PositiveNumber);
  fit->add_option("--out-dir", o.out_dir, "output directory");
  fit->add_option("--tag", o.tag, "run tag (default from model and init)");

  auto* ks = app.add_subcommand("ks", "Kolmogorov-Smirnov test against a fitted model");
  add_data(ks, o);
  ks->add_option("--model", o.model, "avg | svg | clm")->check(CLI::IsMember({"avg", "svg", "clm"}));
  ks->add_option("--init", o.init, "moments | default | explicit")
      ->check(CLI::IsMember({"moments", "default", "explicit"}));
  add_params(ks, o);
  add_grid(ks, o, true);
  ks->add_option("--max-iters", o.max_iters, "iteration limit")->check(CLI::PositiveNumber);
  ks->add_option("--grad-tol", o.grad_tol, "score-norm tolerance")->check(CLI::PositiveNumber);
  ks->add_option("--summary", o.summary, "test the parameters of a saved fit instead of refitting")
      ->check(CLI::ExistingFile);
  ks->add_option("--null-points", o.null_points, "also write the null density on this many points");
  ks->add_option("--null-lo", o.null_lo, "null grid lower end");
  ks->add_option("--null-hi", o.null_hi, "null grid upper end");
  ks->add_option("--out-dir", o.out_dir, "output directory");
  ks->add_option("--tag", o.tag, "run tag");

  auto* simulate = app.add_subcommand("simulate", "draw a synthetic VG return sample");
  add_params(simulate, o);
  simulate->add_option("--n", o.count, "number of draws");
  simulate->add_option("--seed", o.seed, "random seed");
  simulate->add_option("--out-dir", o.out_dir, "output directory");
  simulate->add_option("--tag", o.tag, "file name prefix");

  auto* report = app.add_subcommand("report", "merge summaries into one comparison table");
  report->add_option("summaries", o.summaries, "summary JSON files (default: all in --out-dir)")
      ->check(CLI::ExistingFile);
  report->add_option("--out-dir", o.out_dir, "directory scanned for summaries and written to");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "vgfrft: error status=usage exit=1 message=%s\n", one_line(e.what()).c_str());
    return kUsage;
  }

  try {
    if (*density) return cmd_density(o);
    if (*fit) return cmd_fit(o);
    if (*ks) return cmd_ks(o);
    if (*simulate) return cmd_simulate(o);
    if (*report) return cmd_report(o);
  } catch (const Failure& f) {
    std::fprintf(stderr, "vgfrft: error status=%s exit=%d message=%s\n", f.status.c_str(), f.exit,
                 one_line(f.message).c_str());
    return f.exit;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vgfrft: error status=internal exit=3 message=%s\n", one_line(e.what()).c_str());
    return kNumeric;
  }
  return kUsage;
}
