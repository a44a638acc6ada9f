// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_DATA_IO_HPP
#define VGFRFT_DATA_IO_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vgfrft/gof_ks.hpp"
#include "vgfrft/optimizer.hpp"

namespace vgfrft {

// ---------------------------------------------------------------- prices

enum class PriceFormat {
  automatic,  // pick by header
  simple,     // date,adjusted_close
  yahoo,      // Date,Open,High,Low,Close,Adj Close,Volume
};

PriceFormat parse_price_format(std::string_view name);

struct RejectedRow {
  std::size_t line = 0;  // 1-based line in the source file
  std::string date;
  std::string reason;
};

struct PriceSeries {
  std::vector<std::string> dates;  // ISO-8601, strictly increasing
  std::vector<double> prices;      // adjusted close, > 0
  std::vector<RejectedRow> rejected;
  std::string source;

  std::size_t size() const noexcept { return prices.size(); }
};

/// Rows with a missing or non-positive price are skipped and listed in
/// `rejected`. A row that cannot be parsed raises ErrorCode::parse naming the
/// line; dates that do not strictly increase raise ErrorCode::ordering.
PriceSeries parse_prices(std::string_view text, PriceFormat format = PriceFormat::automatic,
                         std::string source = "<memory>");
PriceSeries load_prices(const std::string& path, PriceFormat format = PriceFormat::automatic);

// --------------------------------------------------------------- returns

struct RemovedObservation {
  std::size_t index = 0;  // position in the unfiltered return series
  double value = 0.0;
  std::string reason;
  std::string date;
};

struct ReturnSample {
  std::vector<double> values;
  std::vector<std::string> dates;      // empty when the sample has no calendar
  std::vector<std::size_t> positions;  // index of each value in the unfiltered series
  std::vector<RemovedObservation> removed;
  std::string source_meta;

  std::size_t size() const noexcept { return values.size(); }
};

/// Wraps raw values; positions are 0..n-1 and no dates are attached.
ReturnSample make_sample(std::vector<double> values, std::string source_meta);

/// y_j = scale * ln(S_j / S_{j-1}), dated by the later price.
ReturnSample log_returns(const PriceSeries& prices, double scale = 100.0);

struct OutlierRule {
  enum class Kind { none, abs, z, count };
  Kind kind = Kind::none;
  double threshold = 0.0;  // |y| > t for abs, |y - mean| > t * sd for z
  std::size_t count = 0;   // for Kind::count

  /// none | abs:T | z:K | count:N
  static OutlierRule parse(std::string_view text);
  std::string describe() const;
};

inline constexpr double kMaxOutlierFraction = 0.05;

/// Removes flagged observations, recording index, value and reason. The z rule
/// is iterated until no further point is flagged so that reapplying it is a
/// no-op. count:N resolves to the abs threshold that flags exactly N points
/// of the unfiltered series (kept values plus those already removed).
/// Removing more than 5% raises ErrorCode::outlier_limit unless
/// `allow_excess` is set.
ReturnSample filter_outliers(const ReturnSample& sample, const OutlierRule& rule,
                             bool allow_excess = false);

/// Midpoint between the N-th and (N+1)-th largest |y|; raises
/// ErrorCode::degenerate when those magnitudes tie.
double threshold_for_count(std::span<const double> values, std::size_t count);

// ------------------------------------------------------------ artifacts

std::string version_string();

/// `# vgfrft <version> <kind>` header line shared by every CSV artifact.
std::string artifact_header(std::string_view kind);

/// %.17g, so every double survives a text round trip.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

/// index,date,value
void save_sample(const std::string& path, const ReturnSample& sample);
/// Reads save_sample output or a file with one number per line.
ReturnSample load_sample(const std::string& path);

/// iteration,mu,delta,sigma,alpha,theta,loglik,grad_norm,step,halvings
std::string trace_csv(std::span<const IterationRow> rows);
void save_trace(const std::string& path, std::span<const IterationRow> rows);
std::vector<IterationRow> parse_trace(std::string_view text, const std::string& source = "<memory>");
std::vector<IterationRow> load_trace(const std::string& path);

struct RunSummary {
  std::string tag;  // AVG1, SVG2, CLM, ...
  ModelTag model = ModelTag::avg;
  std::string init;
  VgParams params;  // CLM uses mu and sigma only
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
  std::string stop_reason;
  std::size_t sample_size = 0;
  double hessian_condition = 0.0;
  std::optional<KsResult> ks;
};

std::string summary_json(const RunSummary& summary);
RunSummary parse_summary(std::string_view text, const std::string& source = "<memory>");
void save_summary(const std::string& path, const RunSummary& summary);
RunSummary load_summary(const std::string& path);

/// One row per run: tag,model,mu,delta,sigma,alpha,theta,loglik,n,d_n,p_value.
std::string comparison_table(std::span<const RunSummary> runs);

/// x,f[,cdf][,df_mu..df_theta]
std::string density_csv(const DensityGrid& dg, std::span<const double> cdf, bool derivatives);

/// d,pdf,cdf of the KS null law.
std::string ks_density_csv(std::size_t n, std::span<const double> grid,
                           std::span<const double> pdf, std::span<const double> cdf);

}  // namespace vgfrft

#endif  // VGFRFT_DATA_IO_HPP
