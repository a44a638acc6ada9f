// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>

#include "generators.hpp"
#include "vgfrft/data_io.hpp"
#include "vgfrft/errors.hpp"

using namespace vgfrft;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("vgfrft_data_io_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

PriceSeries prices_from(const std::vector<double>& p) {
  PriceSeries s;
  s.source = "test";
  for (std::size_t i = 0; i < p.size(); ++i) {
    char date[16];
    std::snprintf(date, sizeof date, "2020-01-%02zu", i + 1);
    s.dates.emplace_back(date);
    s.prices.push_back(p[i]);
  }
  return s;
}

std::vector<IterationRow> sample_trace(std::size_t rows) {
  gen::Gen g(17);
  std::vector<IterationRow> out;
  for (std::size_t i = 0; i < rows; ++i) {
    IterationRow r;
    r.iteration = static_cast<int>(i) + 1;
    r.params = g.params();
    r.loglik = -3549.692 - g.uniform(0.0, 100.0) / 3.0;
    r.grad_norm = std::pow(10.0, g.uniform(-6.0, 3.0));
    r.step = i == 0 ? StepKind::initial : (i % 5 == 0 ? StepKind::gradient : StepKind::newton);
    r.halvings = static_cast<int>(i % 3);
    out.push_back(r);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- prices

TEST(Prices, WellFormedThreeRows) {
  const auto s = parse_prices("date,adjusted_close\n2020-01-02,100\n2020-01-03,101.5\n2020-01-06,99.25\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.dates[2], "2020-01-06");
  EXPECT_DOUBLE_EQ(s.prices[1], 101.5);
  EXPECT_TRUE(s.rejected.empty());
}

TEST(Prices, YahooLayoutIsDetected) {
  const std::string text =
      "Date,Open,High,Low,Close,Adj Close,Volume\n"
      "2010-01-04,112.37,113.39,111.51,113.33,92.246,118944600\n"
      "2010-01-05,113.26,113.68,112.85,113.63,92.490,111579900\n"
      "2010-01-06,113.52,113.99,113.43,113.71,92.555,116074400\n";
  const auto s = parse_prices(text);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s.prices[0], 92.246);
  EXPECT_EQ(parse_prices(text, PriceFormat::yahoo).size(), 3u);
  EXPECT_EQ(code_of([&] { parse_prices(text, PriceFormat::simple); }), ErrorCode::parse);
}

TEST(Prices, ZeroPriceIsRejectedByLine) {
  const auto s = parse_prices("date,adjusted_close\n2020-01-02,100\n2020-01-03,0\n2020-01-06,99\n");
  EXPECT_EQ(s.size(), 2u);
  ASSERT_EQ(s.rejected.size(), 1u);
  EXPECT_EQ(s.rejected[0].line, 3u);
  EXPECT_EQ(s.rejected[0].date, "2020-01-03");
  EXPECT_NE(s.rejected[0].reason.find("non-positive"), std::string::npos);
}

TEST(Prices, MissingTokensAreRejectedNotDropped) {
  const std::string text =
      "# comment\n"
      "date,adjusted_close\n"
      "2020-01-02,100\n"
      "2020-01-03,null\n"
      "2020-01-06,\n"
      "2020-01-07,NA\n"
      "\n"
      "2020-01-08,-5\n"
      "2020-01-09,98\n";
  const auto s = parse_prices(text);
  EXPECT_EQ(s.size(), 2u);
  ASSERT_EQ(s.rejected.size(), 4u);
  std::vector<std::size_t> lines;
  for (const auto& r : s.rejected) lines.push_back(r.line);
  EXPECT_EQ(lines, (std::vector<std::size_t>{4, 5, 6, 8}));
  // Every data row is either kept or reported.
  EXPECT_EQ(s.size() + s.rejected.size(), 6u);
}

TEST(Prices, MalformedRowIsParseErrorWithLine) {
  const std::string bad_price = "date,adjusted_close\n2020-01-02,100\n2020-01-03,abc\n";
  EXPECT_EQ(code_of([&] { parse_prices(bad_price, PriceFormat::automatic, "px.csv"); }), ErrorCode::parse);
  EXPECT_NE(message_of([&] { parse_prices(bad_price, PriceFormat::automatic, "px.csv"); }).find("px.csv:3"),
            std::string::npos);
  EXPECT_EQ(code_of([] { parse_prices("date,adjusted_close\n2020-01-02,100,7\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_prices("date,adjusted_close\n02/01/2020,100\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_prices("date,adjusted_close\n2020-13-02,100\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_prices("when,price\n2020-01-02,100\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_prices(""); }), ErrorCode::parse);
}

TEST(Prices, UnsortedDatesAreOrderingError) {
  EXPECT_EQ(code_of([] { parse_prices("date,adjusted_close\n2020-01-03,100\n2020-01-02,101\n"); }),
            ErrorCode::ordering);
  EXPECT_EQ(code_of([] { parse_prices("date,adjusted_close\n2020-01-03,100\n2020-01-03,101\n"); }),
            ErrorCode::ordering);
}

TEST(Prices, CrlfAndFileLoading) {
  TempDir dir;
  const std::string path = dir.file("px.csv");
  write_text_file(path, "date,adjusted_close\r\n2020-01-02,100\r\n2020-01-03,102\r\n");
  const auto s = load_prices(path);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.source, path);
  EXPECT_EQ(code_of([&] { load_prices(dir.file("absent.csv")); }), ErrorCode::io);
}

TEST(Prices, FormatNames) {
  EXPECT_EQ(parse_price_format("auto"), PriceFormat::automatic);
  EXPECT_EQ(parse_price_format("yahoo"), PriceFormat::yahoo);
  EXPECT_EQ(code_of([] { parse_price_format("excel"); }), ErrorCode::argument);
}

// --------------------------------------------------------------- returns

TEST(Returns, FlatPriceGivesZero) {
  const auto r = log_returns(prices_from({100.0, 100.0}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.values[0], 0.0);
}

TEST(Returns, PercentScale) {
  const auto r = log_returns(prices_from({100.0, 101.0}));
  EXPECT_NEAR(r.values[0], 0.995033, 1e-6);
  EXPECT_EQ(r.dates[0], "2020-01-02");
  EXPECT_NEAR(log_returns(prices_from({100.0, 101.0}), 1.0).values[0], std::log(1.01), 1e-16);
}

TEST(Returns, CountIsOneLessThanPrices) {
  std::vector<double> p(2768, 100.0);
  for (std::size_t i = 1; i < p.size(); ++i) p[i] = p[i - 1] * (1.0 + 0.001 * std::sin(static_cast<double>(i)));
  PriceSeries s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s.dates.push_back(std::to_string(10000 + i));
    s.prices.push_back(p[i]);
  }
  const auto r = log_returns(s);
  EXPECT_EQ(r.size(), 2767u);
  EXPECT_EQ(r.positions.back(), 2766u);
}

TEST(Returns, CumulativeExponentiationRoundTrip) {
  gen::Gen g(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> y(500);
    for (auto& v : y) v = g.normal();
    std::vector<double> p{100.0};
    for (double v : y) p.push_back(p.back() * std::exp(v / 100.0));
    const auto back = log_returns(prices_from(std::vector<double>(p.begin(), p.begin() + 32))).values;
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], y[i], 1e-12);
  }
}

TEST(Returns, NeedTwoPrices) {
  EXPECT_EQ(code_of([] { log_returns(prices_from({100.0})); }), ErrorCode::size);
  EXPECT_EQ(code_of([] { log_returns(prices_from({100.0, 101.0}), 0.0); }), ErrorCode::argument);
}

// -------------------------------------------------------------- outliers

TEST(Outliers, NoneIsIdentity) {
  const auto s = make_sample({1.0, -2.0, 3.0}, "raw");
  const auto f = filter_outliers(s, OutlierRule::parse("none"));
  EXPECT_EQ(f.values, s.values);
  EXPECT_TRUE(f.removed.empty());
}

TEST(Outliers, SingleFiftySigmaPointUnderZRule) {
  gen::Gen g(4);
  std::vector<double> y(1000);
  for (auto& v : y) v = g.normal();
  y[417] = 50.0;
  const auto f = filter_outliers(make_sample(y, "raw"), OutlierRule::parse("z:6"));
  ASSERT_EQ(f.removed.size(), 1u);
  EXPECT_EQ(f.removed[0].index, 417u);
  EXPECT_EQ(f.removed[0].value, 50.0);
  EXPECT_EQ(f.size(), 999u);
}

TEST(Outliers, AbsRuleRecordsReasonAndDate) {
  ReturnSample s = log_returns(prices_from({100, 101, 90, 91, 92, 93, 94, 95, 96, 97, 98, 99, 100, 101, 102,
                                            103, 104, 105, 106, 107, 108, 109, 110}));
  const auto f = filter_outliers(s, OutlierRule::parse("abs:5"));
  ASSERT_EQ(f.removed.size(), 1u);
  EXPECT_EQ(f.removed[0].index, 1u);
  EXPECT_EQ(f.removed[0].date, "2020-01-03");
  EXPECT_NE(f.removed[0].reason.find("|y| >"), std::string::npos);
  EXPECT_EQ(f.dates.size(), f.values.size());
}

TEST(Outliers, IdempotentForEachRule) {
  gen::Gen g(5);
  std::vector<double> y(2000);
  for (auto& v : y) v = g.normal() * (g.uniform(0.0, 1.0) < 0.02 ? 6.0 : 1.0);
  const auto s = make_sample(y, "raw");
  for (const char* text : {"abs:3.5", "z:4", "count:13"}) {
    const OutlierRule rule = OutlierRule::parse(text);
    const auto once = filter_outliers(s, rule);
    const auto twice = filter_outliers(once, rule);
    EXPECT_EQ(twice.values, once.values) << text;
    EXPECT_EQ(twice.removed.size(), once.removed.size()) << text;
  }
  EXPECT_EQ(filter_outliers(s, OutlierRule::parse("count:13")).removed.size(), 13u);
}

TEST(Outliers, CountRuleThreshold) {
  const std::vector<double> y{0.5, -4.0, 1.0, 3.0, -0.2, 2.0};
  EXPECT_DOUBLE_EQ(threshold_for_count(y, 2), 2.5);
  EXPECT_EQ(code_of([] { threshold_for_count(std::vector<double>{1.0, -2.0, 2.0, 0.5}, 1); }),
            ErrorCode::degenerate);
  EXPECT_EQ(code_of([&] { threshold_for_count(y, 6); }), ErrorCode::argument);
}

TEST(Outliers, RefusesMoreThanFivePercent) {
  std::vector<double> y(100, 0.1);
  for (std::size_t i = 0; i < 6; ++i) y[i * 10] = 10.0 + static_cast<double>(i);
  const auto s = make_sample(y, "raw");
  EXPECT_EQ(code_of([&] { filter_outliers(s, OutlierRule::parse("abs:5")); }), ErrorCode::outlier_limit);
  EXPECT_EQ(filter_outliers(s, OutlierRule::parse("abs:5"), true).removed.size(), 6u);
  y[50] = 0.1;
  EXPECT_EQ(filter_outliers(make_sample(y, "raw"), OutlierRule::parse("abs:5")).removed.size(), 5u);
}

TEST(Outliers, RuleParsing) {
  EXPECT_EQ(OutlierRule::parse("abs:3.5").describe(), "abs:3.5");
  EXPECT_EQ(OutlierRule::parse("z:6").kind, OutlierRule::Kind::z);
  EXPECT_EQ(OutlierRule::parse("count:13").count, 13u);
  for (const char* bad : {"abs", "abs:-1", "z:0", "count:0", "count:1.5", "mad:3", "abs:x"})
    EXPECT_EQ(code_of([&] { OutlierRule::parse(bad); }), ErrorCode::argument) << bad;
}

// ------------------------------------------------------------- artifacts

TEST(Artifacts, HeaderAndFormatting) {
  EXPECT_EQ(artifact_header("trace"), "# vgfrft " + version_string() + " trace\n");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_double(-3549.6921234567891)), -3549.6921234567891);
}

TEST(Artifacts, SampleRoundTrip) {
  TempDir dir;
  ReturnSample s = log_returns(prices_from({100, 101, 90, 91, 92.5, 93, 94, 95, 96, 97, 98, 99, 100, 101, 102,
                                            103, 104, 105, 106, 107, 108, 109, 110}));
  s = filter_outliers(s, OutlierRule::parse("abs:5"));
  save_sample(dir.file("s.csv"), s);
  const ReturnSample back = load_sample(dir.file("s.csv"));
  EXPECT_EQ(back.values, s.values);
  EXPECT_EQ(back.dates, s.dates);
  EXPECT_EQ(back.positions, s.positions);
  ASSERT_EQ(back.removed.size(), 1u);
  EXPECT_EQ(back.removed[0].index, s.removed[0].index);
  EXPECT_EQ(back.removed[0].value, s.removed[0].value);
}

TEST(Artifacts, PlainValueListLoads) {
  TempDir dir;
  write_text_file(dir.file("v.txt"), "value\n0.5\n-1.25\n\n3\n");
  const auto s = load_sample(dir.file("v.txt"));
  EXPECT_EQ(s.values, (std::vector<double>{0.5, -1.25, 3.0}));
  write_text_file(dir.file("bad.txt"), "0.5\nfoo\n");
  EXPECT_EQ(code_of([&] { load_sample(dir.file("bad.txt")); }), ErrorCode::parse);
}

TEST(Artifacts, TraceRoundTripIsExact) {
  TempDir dir;
  const auto rows = sample_trace(21);
  save_trace(dir.file("t.csv"), rows);
  const auto back = load_trace(dir.file("t.csv"));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].iteration, rows[i].iteration);
    const auto a = rows[i].params.to_array();
    const auto b = back[i].params.to_array();
    for (std::size_t j = 0; j < kNumParams; ++j) EXPECT_NEAR(b[j], a[j], 1e-12 * std::max(1.0, std::abs(a[j])));
    EXPECT_NEAR(back[i].loglik, rows[i].loglik, 1e-12 * std::abs(rows[i].loglik));
    EXPECT_NEAR(back[i].grad_norm, rows[i].grad_norm, 1e-12 * rows[i].grad_norm);
    EXPECT_EQ(back[i].step, rows[i].step);
    EXPECT_EQ(back[i].halvings, rows[i].halvings);
  }
}

TEST(Artifacts, TwentyOneIterationsGiveTwentyOneRows) {
  const std::string csv = trace_csv(sample_trace(21));
  std::size_t data_rows = 0;
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      EXPECT_EQ(line, "iteration,mu,delta,sigma,alpha,theta,loglik,grad_norm,step,halvings");
      header_seen = true;
      continue;
    }
    ++data_rows;
  }
  EXPECT_EQ(data_rows, 21u);
}

TEST(Artifacts, EmptyTraceIsHeaderOnly) {
  const std::string csv = trace_csv({});
  EXPECT_EQ(csv, artifact_header("trace") + "iteration,mu,delta,sigma,alpha,theta,loglik,grad_norm,step,halvings\n");
  EXPECT_TRUE(parse_trace(csv).empty());
}

TEST(Artifacts, MalformedTraceIsParseError) {
  const std::string csv = trace_csv(sample_trace(2)) + "3,0.1,0.2\n";
  EXPECT_EQ(code_of([&] { parse_trace(csv, "t.csv"); }), ErrorCode::parse);
}

TEST(Artifacts, SummaryRoundTripIsExact) {
  TempDir dir;
  RunSummary s;
  s.tag = "AVG2";
  s.model = ModelTag::avg;
  s.init = "default";
  s.params = {0.08477, -0.05774, 1.02948, 0.8845, 0.9378};
  s.loglik = -3549.6921234567;
  s.converged = true;
  s.iterations = 21;
  s.grad_norm = 4.01e-5;
  s.stop_reason = "score norm below tolerance";
  s.sample_size = 2755;
  s.hessian_condition = 3.2e11;
  s.ks = KsResult{0.021986, 0.023629, 0.023629, 0.090788, 2755};
  save_summary(dir.file("s.json"), s);
  const RunSummary b = load_summary(dir.file("s.json"));
  EXPECT_EQ(b.tag, s.tag);
  EXPECT_EQ(b.model, s.model);
  EXPECT_EQ(b.init, s.init);
  const auto pa = s.params.to_array();
  const auto pb = b.params.to_array();
  for (std::size_t j = 0; j < kNumParams; ++j) EXPECT_NEAR(pb[j], pa[j], 1e-12);
  EXPECT_NEAR(b.loglik, s.loglik, 1e-12 * std::abs(s.loglik));
  EXPECT_EQ(b.converged, s.converged);
  EXPECT_EQ(b.iterations, s.iterations);
  EXPECT_NEAR(b.grad_norm, s.grad_norm, 1e-20);
  EXPECT_EQ(b.stop_reason, s.stop_reason);
  EXPECT_EQ(b.sample_size, s.sample_size);
  EXPECT_NEAR(b.hessian_condition, s.hessian_condition, 1e-12 * s.hessian_condition);
  ASSERT_TRUE(b.ks.has_value());
  EXPECT_NEAR(b.ks->d_n, 0.023629, 1e-15);
  EXPECT_NEAR(b.ks->p_value, 0.090788, 1e-15);
  EXPECT_EQ(b.ks->n, 2755u);
}

TEST(Artifacts, SummaryNonFiniteValuesSurvive) {
  RunSummary s;
  s.tag = "CLM";
  s.model = ModelTag::clm;
  s.hessian_condition = std::numeric_limits<double>::infinity();
  const auto json = nlohmann::json::parse(summary_json(s));
  EXPECT_TRUE(json.contains("generator"));
  const RunSummary b = parse_summary(summary_json(s));
  EXPECT_FALSE(b.ks.has_value());
  EXPECT_FALSE(std::isfinite(b.hessian_condition));
}

TEST(Artifacts, ComparisonTableRows) {
  RunSummary a;
  a.tag = "SVG2";
  a.model = ModelTag::svg;
  a.sample_size = 10;
  a.ks = KsResult{0.1, 0.2, 0.2, 0.5, 10};
  RunSummary c;
  c.tag = "CLM";
  c.model = ModelTag::clm;
  const std::vector<RunSummary> runs{a, c};
  const std::string table = comparison_table(runs);
  EXPECT_NE(table.find("tag,model,mu,delta,sigma,alpha,theta,loglik,n,d_n,p_value"), std::string::npos);
  EXPECT_NE(table.find("\nSVG2,SVG,"), std::string::npos);
  EXPECT_NE(table.find("\nCLM,CLM,"), std::string::npos);
}

TEST(Artifacts, IoErrorsNamePath) {
  TempDir dir;
  const std::string missing = dir.file("nope/deeper/file.csv");
  EXPECT_EQ(code_of([&] { write_text_file(missing, "x"); }), ErrorCode::io);
  EXPECT_NE(message_of([&] { read_text_file(missing); }).find(missing), std::string::npos);
  EXPECT_EQ(code_of([&] { load_summary(dir.file("absent.json")); }), ErrorCode::io);
  write_text_file(dir.file("bad.json"), "{not json");
  EXPECT_EQ(code_of([&] { load_summary(dir.file("bad.json")); }), ErrorCode::parse);
}

TEST(Artifacts, DensityAndKsCsvShapes) {
  const DensityGrid dg = density_grid({0.0, 0.1, 1.0, 2.0, 1.0}, FrftGrid::make(128.0, 1024, 40.0 / 1024.0), 1);
  const auto cdf = cdf_grid(dg);
  const std::string csv = density_csv(dg, cdf, true);
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  std::string header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(header, "x,f,cdf,df_mu,df_delta,df_sigma,df_alpha,df_theta");
  EXPECT_EQ(rows, 1024u);
  const std::vector<double> grid{0.1, 0.2};
  const std::vector<double> pdf{1.0, 2.0};
  const std::vector<double> kcdf{0.3, 0.4};
  EXPECT_NE(ks_density_csv(50, grid, pdf, kcdf).find("d,pdf,cdf\n"), std::string::npos);
}
