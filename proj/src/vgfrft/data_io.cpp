// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "vgfrft/errors.hpp"

namespace vgfrft {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

bool blank_or_comment(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool valid_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (s[i] < '0' || s[i] > '9') return false;
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

bool missing_token(std::string_view s) {
  return s.empty() || s == "null" || s == "NA" || s == "NaN" || s == "nan" || s == ".";
}

[[noreturn]] void parse_failure(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  raise(ErrorCode::parse, msg.str());
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_sd(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

// ---------------------------------------------------------------- prices

PriceFormat parse_price_format(std::string_view name) {
  if (name == "auto") return PriceFormat::automatic;
  if (name == "simple") return PriceFormat::simple;
  if (name == "yahoo") return PriceFormat::yahoo;
  raise(ErrorCode::argument, "unknown price format '" + std::string(name) + "' (auto|simple|yahoo)");
}

PriceSeries parse_prices(std::string_view text, PriceFormat format, std::string source) {
  const auto lines = split_lines(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && blank_or_comment(lines[header_line])) ++header_line;
  if (header_line == lines.size()) parse_failure(source, 1, "no header row");

  const auto header = split_fields(lines[header_line]);
  std::vector<std::string> names;
  for (auto h : header) names.push_back(lower(h));
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  };

  std::optional<std::size_t> date_col = column("date");
  std::optional<std::size_t> price_col;
  if (format == PriceFormat::automatic)
    format = column("adj close") ? PriceFormat::yahoo : PriceFormat::simple;
  price_col = format == PriceFormat::yahoo ? column("adj close") : column("adjusted_close");
  if (!date_col || !price_col) {
    parse_failure(source, header_line + 1,
                  format == PriceFormat::yahoo ? "header lacks 'Date' and 'Adj Close' columns"
                                               : "header must be 'date,adjusted_close'");
  }

  PriceSeries series;
  series.source = std::move(source);
  std::string previous_date;
  std::size_t previous_line = 0;
  for (std::size_t i = header_line + 1; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != header.size()) {
      std::ostringstream what;
      what << "expected " << header.size() << " fields, found " << fields.size();
      parse_failure(series.source, line_no, what.str());
    }
    const std::string_view date = fields[*date_col];
    if (!valid_iso_date(date))
      parse_failure(series.source, line_no, "date '" + std::string(date) + "' is not YYYY-MM-DD");
    if (!previous_date.empty() && std::string(date) <= previous_date) {
      std::ostringstream msg;
      msg << series.source << ":" << line_no << ": date " << date << " does not follow "
          << previous_date << " (line " << previous_line << ")";
      raise(ErrorCode::ordering, msg.str());
    }
    previous_date = std::string(date);
    previous_line = line_no;

    const std::string_view price_text = fields[*price_col];
    if (missing_token(price_text)) {
      series.rejected.push_back({line_no, std::string(date), "missing price"});
      continue;
    }
    const auto price = to_double(price_text);
    if (!price || !std::isfinite(*price))
      parse_failure(series.source, line_no, "price '" + std::string(price_text) + "' is not a number");
    if (*price <= 0.0) {
      series.rejected.push_back({line_no, std::string(date), "non-positive price " + std::string(price_text)});
      continue;
    }
    series.dates.emplace_back(date);
    series.prices.push_back(*price);
  }
  return series;
}

PriceSeries load_prices(const std::string& path, PriceFormat format) {
  return parse_prices(read_text_file(path), format, path);
}

// --------------------------------------------------------------- returns

ReturnSample make_sample(std::vector<double> values, std::string source_meta) {
  ReturnSample s;
  s.positions.resize(values.size());
  std::iota(s.positions.begin(), s.positions.end(), std::size_t{0});
  s.values = std::move(values);
  s.source_meta = std::move(source_meta);
  return s;
}

ReturnSample log_returns(const PriceSeries& prices, double scale) {
  require(prices.size() >= 2, ErrorCode::size, "log returns need at least two prices");
  require(std::isfinite(scale) && scale > 0.0, ErrorCode::argument, "return scale must be positive");
  std::vector<double> values(prices.size() - 1);
  for (std::size_t j = 1; j < prices.size(); ++j)
    values[j - 1] = scale * std::log(prices.prices[j] / prices.prices[j - 1]);
  std::ostringstream meta;
  meta << "log returns x" << format_double(scale) << " of " << prices.source << " (" << prices.size()
       << " prices, " << prices.rejected.size() << " rows rejected)";
  ReturnSample s = make_sample(std::move(values), meta.str());
  s.dates.assign(prices.dates.begin() + 1, prices.dates.end());
  return s;
}

OutlierRule OutlierRule::parse(std::string_view text) {
  OutlierRule rule;
  if (text == "none") return rule;
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    raise(ErrorCode::argument, "outlier rule '" + std::string(text) + "' must be none, abs:T, z:K or count:N");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (kind == "count") {
    const auto n = to_integer(arg);
    require(n && *n > 0, ErrorCode::argument, "count:N needs a positive integer");
    rule.kind = Kind::count;
    rule.count = static_cast<std::size_t>(*n);
    return rule;
  }
  const auto v = to_double(arg);
  require(v && std::isfinite(*v) && *v > 0.0, ErrorCode::argument,
          "outlier threshold must be a positive number");
  if (kind == "abs")
    rule.kind = Kind::abs;
  else if (kind == "z")
    rule.kind = Kind::z;
  else
    raise(ErrorCode::argument, "unknown outlier rule '" + std::string(kind) + "'");
  rule.threshold = *v;
  return rule;
}

std::string OutlierRule::describe() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::abs:
      return "abs:" + format_double(threshold);
    case Kind::z:
      return "z:" + format_double(threshold);
    case Kind::count:
      return "count:" + std::to_string(count);
  }
  return "none";
}

double threshold_for_count(std::span<const double> values, std::size_t count) {
  require(count < values.size(), ErrorCode::argument, "outlier count must be below the sample size");
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double upper = mags[count - 1];
  const double lower = mags[count];
  require(upper > lower, ErrorCode::degenerate,
          "tied magnitudes at the outlier boundary; no threshold flags exactly that count");
  return 0.5 * (upper + lower);
}

ReturnSample filter_outliers(const ReturnSample& sample, const OutlierRule& rule, bool allow_excess) {
  if (rule.kind == OutlierRule::Kind::none) return sample;
  require(!sample.values.empty(), ErrorCode::size, "cannot filter an empty sample");

  std::vector<bool> drop(sample.size(), false);
  std::vector<std::string> reason(sample.size());
  const bool dated = sample.dates.size() == sample.size();

  if (rule.kind == OutlierRule::Kind::z) {
    while (true) {
      std::vector<double> kept;
      for (std::size_t i = 0; i < sample.size(); ++i)
        if (!drop[i]) kept.push_back(sample.values[i]);
      if (kept.size() < 2) break;
      const double m = mean_of(kept);
      const double sd = population_sd(kept, m);
      if (!(sd > 0.0)) break;
      bool flagged = false;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        if (drop[i]) continue;
        const double z = (sample.values[i] - m) / sd;
        if (std::abs(z) > rule.threshold) {
          drop[i] = true;
          reason[i] = "|z| = " + format_double(std::abs(z)) + " > " + format_double(rule.threshold);
          flagged = true;
        }
      }
      if (!flagged) break;
    }
  } else {
    double t = rule.threshold;
    if (rule.kind == OutlierRule::Kind::count) {
      // Ranked over the unfiltered series so that reapplying the rule is a no-op.
      std::vector<double> all = sample.values;
      for (const auto& r : sample.removed) all.push_back(r.value);
      t = threshold_for_count(all, rule.count);
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (std::abs(sample.values[i]) > t) {
        drop[i] = true;
        reason[i] = "|y| > " + format_double(t);
      }
    }
  }

  const std::size_t removed = static_cast<std::size_t>(std::count(drop.begin(), drop.end(), true));
  if (!allow_excess &&
      static_cast<double>(removed) > kMaxOutlierFraction * static_cast<double>(sample.size())) {
    std::ostringstream msg;
    msg << "outlier rule " << rule.describe() << " would remove " << removed << " of "
        << sample.size() << " observations (more than 5%); pass an explicit override to proceed";
    raise(ErrorCode::outlier_limit, msg.str());
  }

  ReturnSample out;
  out.source_meta = sample.source_meta + "; outliers " + rule.describe();
  out.removed = sample.removed;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (drop[i]) {
      out.removed.push_back(
          {sample.positions[i], sample.values[i], reason[i], dated ? sample.dates[i] : std::string()});
      continue;
    }
    out.values.push_back(sample.values[i]);
    out.positions.push_back(sample.positions[i]);
    if (dated) out.dates.push_back(sample.dates[i]);
  }
  return out;
}

// ------------------------------------------------------------ artifacts

std::string version_string() { return VGFRFT_VERSION_STRING; }

std::string artifact_header(std::string_view kind) {
  return "# vgfrft " + version_string() + " " + std::string(kind) + "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) raise(ErrorCode::io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) raise(ErrorCode::io, "failed reading '" + path + "'");
  return buf.str();
}

void save_sample(const std::string& path, const ReturnSample& sample) {
  std::string out = artifact_header("sample");
  out += "# " + sample.source_meta + "\n";
  for (const auto& r : sample.removed)
    out += "# removed index=" + std::to_string(r.index) + " date=" + r.date +
           " value=" + format_double(r.value) + " reason=" + r.reason + "\n";
  out += "index,date,value\n";
  const bool dated = sample.dates.size() == sample.size();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out += std::to_string(sample.positions.size() == sample.size() ? sample.positions[i] : i);
    out += ',';
    if (dated) out += sample.dates[i];
    out += ',';
    out += format_double(sample.values[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

namespace {

// Parses "index=I date=D value=V reason=R"; the reason runs to end of line.
RemovedObservation parse_removed(std::string_view body, const std::string& path, std::size_t line) {
  const auto field = [&](std::string_view key, bool to_end) -> std::string {
    const std::string tag = std::string(key) + "=";
    const auto at = body.find(tag);
    if (at == std::string_view::npos) parse_failure(path, line, "removed record lacks '" + tag + "'");
    const auto start = at + tag.size();
    const auto stop = to_end ? body.size() : body.find(' ', start);
    return std::string(body.substr(start, stop == std::string_view::npos ? body.size() - start : stop - start));
  };
  RemovedObservation r;
  const auto idx = to_integer(field("index", false));
  const auto v = to_double(field("value", false));
  if (!idx || *idx < 0 || !v) parse_failure(path, line, "malformed removed record");
  r.index = static_cast<std::size_t>(*idx);
  r.date = field("date", false);
  r.value = *v;
  r.reason = field("reason", true);
  return r;
}

}  // namespace

ReturnSample load_sample(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto lines = split_lines(text);
  ReturnSample s;
  s.source_meta = path;
  bool three_columns = false;
  bool header_seen = false;
  constexpr std::string_view kRemoved = "# removed ";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].starts_with(kRemoved)) {
      s.removed.push_back(parse_removed(lines[i].substr(kRemoved.size()), path, i + 1));
      continue;
    }
    if (blank_or_comment(lines[i])) continue;
    const auto fields = split_fields(lines[i]);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 3 && fields[0] == "index" && fields[2] == "value") {
        three_columns = true;
        continue;
      }
      if (fields.size() == 1 && !to_double(fields[0]) && lower(fields[0]) == "value") continue;
    }
    if (three_columns) {
      if (fields.size() != 3) parse_failure(path, i + 1, "expected index,date,value");
      const auto idx = to_integer(fields[0]);
      const auto v = to_double(fields[2]);
      if (!idx || *idx < 0 || !v) parse_failure(path, i + 1, "malformed sample row");
      if (!std::isfinite(*v)) parse_failure(path, i + 1, "non-finite sample value");
      s.positions.push_back(static_cast<std::size_t>(*idx));
      s.dates.emplace_back(fields[1]);
      s.values.push_back(*v);
    } else {
      if (fields.size() != 1) parse_failure(path, i + 1, "expected one value per line");
      const auto v = to_double(fields[0]);
      if (!v || !std::isfinite(*v)) parse_failure(path, i + 1, "malformed sample value");
      s.positions.push_back(s.values.size());
      s.values.push_back(*v);
    }
  }
  if (std::all_of(s.dates.begin(), s.dates.end(), [](const std::string& d) { return d.empty(); }))
    s.dates.clear();
  require(!s.values.empty(), ErrorCode::size, "sample file '" + path + "' has no observations");
  return s;
}

std::string trace_csv(std::span<const IterationRow> rows) {
  std::string out = artifact_header("trace");
  out += "iteration,mu,delta,sigma,alpha,theta,loglik,grad_norm,step,halvings\n";
  for (const auto& r : rows) {
    out += std::to_string(r.iteration);
    for (double v : r.params.to_array()) out += "," + format_double(v);
    out += "," + format_double(r.loglik) + "," + format_double(r.grad_norm) + ",";
    out += step_kind_name(r.step);
    out += "," + std::to_string(r.halvings) + "\n";
  }
  return out;
}

void save_trace(const std::string& path, std::span<const IterationRow> rows) {
  write_text_file(path, trace_csv(rows));
}

std::vector<IterationRow> parse_trace(std::string_view text, const std::string& source) {
  const auto lines = split_lines(text);
  std::vector<IterationRow> rows;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    const auto fields = split_fields(lines[i]);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 10 || fields[0] != "iteration")
        parse_failure(source, i + 1, "not a trace header");
      continue;
    }
    if (fields.size() != 10) parse_failure(source, i + 1, "expected 10 trace fields");
    IterationRow r;
    const auto it = to_integer(fields[0]);
    const auto halvings = to_integer(fields[9]);
    if (!it || !halvings) parse_failure(source, i + 1, "malformed trace row");
    std::array<double, 7> v{};
    for (std::size_t k = 0; k < 7; ++k) {
      const auto d = to_double(fields[k + 1]);
      if (!d) parse_failure(source, i + 1, "malformed number in trace row");
      v[k] = *d;
    }
    r.iteration = static_cast<int>(*it);
    r.params = VgParams{v[0], v[1], v[2], v[3], v[4]};
    r.loglik = v[5];
    r.grad_norm = v[6];
    try {
      r.step = parse_step_kind(fields[8]);
    } catch (const Error&) {
      parse_failure(source, i + 1, "unknown step kind '" + std::string(fields[8]) + "'");
    }
    r.halvings = static_cast<int>(*halvings);
    rows.push_back(r);
  }
  if (!header_seen) parse_failure(source, 1, "missing trace header");
  return rows;
}

std::vector<IterationRow> load_trace(const std::string& path) {
  return parse_trace(read_text_file(path), path);
}

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["generator"] = "vgfrft " + version_string();
  j["tag"] = s.tag;
  j["model"] = std::string(model_tag_name(s.model));
  j["init"] = s.init;
  j["sample_size"] = s.sample_size;
  j["params"] = {{"mu", s.params.mu},
                 {"delta", s.params.delta},
                 {"sigma", s.params.sigma},
                 {"alpha", s.params.alpha},
                 {"theta", s.params.theta}};
  j["loglik"] = number_or_null(s.loglik);
  j["converged"] = s.converged;
  j["iterations"] = s.iterations;
  j["grad_norm"] = number_or_null(s.grad_norm);
  j["stop_reason"] = s.stop_reason;
  j["hessian_condition"] = number_or_null(s.hessian_condition);
  if (s.ks) {
    j["ks"] = {{"n", s.ks->n},
               {"d_plus", s.ks->d_plus},
               {"d_minus", s.ks->d_minus},
               {"d_n", s.ks->d_n},
               {"p_value", number_or_null(s.ks->p_value)}};
  }
  return j.dump(2) + "\n";
}

RunSummary parse_summary(std::string_view text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse, source + ": " + e.what());
  }
  RunSummary s;
  try {
    s.tag = j.at("tag").get<std::string>();
    s.model = parse_model_tag(j.at("model").get<std::string>());
    s.init = j.value("init", std::string());
    s.sample_size = j.at("sample_size").get<std::size_t>();
    const auto& p = j.at("params");
    s.params = VgParams{p.at("mu").get<double>(), p.at("delta").get<double>(),
                        p.at("sigma").get<double>(), p.at("alpha").get<double>(),
                        p.at("theta").get<double>()};
    s.loglik = number_from(j.at("loglik"));
    s.converged = j.at("converged").get<bool>();
    s.iterations = j.at("iterations").get<int>();
    s.grad_norm = number_from(j.at("grad_norm"));
    s.stop_reason = j.value("stop_reason", std::string());
    s.hessian_condition = number_from(j.at("hessian_condition"));
    if (j.contains("ks")) {
      const auto& k = j.at("ks");
      KsResult r;
      r.n = k.at("n").get<std::size_t>();
      r.d_plus = k.at("d_plus").get<double>();
      r.d_minus = k.at("d_minus").get<double>();
      r.d_n = k.at("d_n").get<double>();
      r.p_value = number_from(k.at("p_value"));
      s.ks = r;
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse, source + ": " + e.what());
  }
  return s;
}

void save_summary(const std::string& path, const RunSummary& summary) {
  write_text_file(path, summary_json(summary));
}

RunSummary load_summary(const std::string& path) { return parse_summary(read_text_file(path), path); }

std::string comparison_table(std::span<const RunSummary> runs) {
  std::string out = artifact_header("comparison");
  out += "tag,model,mu,delta,sigma,alpha,theta,loglik,n,d_n,p_value\n";
  for (const auto& r : runs) {
    out += r.tag + "," + std::string(model_tag_name(r.model));
    for (double v : r.params.to_array()) out += "," + format_double(v);
    out += "," + format_double(r.loglik) + "," + std::to_string(r.sample_size) + ",";
    out += r.ks ? format_double(r.ks->d_n) : std::string();
    out += ",";
    out += r.ks ? format_double(r.ks->p_value) : std::string();
    out += "\n";
  }
  return out;
}

std::string density_csv(const DensityGrid& dg, std::span<const double> cdf, bool derivatives) {
  static const char* const kNames[kNumParams] = {"mu", "delta", "sigma", "alpha", "theta"};
  require(cdf.empty() || cdf.size() == dg.size(), ErrorCode::size, "cdf length differs from the grid");
  require(!derivatives || dg.order >= 1, ErrorCode::argument, "density grid lacks derivatives");
  std::string out = artifact_header("density");
  out += "# a=" + format_double(dg.grid.a) + " n=" + std::to_string(dg.grid.n) +
         " gamma=" + format_double(dg.grid.gamma) + " tail=" + format_double(dg.tail_magnitude) + "\n";
  out += "x,f";
  if (!cdf.empty()) out += ",cdf";
  if (derivatives)
    for (const char* name : kNames) out += std::string(",df_") + name;
  out += "\n";
  for (std::size_t k = 0; k < dg.size(); ++k) {
    out += format_double(dg.node(k)) + "," + format_double(dg.f[k]);
    if (!cdf.empty()) out += "," + format_double(cdf[k]);
    if (derivatives)
      for (std::size_t j = 0; j < kNumParams; ++j) out += "," + format_double(dg.df[j][k]);
    out += "\n";
  }
  return out;
}

std::string ks_density_csv(std::size_t n, std::span<const double> grid, std::span<const double> pdf,
                           std::span<const double> cdf) {
  require(grid.size() == pdf.size() && grid.size() == cdf.size(), ErrorCode::size,
          "KS grid, pdf and cdf lengths differ");
  std::string out = artifact_header("ks-null");
  out += "# n=" + std::to_string(n) + "\n";
  out += "d,pdf,cdf\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out += format_double(grid[i]) + "," + format_double(pdf[i]) + "," + format_double(cdf[i]) + "\n";
  return out;
}

}  // namespace vgfrft
