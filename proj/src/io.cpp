#include "aum/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace aum {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace aum

namespace aum::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& field, const std::string& source, std::size_t line) {
  std::string f = trim(field);
  double x = 0.0;
  const char* first = f.data();
  const char* last = f.data() + f.size();
  if (!f.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, x);
  if (f.empty() || res.ec != std::errc() || res.ptr != last) {
    fail(source, line, "expected a number, got '" + field + "'");
  }
  return x;
}

long long parse_int(const std::string& field, const std::string& source, std::size_t line) {
  std::string f = trim(field);
  long long x = 0;
  const char* first = f.data();
  const char* last = f.data() + f.size();
  if (!f.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, x);
  if (f.empty() || res.ec != std::errc() || res.ptr != last) {
    fail(source, line, "expected an integer, got '" + field + "'");
  }
  return x;
}

std::size_t parse_id(const std::string& field, const std::string& source, std::size_t line) {
  long long id = parse_int(field, source, line);
  if (id < 1) fail(source, line, "example_id must be >= 1");
  return static_cast<std::size_t>(id);
}

int parse_small(const std::string& field, const std::string& source, std::size_t line) {
  long long v = parse_int(field, source, line);
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) fail(source, line, "integer out of range");
  return static_cast<int>(v);
}

// Reads lines, skipping blank ones; checks the header matches.
struct Table {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::vector<std::string> header;
};

Table read_table(std::istream& in, char sep, const std::string& source) {
  Table t;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, sep);
    for (auto& f : fields) f = trim(f);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      fail(source, number, "expected " + std::to_string(t.header.size()) + " fields, got " +
                               std::to_string(fields.size()));
    }
    t.rows.emplace_back(number, std::move(fields));
  }
  if (!have_header) fail(source, number, "missing header");
  return t;
}

void expect_header(const Table& t, const std::vector<std::string>& expected,
                   const std::string& source) {
  if (t.header != expected) {
    std::string want;
    for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
    fail(source, 1, "unexpected header, expected " + want);
  }
}

}  // namespace

std::vector<RawBreakpoint> read_breakpoints(std::istream& in, const std::string& source) {
  auto t = read_table(in, '\t', source);
  expect_header(t, {"example_id", "value", "delta_fp", "delta_fn"}, source);
  std::vector<RawBreakpoint> out;
  out.reserve(t.rows.size());
  for (const auto& [line, f] : t.rows) {
    out.push_back({parse_id(f[0], source, line),
                   {parse_real(f[1], source, line), parse_small(f[2], source, line),
                    parse_small(f[3], source, line)}});
  }
  return out;
}

std::vector<std::pair<std::size_t, Capacity>> read_capacities(std::istream& in,
                                                              const std::string& source) {
  auto t = read_table(in, '\t', source);
  expect_header(t, {"example_id", "fpp", "fnp"}, source);
  std::vector<std::pair<std::size_t, Capacity>> out;
  for (const auto& [line, f] : t.rows) {
    out.push_back({parse_id(f[0], source, line),
                   {parse_small(f[1], source, line), parse_small(f[2], source, line)}});
  }
  return out;
}

ExampleSet assemble(const std::vector<RawBreakpoint>& breakpoints,
                    const std::vector<std::pair<std::size_t, Capacity>>& capacities) {
  std::size_t n = 0;
  for (const auto& b : breakpoints) n = std::max(n, b.example_id);
  for (const auto& [id, cap] : capacities) n = std::max(n, id);
  if (n == 0) throw InvalidInput("no breakpoints");
  std::vector<std::vector<Step>> steps(n);
  for (const auto& b : breakpoints) steps[b.example_id - 1].push_back(b.step);
  std::vector<std::optional<Capacity>> caps(n);
  for (const auto& [id, cap] : capacities) caps[id - 1] = cap;

  std::vector<ErrorFunction> examples;
  examples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Capacity cap;
    if (caps[i]) {
      cap = *caps[i];
    } else {
      // Infer from a canonical copy so the running sums see merged steps.
      ErrorFunction probe(steps[i], 0, 0);
      long long fp = 0, fn = 0, max_fp = 0, max_fn = 0;
      for (const auto& s : probe.steps()) {
        fp += s.delta_fp;
        max_fp = std::max(max_fp, fp);
      }
      for (auto it = probe.steps().rbegin(); it != probe.steps().rend(); ++it) {
        fn -= it->delta_fn;
        max_fn = std::max(max_fn, fn);
      }
      cap = {static_cast<int>(max_fp), static_cast<int>(max_fn)};
    }
    examples.emplace_back(std::move(steps[i]), cap.fpp, cap.fnp);
  }
  return ExampleSet(std::move(examples));
}

BinaryData read_binary_csv(std::istream& in, const std::string& source) {
  auto t = read_table(in, ',', source);
  if (t.header.empty() || t.header[0] != "label") fail(source, 1, "first column must be 'label'");
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    if (t.header[c] != "feat_" + std::to_string(c)) {
      fail(source, 1, "expected column 'feat_" + std::to_string(c) + "'");
    }
  }
  BinaryData d;
  const std::size_t p = t.header.size() - 1;
  d.features = Matrix(t.rows.size(), p);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& [line, f] = t.rows[r];
    long long label = parse_int(f[0], source, line);
    if (label != 1 && label != -1) fail(source, line, "label must be -1 or 1");
    d.labels.push_back(static_cast<int>(label));
    for (std::size_t c = 0; c < p; ++c) d.features(r, c) = parse_real(f[c + 1], source, line);
  }
  if (d.labels.empty()) fail(source, 1, "no rows");
  return d;
}

Matrix read_features_csv(std::istream& in, const std::string& source) {
  auto t = read_table(in, ',', source);
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (t.header[c] != "feat_" + std::to_string(c + 1)) {
      fail(source, 1, "expected column 'feat_" + std::to_string(c + 1) + "'");
    }
  }
  Matrix m(t.rows.size(), t.header.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& [line, f] = t.rows[r];
    for (std::size_t c = 0; c < f.size(); ++c) m(r, c) = parse_real(f[c], source, line);
  }
  return m;
}

std::vector<double> read_predictions(std::istream& in, const std::string& source) {
  std::vector<double> out;
  std::string line;
  std::size_t number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    std::string f = trim(line);
    if (f.empty()) continue;
    if (first && !f.empty() && (std::isalpha(static_cast<unsigned char>(f[0])) || f[0] == '_') &&
        f != "inf" && f != "nan") {
      first = false;
      continue;
    }
    first = false;
    out.push_back(parse_real(f, source, number));
  }
  return out;
}

void write_breakpoints(std::ostream& out, const ExampleSet& set) {
  out << "example_id\tvalue\tdelta_fp\tdelta_fn\n";
  for (const auto& b : set.breakpoints()) {
    out << b.example + 1 << '\t' << format_real(b.value) << '\t' << b.delta_fp << '\t'
        << b.delta_fn << '\n';
  }
}

void write_capacities(std::ostream& out, const ExampleSet& set) {
  out << "example_id\tfpp\tfnp\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << i + 1 << '\t' << set[i].fpp() << '\t' << set[i].fnp() << '\n';
  }
}

void write_binary_csv(std::ostream& out, const BinaryData& data) {
  out << "label";
  for (std::size_t c = 0; c < data.features.cols(); ++c) out << ",feat_" << c + 1;
  out << '\n';
  for (std::size_t r = 0; r < data.labels.size(); ++r) {
    out << data.labels[r];
    for (std::size_t c = 0; c < data.features.cols(); ++c) {
      out << ',' << format_real(data.features(r, c));
    }
    out << '\n';
  }
}

void write_features_csv(std::ostream& out, const Matrix& features) {
  for (std::size_t c = 0; c < features.cols(); ++c) out << (c ? "," : "") << "feat_" << c + 1;
  out << '\n';
  for (std::size_t r = 0; r < features.rows(); ++r) {
    for (std::size_t c = 0; c < features.cols(); ++c) {
      out << (c ? "," : "") << format_real(features(r, c));
    }
    out << '\n';
  }
}

void write_predictions(std::ostream& out, const std::vector<double>& predictions) {
  for (double y : predictions) out << format_real(y) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  const bool validation = !trace.empty() && trace.front().val_aum.has_value();
  out << "iteration,aum,auc,error_rate,step,intercept";
  if (validation) out << ",val_aum,val_auc";
  out << '\n';
  for (const auto& r : trace) {
    out << r.iteration << ',' << format_real(r.aum) << ',' << format_real(r.auc) << ','
        << format_real(r.error_rate) << ',' << format_real(r.step) << ','
        << format_real(r.intercept);
    if (validation) {
      out << ',' << format_real(r.val_aum.value_or(NAN)) << ','
          << format_real(r.val_auc.value_or(NAN));
    }
    out << '\n';
  }
}

namespace {

nlohmann::json real_json(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string fit_to_json(const FitResult& fit, Objective objective) {
  nlohmann::json j;
  j["objective"] = to_string(objective);
  j["iterations"] = fit.trace.empty() ? 0 : fit.trace.back().iteration;
  j["selected_iteration"] = fit.selected_iteration;
  j["rule"] = to_string(fit.rule);
  if (!fit.weights.empty() || fit.predictions.empty()) {
    j["weights"] = fit.weights;
    j["intercept"] = fit.intercept;
    j["selected_weights"] = fit.selected_weights;
    j["selected_intercept"] = fit.selected_intercept;
  } else {
    j["predictions"] = fit.predictions;
  }
  if (!fit.trace.empty()) {
    const auto& last = fit.trace.back();
    j["final"] = {{"aum", real_json(last.aum)},
                  {"auc", real_json(last.auc)},
                  {"error_rate", real_json(last.error_rate)}};
    const auto& sel = fit.trace[std::min(fit.selected_iteration, fit.trace.size() - 1)];
    nlohmann::json s = {{"aum", real_json(sel.aum)}, {"auc", real_json(sel.auc)}};
    if (sel.val_aum) s["val_aum"] = real_json(*sel.val_aum);
    if (sel.val_auc) s["val_auc"] = real_json(*sel.val_auc);
    j["selected"] = s;
  }
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aum::io
