#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "dihsum/dihsum.hpp"

#ifndef DIHSUM_VERSION
#define DIHSUM_VERSION "0.0.0"
#endif

namespace dihsum::cli {
namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, std::string, std::int64_t, std::uint64_t, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json meta = Json::object();
  std::vector<std::string> notes;  // printed to stderr after the table
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

Json json_cell(const Cell& c) {
  struct {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(const std::string& s) const { return s; }
    Json operator()(std::int64_t v) const { return v; }
    Json operator()(std::uint64_t v) const { return v; }
    Json operator()(double v) const { return v; }
    Json operator()(bool v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit(const Table& table, const ExperimentConfig& config, std::ostream& out) {
  if (config.format == "json") {
    Json doc;
    Json meta = table.meta;
    meta["version"] = DIHSUM_VERSION;
    if (!config.no_header) meta["generated"] = timestamp();
    doc["meta"] = meta;
    doc["rows"] = Json::array();
    for (const auto& row : table.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
      doc["rows"].push_back(obj);
    }
    out << doc.dump(2) << "\n";
    return;
  }
  if (!config.no_header) out << "# dihsum " << DIHSUM_VERSION << " generated " << timestamp() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
}

std::vector<std::uint64_t> m_values(const ExperimentConfig& c) {
  if (c.m && c.m_range) throw UsageError("give either --m or --m-range, not both");
  if (c.m) return {*c.m};
  if (c.m_range) {
    std::vector<std::uint64_t> ms;
    for (auto m = c.m_range->first; m <= c.m_range->second; ++m) ms.push_back(m);
    return ms;
  }
  throw UsageError(c.command + " needs --m or --m-range");
}

GroupSpec require_group(const ExperimentConfig& c) {
  if (c.group.empty()) throw UsageError(c.command + " needs --group");
  return GroupSpec::parse(c.group);
}

std::uint32_t narrow_m(std::uint64_t m, const GroupSpec& spec) {
  if (m < 1 || m > 2 * spec.order()) {
    throw DomainError("m = " + std::to_string(m) + " is outside [1, " + std::to_string(2 * spec.order()) + "]");
  }
  return static_cast<std::uint32_t>(m);
}

std::uint64_t seed_or_entropy(const ExperimentConfig& c, std::ostream& err) {
  if (c.seed) return *c.seed;
  const std::uint64_t s = entropy_seed();
  err << "seed: " << s << "\n";
  return s;
}

ModeRequest mode_request(const std::string& mode) {
  if (mode == "rational") return ModeRequest::Rational;
  if (mode == "log") return ModeRequest::Log;
  return ModeRequest::Auto;
}

const std::vector<std::string> kCensusColumns = {"group", "n",        "j",    "m",     "k",    "total",
                                                 "mstd",  "mdts",     "balanced", "mode", "trials", "seed",
                                                 "ci_low_mstd", "ci_high_mstd"};

void census_rows(Table& t, const CensusReport& r, std::optional<Range> k_filter) {
  const bool sampled = r.mode == CensusMode::Sampled;
  auto push = [&](const CensusRow& row, Cell k) {
    std::vector<Cell> cells = {r.spec.to_string(), r.spec.order(), r.spec.involutions(), std::uint64_t{r.m}, k,
                               row.total, row.mstd, row.mdts, row.balanced,
                               std::string(sampled ? "sampled" : "exhaustive")};
    if (sampled) {
      cells.insert(cells.end(), {Cell{r.trials}, Cell{r.seed}});
      if (row.mstd_ci) {
        cells.insert(cells.end(), {Cell{row.mstd_ci->low}, Cell{row.mstd_ci->high}});
      } else {
        cells.insert(cells.end(), {Cell{}, Cell{}});
      }
    } else {
      cells.insert(cells.end(), {Cell{}, Cell{}, Cell{}, Cell{}});
    }
    t.rows.push_back(std::move(cells));
  };
  for (const auto& row : r.rows) {
    if (k_filter && (row.k < k_filter->first || row.k > k_filter->second)) continue;
    push(row, std::uint64_t{row.k});
  }
  if (!k_filter) push(r.aggregate, std::string("all"));
}

Table cmd_census(const ExperimentConfig& c, bool sampled, std::ostream& err) {
  const GroupSpec spec = require_group(c);
  Table t;
  t.columns = kCensusColumns;
  t.meta["group"] = spec.to_string();
  const CensusOptions options{c.budget, c.threads};
  std::optional<KRange> k_range;
  if (c.k_range) k_range = KRange{static_cast<std::uint32_t>(c.k_range->first), static_cast<std::uint32_t>(c.k_range->second)};
  std::uint64_t seed = 0;
  if (sampled) {
    if (!c.trials || *c.trials == 0) throw UsageError("sample needs --trials >= 1");
    seed = seed_or_entropy(c, err);
    t.meta["seed"] = seed;
    t.meta["trials"] = *c.trials;
  }
  for (auto m : m_values(c)) {
    const auto mm = narrow_m(m, spec);
    if (sampled) {
      census_rows(t, census_sampled(spec, mm, *c.trials, seed, options), c.k_range);
    } else {
      census_rows(t, census_exhaustive(spec, mm, k_range, options), std::nullopt);
    }
  }
  return t;
}

Table cmd_collisions_subset(const ExperimentConfig& c, const GroupSpec& spec) {
  const SubsetD a = SubsetD::parse(make_group(spec), *c.subset);
  const CollisionReport r = count_xa(a);
  Table t;
  t.columns = {"group",       "subset",     "m",          "k",           "X_A",          "nonredundant_quadruples",
               "same_pair",   "rotation_swap", "all_flips", "naive_sum",   "naive_diff",   "actual_sum",
               "actual_diff", "interval_low", "interval_high", "k_in_interval", "label"};
  t.meta["group"] = spec.to_string();
  const Cell low = r.interval.interval_nonempty ? Cell{static_cast<double>(r.interval.low)} : Cell{};
  const Cell high = r.interval.interval_nonempty ? Cell{static_cast<double>(r.interval.high)} : Cell{};
  t.rows.push_back({spec.to_string(), a.to_string(), std::uint64_t{a.m()}, std::uint64_t{a.k()},
                    to_string(r.xa.value()), r.nonredundant_quadruples, r.redundant_same_pair,
                    r.redundant_rotation_swap, r.redundant_all_flips, r.naive_sum, r.naive_diff,
                    std::uint64_t{r.actual_sum}, std::uint64_t{r.actual_diff}, low, high, r.interval.k_in_interval,
                    std::string(label_name(classify(a)))});
  return t;
}

Table cmd_collisions(const ExperimentConfig& c, std::ostream& err) {
  const GroupSpec spec = require_group(c);
  if (c.subset) return cmd_collisions_subset(c, spec);
  Table t;
  t.columns = {"group", "n", "j", "m", "trials", "mean_XA", "stderr", "xa_bound", "c2_form"};
  t.meta["group"] = spec.to_string();
  std::uint64_t seed = 0;
  if (c.trials) {
    seed = seed_or_entropy(c, err);
    t.meta["seed"] = seed;
  }
  for (auto m : m_values(c)) {
    const auto mm = narrow_m(m, spec);
    const XABound bound = expected_xa_bound(spec, mm);
    const Cell c2 = bound.c2_form ? Cell{static_cast<double>(to_long_double(*bound.c2_form))} : Cell{};
    std::vector<Cell> row = {spec.to_string(), spec.order(), spec.involutions(), m};
    if (c.trials) {
      const SampledMeanXA s = mean_xa_sampled(spec, mm, *c.trials, seed, c.threads);
      row.insert(row.end(), {Cell{s.trials}, Cell{s.mean}, Cell{s.stderr_}});
    } else {
      const ExactMeanXA e = mean_xa_exhaustive(spec, mm, c.budget);
      row.insert(row.end(), {Cell{std::uint64_t{0}}, Cell{static_cast<double>(to_long_double(e.subset_major))},
                             Cell{0.0}});
    }
    row.insert(row.end(), {Cell{static_cast<double>(to_long_double(bound.bound))}, c2});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_triples(const ExperimentConfig& c) {
  const GroupSpec spec = require_group(c);
  const TripleClassCounts counts = triple_class_counts(spec, c.budget);
  const std::uint64_t n = counts.n, j = counts.j;
  const std::array<std::uint64_t, 8> bounds = {0, 7 * n * n * n, 4 * n * n, 4 * n * n, 4 * n * n, 4 * n * n,
                                               2 * n * j, 3 * n * j};
  Table t;
  t.columns = {"group", "n", "j", "class", "count", "bound", "within"};
  t.meta["group"] = spec.to_string();
  for (int i = 1; i <= 7; ++i) {
    t.rows.push_back({spec.to_string(), n, j, "T" + std::to_string(i), counts.t[i], bounds[i], counts.t[i] <= bounds[i]});
  }
  t.rows.push_back({spec.to_string(), n, j, std::string("redundant"), counts.redundant, Cell{}, Cell{}});
  return t;
}

Table cmd_cross(const ExperimentConfig& c) {
  std::vector<std::uint64_t> ns;
  if (c.n) {
    ns = {*c.n};
  } else {
    for (std::uint64_t n = 2; n <= 5; ++n) ns.push_back(n);
  }
  Table t;
  t.columns = {"n", "product_total", "cyclic_total", "product_raw", "cyclic_raw", "verdict"};
  for (auto n : ns) {
    const CrossGroupReport r = cross_group_collision_totals(n, c.budget);
    t.meta["convention"] = r.convention;
    t.rows.push_back({n, r.product_total, r.cyclic_total, r.product_raw, r.cyclic_raw,
                      std::string(verdict_name(r.verdict))});
  }
  return t;
}

std::int64_t require_n(const ExperimentConfig& c) {
  if (!c.n) throw UsageError(c.command + " needs --n");
  return static_cast<std::int64_t>(*c.n);
}

Table cmd_expectation(const ExperimentConfig& c) {
  const std::int64_t n = require_n(c);
  Table t;
  t.columns = {"n", "m", "expected_diff", "mode", "exact"};
  t.meta["mode"] = c.mode;
  for (auto m : m_values(c)) {
    const ExpectedSize e = expected_diffset_size(n, static_cast<std::int64_t>(m), mode_request(c.mode));
    t.rows.push_back({std::uint64_t(n), m, static_cast<double>(e.value), std::string(mode_name(e.mode)),
                      e.exact ? Cell{to_string(*e.exact)} : Cell{}});
  }
  return t;
}

Table cmd_curve(const ExperimentConfig& c) {
  const std::int64_t n = require_n(c);
  if (c.step == 0) throw UsageError("--step must be positive");
  const ExpectationCurve curve = expectation_curve(n, static_cast<std::int64_t>(c.m_max),
                                                   static_cast<std::int64_t>(c.step), mode_request(c.mode), c.threads);
  Table t;
  t.columns = {"n", "m", "expected_diff", "mode"};
  const std::string mode(mode_name(curve.mode));
  for (const auto& p : curve.points) {
    t.rows.push_back({std::uint64_t(n), std::uint64_t(p.m), static_cast<double>(p.expected), mode});
  }
  const double reference = 1.3875 * std::sqrt(static_cast<double>(n));
  t.meta["mode"] = mode;
  t.meta["reference_1.3875_sqrt_n"] = reference;
  std::ostringstream note;
  note << "crossing m*=";
  if (curve.crossing) {
    t.meta["crossing"] = *curve.crossing;
    note << *curve.crossing;
  } else {
    t.meta["crossing"] = nullptr;
    note << "none";
  }
  note << " 1.3875*sqrt(n)=" << std::fixed << std::setprecision(2) << reference;
  t.notes.push_back(note.str());
  return t;
}

Table cmd_bounds(const ExperimentConfig& c) {
  Table t;
  if (c.window) {
    const auto& w = *c.window;
    const WindowVerdict v = mstd_window(w[0], w[1], w[2]);
    const BoundParams p = bound_params(w[2]);
    t.columns = {"n", "m", "j", "cj", "cj_sqrt_n", "n_min", "inside", "conclusion"};
    t.rows.push_back({v.n, v.m, v.j, static_cast<double>(p.cj), static_cast<double>(v.cj_sqrt_n), p.n_min, v.inside,
                      std::string(v.conclusion)});
    return t;
  }
  if (!c.m_range) throw UsageError("bounds needs --m-range or --window");
  const BoundParams p = bound_params(c.j);
  t.meta["j"] = c.j;
  t.meta["cj"] = static_cast<double>(p.cj);
  t.meta["n_min"] = p.n_min;
  t.columns = {"m", "value", "pass"};
  for (auto m = c.m_range->first; m <= c.m_range->second; ++m) {
    const ProportionResult r = proportion_condition(m);
    t.rows.push_back({m, static_cast<double>(to_long_double(r.value())), r.pass});
  }
  return t;
}

}  // namespace

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw StructuralError("range must look like A..B: " + text);
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const Range r{std::stoull(a, &used_a), std::stoull(b, &used_b)};
    if (used_a != a.size() || used_b != b.size() || a.empty() || a[0] == '-' || b[0] == '-') throw std::invalid_argument(text);
    if (r.first > r.second) throw StructuralError("empty range: " + text);
    return r;
  } catch (const std::logic_error&) {
    throw StructuralError("range must look like A..B: " + text);
  }
}

ParseResult parse_config(const std::vector<std::string>& args) {
  ExperimentConfig c;
  CLI::App app{"Sum and difference sets in generalized dihedral groups", "dihsum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DIHSUM_VERSION);

  std::uint64_t m = 0, trials = 0, seed = 0, n = 0;
  std::string m_range, k_range, window, subset;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", c.group, "group, e.g. Z12 or Z3xZ4 or Z@5xZ2");
    sub->add_option("--threads", c.threads, "worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--budget", c.budget, "refuse exhaustive work above this many units")->capture_default_str();
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_flag("--no-header", c.no_header, "omit the timestamp header line");
  };
  auto with_m = [&](CLI::App* sub) {
    sub->add_option("--m", m, "subset size");
    sub->add_option("--m-range", m_range, "subset sizes A..B");
  };
  auto with_sampling = [&](CLI::App* sub) {
    sub->add_option("--trials", trials, "random subsets per m");
    sub->add_option("--seed", seed, "RNG seed (random if omitted)");
  };
  auto with_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", c.mode, "rational, log or auto")
        ->check(CLI::IsMember({"auto", "rational", "log"}))
        ->capture_default_str();
  };

  auto* census = app.add_subcommand("census", "classify every m-subset");
  common(census);
  with_m(census);
  census->add_option("--k-range", k_range, "only flip counts A..B");

  auto* sample = app.add_subcommand("sample", "classify random m-subsets");
  common(sample);
  with_m(sample);
  with_sampling(sample);
  sample->add_option("--k-range", k_range, "only report flip counts A..B");

  auto* collisions = app.add_subcommand("collisions", "mean collision count X_A against its bound");
  common(collisions);
  with_m(collisions);
  with_sampling(collisions);
  collisions->add_option("--subset", subset, "report a single set, e.g. r:0,1;f:2");

  auto* triples = app.add_subcommand("triples", "triple class counts against their bounds");
  common(triples);

  auto* cross = app.add_subcommand("cross-collisions", "collision totals of Dih(Zn x Zn) and Dih(Z_{n^2})");
  common(cross);
  cross->add_option("--n", n, "single n (default 2..5)");

  auto* expectation = app.add_subcommand("expectation", "expected |A-A| in Dih(Z_n), n prime");
  common(expectation);
  with_m(expectation);
  with_mode(expectation);
  expectation->add_option("--n", n, "prime n");

  auto* curve = app.add_subcommand("curve", "expected |A-A| over a grid of m");
  common(curve);
  with_mode(curve);
  curve->add_option("--n", n, "prime n");
  curve->add_option("--m-max", c.m_max, "last m")->capture_default_str();
  curve->add_option("--step", c.step, "grid step")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "flip-count proportion and the MSTD window");
  common(bounds);
  bounds->add_option("--m-range", m_range, "subset sizes A..B");
  bounds->add_option("--j", c.j, "number of involutions in G")->capture_default_str();
  bounds->add_option("--window", window, "n,m,j");

  auto* verify = app.add_subcommand("verify", "self-check against brute force");
  verify->add_option("--threads", c.threads, "worker threads")->capture_default_str();

  std::vector<std::string> argv_store{"dihsum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  ParseResult result;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    auto given = [&](const char* name) {
      const auto* opt = sub->get_option_no_throw(name);
      return opt && opt->count() > 0;
    };
    if (given("--m")) c.m = m;
    if (given("--trials")) c.trials = trials;
    if (given("--seed")) c.seed = seed;
    if (given("--n")) c.n = n;
    if (given("--m-range")) c.m_range = parse_range(m_range);
    if (given("--k-range")) c.k_range = parse_range(k_range);
    if (given("--subset")) c.subset = subset;
    if (given("--window")) {
      std::vector<std::uint64_t> w;
      std::stringstream ss(window);
      std::string part;
      while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        try {
          w.push_back(std::stoull(part, &used));
        } catch (const std::logic_error&) {
          used = std::string::npos;
        }
        if (used != part.size() || part.empty() || part[0] == '-') throw StructuralError("--window expects n,m,j");
      }
      if (w.size() != 3) throw StructuralError("--window expects n,m,j");
      c.window = w;
    }
    result.config = c;
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    result.exit_code = app.exit(e, out, err) == 0 ? kOk : kUsage;
    result.message = out.str() + err.str();
  } catch (const StructuralError& e) {
    result.exit_code = kUsage;
    result.message = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

std::vector<std::string> render_config(const ExperimentConfig& c) {
  const ExperimentConfig d;
  std::vector<std::string> a{c.command};
  auto put = [&a](const char* flag, const std::string& value) {
    a.push_back(flag);
    a.push_back(value);
  };
  auto range = [](const Range& r) { return std::to_string(r.first) + ".." + std::to_string(r.second); };
  if (!c.group.empty()) put("--group", c.group);
  if (c.m) put("--m", std::to_string(*c.m));
  if (c.m_range) put("--m-range", range(*c.m_range));
  if (c.k_range) put("--k-range", range(*c.k_range));
  if (c.trials) put("--trials", std::to_string(*c.trials));
  if (c.seed) put("--seed", std::to_string(*c.seed));
  if (c.threads != d.threads) put("--threads", std::to_string(c.threads));
  if (c.budget != d.budget) put("--budget", std::to_string(c.budget));
  if (!c.out.empty()) put("--out", c.out);
  if (c.format != d.format) put("--format", c.format);
  if (c.mode != d.mode) put("--mode", c.mode);
  if (c.no_header) a.push_back("--no-header");
  if (c.n) put("--n", std::to_string(*c.n));
  if (c.m_max != d.m_max) put("--m-max", std::to_string(c.m_max));
  if (c.step != d.step) put("--step", std::to_string(c.step));
  if (c.j != d.j) put("--j", std::to_string(c.j));
  if (c.window) {
    const auto& w = *c.window;
    put("--window", std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]));
  }
  if (c.subset) put("--subset", *c.subset);
  return a;
}

int run(ExperimentConfig c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "verify") return run_verify(out, c.threads);
    Table table;
    if (c.command == "census") table = cmd_census(c, false, err);
    else if (c.command == "sample") table = cmd_census(c, true, err);
    else if (c.command == "collisions") table = cmd_collisions(c, err);
    else if (c.command == "triples") table = cmd_triples(c);
    else if (c.command == "cross-collisions") table = cmd_cross(c);
    else if (c.command == "expectation") table = cmd_expectation(c);
    else if (c.command == "curve") table = cmd_curve(c);
    else if (c.command == "bounds") table = cmd_bounds(c);
    else throw UsageError("unknown command: " + c.command);

    if (c.out.empty()) {
      emit(table, c, out);
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << c.out << " for writing\n";
        return kUsage;
      }
      emit(table, c, file);
    }
    for (const auto& note : table.notes) err << note << "\n";
    return kOk;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\nestimate " << std::setprecision(6) << e.estimate() << ", budget "
        << e.budget() << "; raise --budget or sample instead\n";
    return kBudget;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParseResult parsed = parse_config(args);
  if (!parsed.config) {
    (parsed.exit_code == kOk ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return run(*parsed.config, out, err);
}

}  // namespace dihsum::cli
