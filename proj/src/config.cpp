#include "snls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>

#include "snls/csv.hpp"
#include "snls/errors.hpp"
#include "snls/mollify.hpp"

namespace snls {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  double x = 0.0;
  is >> x;
  if (!is || !(is >> std::ws).eof() || !std::isfinite(x))
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config: " + key + " expects a nonnegative integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: " + key + " expects true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError("config: " + key + " expects a comma-separated list");
  return out;
}

Interval to_interval(const std::string& key, const std::string& v) {
  const auto xs = to_list(key, v);
  if (xs.size() != 2 || !(xs[0] < xs[1])) throw ConfigError("config: " + key + " expects a,b with a < b");
  return {xs[0], xs[1]};
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + csv::format(xs[i]);
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "domain.L",        "domain.N",         "solver.dt",        "solver.T",
      "solver.record_every", "measure.source", "measure.window",  "measure.intensity",
      "measure.h",       "measure.p",        "measure.n",        "measure.file",
      "eps.ladder",      "eps.dt_scale",     "solve.eps",        "solve.variant",    "solve.points_per_eps",
      "solve.snapshots", "initial.kind",     "initial.sigma",    "initial.center",
      "initial.amplitude", "initial.file",   "seed",             "output.dir",
      "stability.deltas", "moments.samples", "moments.window",   "laplace.samples"};
  return keys;
}

const char* source_name(MeasureSource s) {
  switch (s) {
    case MeasureSource::empty: return "empty";
    case MeasureSource::poisson: return "poisson";
    case MeasureSource::bernoulli: return "bernoulli";
    case MeasureSource::canonical: return "canonical";
    case MeasureSource::kronig_penney: return "kronig_penney";
    case MeasureSource::file: return "file";
  }
  return "";
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, trim(std::string_view(t).substr(eq + 1))).second)
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key " + key);
  }
  return out;
}

std::pair<std::string, std::string> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + text + "' is not key=value");
  const std::string key = trim(std::string_view(text).substr(0, eq));
  if (key.empty()) throw ConfigError("override '" + text + "' has an empty key");
  return {key, trim(std::string_view(text).substr(eq + 1))};
}

RunConfig make_config(const std::map<std::string, std::string>& entries) {
  for (const auto& [k, v] : entries)
    if (!known_keys().count(k)) throw ConfigError("config: unknown key " + k);
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = entries.find(k);
    return it == entries.end() ? nullptr : &it->second;
  };

  RunConfig c;
  if (auto v = get("domain.L")) c.L = to_double("domain.L", *v);
  if (auto v = get("domain.N")) c.N = to_unsigned("domain.N", *v);
  c.window = {-c.L, c.L};
  if (auto v = get("solver.dt")) c.solver.dt = to_double("solver.dt", *v);
  if (auto v = get("solver.T")) c.solver.T = to_double("solver.T", *v);
  if (auto v = get("solver.record_every")) c.solver.record_every = to_unsigned("solver.record_every", *v);
  if (auto v = get("measure.source")) {
    static const std::map<std::string, MeasureSource> names = {
        {"empty", MeasureSource::empty},         {"poisson", MeasureSource::poisson},
        {"bernoulli", MeasureSource::bernoulli}, {"canonical", MeasureSource::canonical},
        {"kronig_penney", MeasureSource::kronig_penney}, {"file", MeasureSource::file}};
    const auto it = names.find(*v);
    if (it == names.end()) throw ConfigError("config: unknown measure.source '" + *v + "'");
    c.source = it->second;
  }
  if (auto v = get("measure.window")) c.window = to_interval("measure.window", *v);
  if (auto v = get("measure.intensity")) c.intensity = to_double("measure.intensity", *v);
  if (auto v = get("measure.h")) c.bernoulli_h = to_double("measure.h", *v);
  if (auto v = get("measure.p")) c.bernoulli_p = to_double("measure.p", *v);
  if (auto v = get("measure.n")) c.canonical_n = to_unsigned("measure.n", *v);
  if (auto v = get("measure.file")) c.measure_file = *v;
  if (auto v = get("eps.ladder")) c.eps_ladder = to_list("eps.ladder", *v);
  if (auto v = get("eps.dt_scale")) c.eps_dt_scale = to_double("eps.dt_scale", *v);
  if (auto v = get("solve.eps")) c.eps = to_double("solve.eps", *v);
  if (auto v = get("solve.variant")) {
    if (*v == "fully_truncated") c.variant = Variant::fully_truncated;
    else if (*v == "mollified_only") c.variant = Variant::mollified_only;
    else throw ConfigError("config: unknown solve.variant '" + *v + "'");
  }
  if (auto v = get("solve.points_per_eps")) c.points_per_eps = to_double("solve.points_per_eps", *v);
  if (auto v = get("solve.snapshots")) c.snapshots = to_bool("solve.snapshots", *v);
  if (auto v = get("initial.kind")) {
    if (*v == "gaussian") c.initial = InitialKind::gaussian;
    else if (*v == "file") c.initial = InitialKind::file;
    else throw ConfigError("config: unknown initial.kind '" + *v + "'");
  }
  if (auto v = get("initial.sigma")) c.sigma = to_double("initial.sigma", *v);
  if (auto v = get("initial.center")) c.center = to_double("initial.center", *v);
  if (auto v = get("initial.amplitude")) c.amplitude = to_double("initial.amplitude", *v);
  if (auto v = get("initial.file")) c.initial_file = *v;
  if (auto v = get("seed")) c.seed = to_unsigned("seed", *v);
  if (auto v = get("output.dir")) c.out_dir = *v;
  if (auto v = get("stability.deltas")) c.deltas = to_list("stability.deltas", *v);
  if (auto v = get("moments.samples")) c.moment_samples = to_unsigned("moments.samples", *v);
  if (auto v = get("moments.window")) c.moment_window = to_interval("moments.window", *v);
  if (auto v = get("laplace.samples")) c.laplace_samples = to_unsigned("laplace.samples", *v);

  if (!(c.L > 0.0)) throw ConfigError("config: domain.L must be positive");
  if (c.N < 8 || (c.N & (c.N - 1)) != 0) throw ConfigError("config: domain.N must be a power of two >= 8");
  try {
    validate(c.solver);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.window.a < -c.L || c.window.b > c.L) throw ConfigError("config: measure.window must lie inside [-L, L]");
  if (!(c.intensity >= 0.0)) throw ConfigError("config: measure.intensity must be nonnegative");
  if (!(c.bernoulli_h > 0.0)) throw ConfigError("config: measure.h must be positive");
  if (!(c.bernoulli_p >= 0.0 && c.bernoulli_p <= 1.0)) throw ConfigError("config: measure.p must lie in [0, 1]");
  for (std::size_t i = 0; i < c.eps_ladder.size(); ++i) {
    if (!(c.eps_ladder[i] > 0.0 && c.eps_ladder[i] <= 1.0)) throw ConfigError("config: eps values must lie in (0, 1]");
    if (i > 0 && !(c.eps_ladder[i] < c.eps_ladder[i - 1]))
      throw ConfigError("config: eps.ladder must be strictly decreasing");
  }
  if (!(c.eps_dt_scale >= 0.0)) throw ConfigError("config: eps.dt_scale must be nonnegative");
  if (!(c.eps > 0.0 && c.eps <= 1.0)) throw ConfigError("config: solve.eps must lie in (0, 1]");
  if (!(c.points_per_eps > 0.0)) throw ConfigError("config: solve.points_per_eps must be positive");
  if (!(c.sigma > 0.0)) throw ConfigError("config: initial.sigma must be positive");
  if (c.deltas.empty()) throw ConfigError("config: stability.deltas is empty");
  for (std::size_t i = 0; i < c.deltas.size(); ++i)
    if (!(c.deltas[i] >= 0.0) || (i > 0 && !(c.deltas[i] < c.deltas[i - 1])))
      throw ConfigError("config: stability.deltas must be nonnegative and decreasing");
  if (c.source == MeasureSource::file && !std::filesystem::is_regular_file(c.measure_file))
    throw ConfigError("config: measure.file '" + c.measure_file + "' does not exist");
  if (c.initial == InitialKind::file && !std::filesystem::is_regular_file(c.initial_file))
    throw ConfigError("config: initial.file '" + c.initial_file + "' does not exist");

  const Grid grid(c.L, c.N);
  const double eps_min = std::min(c.eps, *std::min_element(c.eps_ladder.begin(), c.eps_ladder.end()));
  check_resolution(grid, eps_min, c.points_per_eps);

  auto& r = c.resolved;
  r["domain.L"] = csv::format(c.L);
  r["domain.N"] = std::to_string(c.N);
  r["solver.dt"] = csv::format(c.solver.dt);
  r["solver.T"] = csv::format(c.solver.T);
  r["solver.record_every"] = std::to_string(c.solver.record_every);
  r["measure.source"] = source_name(c.source);
  r["measure.window"] = join({c.window.a, c.window.b});
  r["measure.intensity"] = csv::format(c.intensity);
  r["measure.h"] = csv::format(c.bernoulli_h);
  r["measure.p"] = csv::format(c.bernoulli_p);
  r["measure.n"] = std::to_string(c.canonical_n);
  r["measure.file"] = c.measure_file;
  r["eps.ladder"] = join(c.eps_ladder);
  r["eps.dt_scale"] = csv::format(c.eps_dt_scale);
  r["solve.eps"] = csv::format(c.eps);
  r["solve.variant"] = c.variant == Variant::fully_truncated ? "fully_truncated" : "mollified_only";
  r["solve.points_per_eps"] = csv::format(c.points_per_eps);
  r["solve.snapshots"] = c.snapshots ? "true" : "false";
  r["initial.kind"] = c.initial == InitialKind::gaussian ? "gaussian" : "file";
  r["initial.sigma"] = csv::format(c.sigma);
  r["initial.center"] = csv::format(c.center);
  r["initial.amplitude"] = csv::format(c.amplitude);
  r["initial.file"] = c.initial_file;
  r["seed"] = std::to_string(c.seed);
  r["output.dir"] = c.out_dir.string();
  r["stability.deltas"] = join(c.deltas);
  r["moments.samples"] = std::to_string(c.moment_samples);
  r["moments.window"] = join({c.moment_window.a, c.moment_window.b});
  r["laplace.samples"] = std::to_string(c.laplace_samples);
  return c;
}

std::string canonical_text(const RunConfig& config) {
  std::string s;
  for (const auto& [k, v] : config.resolved)
    if (k != "output.dir") s += k + "=" + v + "\n";
  return s;
}

}  // namespace snls
