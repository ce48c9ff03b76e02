#include "snls/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "snls/calibration.hpp"
#include "snls/errors.hpp"
#include "snls/studies.hpp"

namespace snls {

namespace {

using Outputs = std::vector<std::pair<std::string, std::string>>;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  os << content;
  if (!os) throw IoError("cannot write " + path.string());
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes every output, then a manifest naming them with their hashes.
void emit(const RunConfig& config, const std::string& command, const Outputs& outputs,
          const nlohmann::json& extra = nlohmann::json::object()) {
  const std::string text = canonical_text(config);
  std::string inputs = text;
  nlohmann::json input_hashes = {{"config", git_blob_hash(text)}};
  if (config.source == MeasureSource::file) {
    const std::string s = read_file(config.measure_file);
    input_hashes["measure.file"] = git_blob_hash(s);
    inputs += s;
  }
  if (config.initial == InitialKind::file) {
    const std::string s = read_file(config.initial_file);
    input_hashes["initial.file"] = git_blob_hash(s);
    inputs += s;
  }

  nlohmann::json m;
  m["command"] = command;
  m["seed"] = config.seed;
  m["config"] = config.resolved;
  m["grid"] = {{"L", config.L}, {"N", config.N}, {"dx", 2.0 * config.L / static_cast<double>(config.N)}};
  m["inputs"] = input_hashes;
  m["input_hash"] = git_blob_hash(inputs);
  m["calibration_version"] = calibration::kVersion;
  m["outputs"] = nlohmann::json::object();
  for (const auto& [name, content] : outputs) {
    write_file(config.out_dir / name, content);
    m["outputs"][name] = git_blob_hash(content);
  }
  for (const auto& [k, v] : extra.items()) m[k] = v;
  m["created_utc"] = utc_now();
  write_file(config.out_dir / "manifest.json", m.dump(2) + "\n");
}

template <class F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

}  // namespace

StudyKind parse_study(const std::string& name) {
  if (name == "eps") return StudyKind::eps;
  if (name == "stability") return StudyKind::stability;
  if (name == "moments") return StudyKind::moments;
  if (name == "laplace") return StudyKind::laplace;
  throw ConfigError("unknown study '" + name + "' (eps, stability, moments, laplace)");
}

std::string git_blob_hash(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw IoError("sha1: cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw IoError("sha1: digest failed");
  std::string hex;
  char buf[3];
  for (unsigned char b : std::string_view(reinterpret_cast<const char*>(digest), len)) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    hex += buf;
  }
  return hex;
}

Measure build_measure(const RunConfig& c) {
  switch (c.source) {
    case MeasureSource::empty: return Measure(AtomicMeasure(c.window));
    case MeasureSource::poisson: return Measure(sample_poisson(c.intensity, c.window, c.seed));
    case MeasureSource::bernoulli:
      return Measure(sample_bernoulli_crystal(c.bernoulli_h, c.bernoulli_p, c.window, c.seed));
    case MeasureSource::canonical: return Measure(sample_canonical(c.canonical_n, c.window, c.seed));
    case MeasureSource::kronig_penney: return Measure(kronig_penney(c.window));
    case MeasureSource::file: {
      std::ifstream is(c.measure_file);
      if (!is) throw IoError("cannot open " + c.measure_file);
      return Measure(read_csv(is, c.window));
    }
  }
  throw ConfigError("unknown measure source");
}

WaveField build_initial(const RunConfig& c) {
  const Grid grid(c.L, c.N);
  if (c.initial == InitialKind::file) {
    std::ifstream is(c.initial_file, std::ios::binary);
    if (!is) throw IoError("cannot open " + c.initial_file);
    WaveField f = read_binary(is);
    if (!(f.grid() == grid)) throw ConfigError("initial.file grid does not match domain.L / domain.N");
    return f;
  }
  return WaveField::from_function(grid, [&](double x) {
    const double u = (x - c.center) / c.sigma;
    return cplx(c.amplitude * std::exp(-u * u));
  });
}

int cmd_sample(const RunConfig& c) {
  const Measure mu = build_measure(c);
  emit(c, "sample", {{"atoms.csv", render([&](std::ostream& os) { write_csv(os, mu.atomic()); })}},
       {{"atoms", mu.atomic().size()}});
  return kExitOk;
}

int cmd_solve(const RunConfig& c) {
  const Measure mu = build_measure(c);
  const WaveField psi0 = build_initial(c);
  const Trajectory traj = evolve_regularized(psi0, mu, c.eps, c.variant, c.solver, c.points_per_eps);
  Outputs out = {{"diagnostics.csv", render([&](std::ostream& os) { write_diagnostics_csv(os, traj); })},
                 {"reference.csv", render([&](std::ostream& os) { write_reference_csv(os, traj); })},
                 {"atoms.csv", render([&](std::ostream& os) { write_csv(os, mu.atomic()); })}};
  if (c.snapshots) {
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      char name[40];
      std::snprintf(name, sizeof name, "snapshots/record_%05zu.bin", k);
      out.emplace_back(name, render([&](std::ostream& os) { write_binary(os, traj.states[k]); }));
    }
  }
  double drift = 0.0;
  const double m0 = traj.diagnostics.front().mass;
  for (const auto& d : traj.diagnostics) drift = std::max(drift, m0 > 0.0 ? std::abs(d.mass - m0) / m0 : 0.0);
  emit(c, "solve", out, {{"max_relative_mass_drift", drift}, {"records", traj.times.size()}});
  return kExitOk;
}

int cmd_study(const RunConfig& c, StudyKind kind) {
  StudyReport report;
  switch (kind) {
    case StudyKind::eps: {
      EpsStudyParams p;
      p.eps = c.eps_ladder;
      p.variant = c.variant;
      p.solver = c.solver;
      p.points_per_eps = c.points_per_eps;
      p.dt_scale = c.eps_dt_scale;
      report = eps_convergence_study(build_initial(c), build_measure(c), p);
      break;
    }
    case StudyKind::stability: {
      StabilityParams p;
      p.deltas = c.deltas;
      p.eps = c.eps;
      p.variant = c.variant;
      p.solver = c.solver;
      p.points_per_eps = c.points_per_eps;
      p.seed = c.seed;
      p.envelope_c = calibration::kStabilityC;
      report = stability_study(build_initial(c), build_measure(c), p);
      break;
    }
    case StudyKind::moments: {
      MomentParams p;
      p.n_samples = c.moment_samples;
      p.window = c.moment_window;
      p.intensity = c.intensity;
      p.seed = c.seed;
      p.first_moment_bound = calibration::kFirstMomentC;
      p.second_moment_bound = calibration::kSecondMomentC;
      report = moment_study(moment_profiles(Grid(c.L, c.N)), p);
      break;
    }
    case StudyKind::laplace: {
      LaplaceParams p;
      p.n_samples = c.laplace_samples;
      p.seed = c.seed;
      report = laplace_study(p);
      break;
    }
  }
  const std::string base = "study_" + report.name;
  const nlohmann::json summary = to_json(report);
  emit(c, "study", {{base + ".csv", render([&](std::ostream& os) { write_csv(os, report); })},
                    {base + ".json", summary.dump(2) + "\n"}},
       {{"study", report.name}, {"pass", report.all_pass()}});
  return report.all_pass() ? kExitOk : kExitStudyFailed;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ResolutionError& e) {
    err << "resolution error: " << e.what() << '\n';
    return kExitResolution;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ArgumentError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace snls
