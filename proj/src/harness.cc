// Copyright 2026 The dsc-crypt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsc/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "dsc/codec.h"
#include "dsc/crypto_system.h"
#include "dsc/errors.h"
#include "dsc/parallel.h"
#include "dsc/security_metrics.h"
#include "json.hpp"

namespace dsc {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "description", "q1",     "q2",      "source_pmf", "key_pmf",
    "n",           "m",      "rates",   "trials",     "seed",
    "mode",        "epsilon", "delta",  "mc_trials",  "random_offsets",
    "record_runtime", "workers", "output", "verify"};

const std::set<std::string> kVerifyKeys = {"systems", "fields", "n",
                                           "identity_otp", "random_pmfs"};

template <typename T>
T field_as(const json& j, const std::string& name) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(name, e.what());
  }
}

std::uint64_t as_uint(const json& j, const std::string& name) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw ConfigError(name, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

double as_real(const json& j, const std::string& name) {
  if (!j.is_number()) throw ConfigError(name, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(name, "expected a finite number");
  return v;
}

bool as_bool(const json& j, const std::string& name) {
  if (!j.is_boolean()) throw ConfigError(name, "expected true or false");
  return j.get<bool>();
}

unsigned as_modulus(const json& j, const std::string& name) {
  const std::uint64_t q = as_uint(j, name);
  if (q > kMaxFieldOrder || !is_prime(static_cast<unsigned>(q))) {
    throw ConfigError(name, "field modulus must be a prime no larger than 251");
  }
  return static_cast<unsigned>(q);
}

JointPmf as_pmf(const json& j, const std::string& name, unsigned q1,
                unsigned q2) {
  if (!j.is_array() || j.size() != q1) {
    throw ConfigError(name, "expected " + std::to_string(q1) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string where = name + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != q2) {
      throw ConfigError(where, "expected " + std::to_string(q2) + " entries");
    }
    std::vector<double> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      row.push_back(as_real(j[r][c], where + "[" + std::to_string(c) + "]"));
    }
    rows.push_back(std::move(row));
  }
  try {
    return JointPmf::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(name, e.what());
  }
}

template <typename T, typename Fn>
std::vector<T> as_list(const json& j, const std::string& name, Fn&& item) {
  std::vector<T> out;
  if (!j.is_array()) {
    out.push_back(item(j, name));
    return out;
  }
  if (j.empty()) throw ConfigError(name, "list must not be empty");
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(item(j[i], name + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t as_blocklength(const json& j, const std::string& name) {
  const std::uint64_t n = as_uint(j, name);
  if (n == 0) throw ConfigError(name, "blocklength must be positive");
  return static_cast<std::size_t>(n);
}

void parse_verify(const json& j, VerifySuite& v) {
  if (!j.is_object()) throw ConfigError("verify", "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!kVerifyKeys.contains(key)) throw ConfigError("verify." + key, "unknown field");
  }
  if (j.contains("systems")) {
    v.systems = as_uint(j["systems"], "verify.systems");
    if (v.systems == 0) throw ConfigError("verify.systems", "must be positive");
  }
  if (j.contains("fields")) {
    v.fields = as_list<unsigned>(j["fields"], "verify.fields", as_modulus);
  }
  if (j.contains("n")) {
    v.blocklengths = as_list<std::size_t>(j["n"], "verify.n", as_blocklength);
  }
  if (j.contains("identity_otp")) {
    v.identity_otp = as_bool(j["identity_otp"], "verify.identity_otp");
  }
  if (j.contains("random_pmfs")) {
    v.random_pmfs = as_bool(j["random_pmfs"], "verify.random_pmfs");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

JointPmf random_pmf(std::mt19937_64& rng, unsigned q1, unsigned q2) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> t(std::size_t{q1} * q2);
  double sum = 0.0;
  for (double& v : t) {
    v = 0.05 + draw(rng);
    sum += v;
  }
  for (double& v : t) v /= sum;
  return JointPmf(q1, q2, std::move(t));
}

}  // namespace

const std::vector<std::string> kResultColumns = {
    "n",       "m1",       "m2",    "q1",       "q2",
    "seed",    "trial",    "R1",    "R2",       "p_e",
    "delta",   "delta_mi", "div_cipher_uniform", "delta_1",
    "delta_2", "lemma2_bound", "in_sw", "in_key", "admissible_eps_delta",
    "runtime_ms", "mode"};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

std::pair<std::size_t, std::size_t> dims_for_rates(const RatePoint& rates,
                                                   std::size_t n, unsigned q1,
                                                   unsigned q2) {
  auto dim = [n](double r, unsigned q) {
    const double m = std::round(r * double(n) / std::log2(double(q)));
    return static_cast<std::size_t>(std::clamp(m, 1.0, double(n)));
  };
  return {dim(rates.r1, q1), dim(rates.r2, q2)};
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown field");
  }

  ExperimentConfig cfg;
  if (j.contains("q1")) cfg.q1 = as_modulus(j["q1"], "q1");
  if (j.contains("q2")) cfg.q2 = as_modulus(j["q2"], "q2");
  if (!j.contains("source_pmf")) throw ConfigError("source_pmf", "missing");
  if (!j.contains("key_pmf")) throw ConfigError("key_pmf", "missing");
  cfg.source = as_pmf(j["source_pmf"], "source_pmf", cfg.q1, cfg.q2);
  cfg.keys = as_pmf(j["key_pmf"], "key_pmf", cfg.q1, cfg.q2);

  if (j.contains("n")) {
    cfg.blocklengths = as_list<std::size_t>(j["n"], "n", as_blocklength);
  }
  if (j.contains("rates")) {
    const json& r = j["rates"];
    if (!r.is_array() || r.size() != 2) {
      throw ConfigError("rates", "expected [R1, R2]");
    }
    const double r1 = as_real(r[0], "rates[0]"), r2 = as_real(r[1], "rates[1]");
    if (r1 < 0 || r2 < 0) throw ConfigError("rates", "rates must be nonnegative");
    cfg.rates = RatePoint{r1, r2};
  }
  if (j.contains("m")) {
    const json& m = j["m"];
    if (!m.is_array() || m.empty()) throw ConfigError("m", "expected [[m1, m2], ...]");
    const bool single = m[0].is_number();
    const json pairs = single ? json::array({m}) : m;
    if (pairs.size() != 1 && pairs.size() != cfg.blocklengths.size()) {
      throw ConfigError("m", "need one [m1, m2] pair or one per blocklength");
    }
    for (std::size_t i = 0; i < cfg.blocklengths.size(); ++i) {
      const std::size_t k = pairs.size() == 1 ? 0 : i;
      const std::string where = "m[" + std::to_string(k) + "]";
      const json& p = pairs[k];
      if (!p.is_array() || p.size() != 2) throw ConfigError(where, "expected [m1, m2]");
      const std::size_t m1 = as_uint(p[0], where), m2 = as_uint(p[1], where);
      const std::size_t n = cfg.blocklengths[i];
      if (m1 < 1 || m2 < 1 || m1 > n || m2 > n) {
        throw ConfigError(where, "need 1 <= m_i <= n = " + std::to_string(n));
      }
      cfg.dims.emplace_back(m1, m2);
    }
  } else if (cfg.rates) {
    for (std::size_t n : cfg.blocklengths) {
      cfg.dims.push_back(dims_for_rates(*cfg.rates, n, cfg.q1, cfg.q2));
    }
  }

  if (j.contains("trials")) {
    cfg.trials = as_uint(j["trials"], "trials");
    if (cfg.trials == 0) throw ConfigError("trials", "must be positive");
  }
  if (j.contains("seed")) cfg.seed = as_uint(j["seed"], "seed");
  if (j.contains("mode")) {
    const std::string mode = field_as<std::string>(j["mode"], "mode");
    if (mode == "exact") {
      cfg.mode = RunMode::kExact;
    } else if (mode == "montecarlo") {
      cfg.mode = RunMode::kMonteCarlo;
    } else {
      throw ConfigError("mode", "expected \"exact\" or \"montecarlo\"");
    }
  }
  if (j.contains("epsilon")) cfg.epsilon = as_real(j["epsilon"], "epsilon");
  if (j.contains("delta")) cfg.delta = as_real(j["delta"], "delta");
  if (cfg.epsilon < 0) throw ConfigError("epsilon", "must be nonnegative");
  if (cfg.delta < 0 || cfg.delta > 1) throw ConfigError("delta", "must lie in [0, 1]");
  if (j.contains("mc_trials")) {
    cfg.mc_trials = as_uint(j["mc_trials"], "mc_trials");
    if (cfg.mc_trials == 0) throw ConfigError("mc_trials", "must be positive");
  }
  if (j.contains("random_offsets")) {
    cfg.random_offsets = as_bool(j["random_offsets"], "random_offsets");
  }
  if (j.contains("record_runtime")) {
    cfg.record_runtime = as_bool(j["record_runtime"], "record_runtime");
  }
  if (j.contains("workers")) {
    cfg.workers = static_cast<unsigned>(as_uint(j["workers"], "workers"));
    if (cfg.workers == 0) cfg.workers = default_workers();
  }
  if (j.contains("output")) {
    cfg.output = field_as<std::string>(j["output"], "output");
  }
  if (j.contains("verify")) parse_verify(j["verify"], cfg.verify);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void write_csv(const std::filesystem::path& path,
               const std::vector<ResultRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    for (std::size_t i = 0; i < kResultColumns.size(); ++i) {
      out << (i ? "," : "") << kResultColumns[i];
    }
    out << "\n";
    for (const ResultRow& r : rows) {
      out << r.n << ',' << r.m1 << ',' << r.m2 << ',' << r.q1 << ',' << r.q2
          << ',' << r.seed << ',' << r.trial << ',' << format_real(r.r1) << ','
          << format_real(r.r2) << ',' << format_real(r.p_e) << ','
          << format_real(r.delta) << ',' << format_real(r.delta_mi) << ','
          << format_real(r.div_cipher_uniform) << ','
          << format_real(r.delta_1) << ',' << format_real(r.delta_2) << ','
          << format_real(r.lemma2_bound) << ',' << int(r.in_sw) << ','
          << int(r.in_key) << ',' << int(r.admissible) << ','
          << format_real(r.runtime_ms) << ',' << csv_quote(r.mode) << "\n";
    }
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ResultRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || csv_split(line) != kResultColumns) {
    throw std::runtime_error(path.string() + ": unexpected CSV header");
  }
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = csv_split(line);
    if (c.size() != kResultColumns.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": wrong number of cells");
    }
    try {
      ResultRow r;
      r.n = std::stoull(c[0]);
      r.m1 = std::stoull(c[1]);
      r.m2 = std::stoull(c[2]);
      r.q1 = static_cast<unsigned>(std::stoul(c[3]));
      r.q2 = static_cast<unsigned>(std::stoul(c[4]));
      r.seed = std::stoull(c[5]);
      r.trial = std::stoull(c[6]);
      r.r1 = std::stod(c[7]);
      r.r2 = std::stod(c[8]);
      r.p_e = std::stod(c[9]);
      r.delta = std::stod(c[10]);
      r.delta_mi = std::stod(c[11]);
      r.div_cipher_uniform = std::stod(c[12]);
      r.delta_1 = std::stod(c[13]);
      r.delta_2 = std::stod(c[14]);
      r.lemma2_bound = std::stod(c[15]);
      r.in_sw = c[16] == "1";
      r.in_key = c[17] == "1";
      r.admissible = c[18] == "1";
      r.runtime_ms = std::stod(c[19]);
      r.mode = c[20];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed number");
    }
  }
  return rows;
}

std::vector<std::string> validate_rows(const std::vector<ResultRow>& rows,
                                       const ExperimentConfig& cfg) {
  // CSV values carry 12 significant digits.
  constexpr double kTol = 1e-8;
  const RateRegion sw = sw_region(cfg.source);
  const RateRegion key = key_region(cfg.keys);
  std::vector<std::string> problems;
  for (const ResultRow& r : rows) {
    const std::string at = "row n=" + std::to_string(r.n) +
                           " trial=" + std::to_string(r.trial) + ": ";
    const double scale = std::max(1.0, std::abs(r.delta));
    if (std::abs(r.delta - (r.delta_mi + r.div_cipher_uniform)) > kTol * scale) {
      problems.push_back(at + "delta != delta_mi + div_cipher_uniform");
    }
    if (r.delta < r.delta_mi - kTol * scale) problems.push_back(at + "delta < delta_mi");
    if (r.delta < r.lemma2_bound - kTol * scale) {
      problems.push_back(at + "delta below lemma2_bound");
    }
    if (r.p_e < 0 || r.p_e > 1) problems.push_back(at + "p_e outside [0, 1]");
    const RatePoint pt = rates_from_params(r.n, r.m1, r.m2, r.q1, r.q2);
    if (std::abs(pt.r1 - r.r1) > kTol || std::abs(pt.r2 - r.r2) > kTol) {
      problems.push_back(at + "rates disagree with (n, m1, m2, q1, q2)");
    }
    if (contains(sw, pt).inside != r.in_sw) problems.push_back(at + "in_sw flag wrong");
    if (contains(key, pt).inside != r.in_key) problems.push_back(at + "in_key flag wrong");
    const bool admissible = r.p_e <= cfg.delta && r.delta <= cfg.epsilon;
    if (admissible != r.admissible) problems.push_back(at + "admissible flag wrong");
  }
  return problems;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
  if (cfg.blocklengths.empty()) throw ConfigError("n", "sweep needs blocklengths");
  if (cfg.dims.size() != cfg.blocklengths.size()) {
    throw ConfigError("m", "sweep needs \"m\" or \"rates\"");
  }
  struct Job {
    std::size_t n, m1, m2, trial;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < cfg.blocklengths.size(); ++i) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      jobs.push_back({cfg.blocklengths[i], cfg.dims[i].first, cfg.dims[i].second, t});
    }
  }
  const FieldSpec f1(cfg.q1), f2(cfg.q2);
  const RateRegion sw = sw_region(cfg.source);
  const RateRegion key = key_region(cfg.keys);
  std::vector<ResultRow> rows(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t idx) {
    const Job& job = jobs[idx];
    const auto start = std::chrono::steady_clock::now();
    ResultRow& row = rows[idx];
    row.n = job.n;
    row.m1 = job.m1;
    row.m2 = job.m2;
    row.q1 = cfg.q1;
    row.q2 = cfg.q2;
    row.trial = job.trial;
    row.seed = derive_seed(cfg.seed, job.n, job.trial);
    std::mt19937_64 rng(row.seed);
    AffineEncoderPair enc = AffineEncoderPair::sample(
        rng, f1, f2, job.n, job.m1, job.m2, cfg.random_offsets);

    ReportOptions options;
    options.monte_carlo = cfg.mode == RunMode::kMonteCarlo;
    options.monte_carlo_trials = cfg.mc_trials;
    options.seed = rng();
    row.mode = options.monte_carlo ? "montecarlo" : "exact";
    std::optional<Cryptosystem> sys;
    try {
      sys.emplace(enc, 1u);
    } catch (const ResourceError&) {
      sys.emplace(Cryptosystem::on_demand(enc));
      options.monte_carlo = true;
      if (cfg.mode == RunMode::kExact) row.mode = "montecarlo-downgraded";
    }
    const BlockDistribution src(cfg.source, job.n);
    const BlockDistribution keys(cfg.keys, job.n);
    const SecurityReport rep =
        build_report(*sys, src, keys, cfg.epsilon, cfg.delta, options);

    row.r1 = rep.r1;
    row.r2 = rep.r2;
    row.p_e = rep.p_e;
    row.delta = rep.delta;
    row.delta_mi = rep.delta_mi;
    row.div_cipher_uniform = rep.div_cipher_uniform;
    row.delta_1 = rep.delta_1;
    row.delta_2 = rep.delta_2;
    row.lemma2_bound = rep.lemma2_bound;
    const RatePoint pt{rep.r1, rep.r2};
    row.in_sw = contains(sw, pt).inside;
    row.in_key = contains(key, pt).inside;
    row.admissible = rep.admissible();
    if (cfg.record_runtime) {
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
  });
  return rows;
}

int cmd_analyze(const ExperimentConfig& cfg, std::ostream& out) {
  const RateRegion sw = sw_region(cfg.source);
  const RateRegion key = key_region(cfg.keys);
  out << "source region R_sw: R1 >= " << fixed6(sw.t1()) << ", R2 >= "
      << fixed6(sw.t2()) << ", R1+R2 >= " << fixed6(sw.t12()) << "\n";
  out << "key region R_key:   R1 <= " << fixed6(key.t1()) << ", R2 <= "
      << fixed6(key.t2()) << ", R1+R2 <= " << fixed6(key.t12()) << "\n";
  if (const auto w = intersection_witness(sw, key)) {
    out << "intersection witness: (" << fixed6(w->r1) << ", " << fixed6(w->r2)
        << ")\n";
  } else {
    out << "intersection empty\n";
  }
  for (std::size_t i = 0; i < cfg.dims.size(); ++i) {
    const std::size_t n = cfg.blocklengths[i];
    const auto [m1, m2] = cfg.dims[i];
    const RatePoint pt = rates_from_params(n, m1, m2, cfg.q1, cfg.q2);
    out << "n=" << n << " m1=" << m1 << " m2=" << m2 << " rates=("
        << fixed6(pt.r1) << ", " << fixed6(pt.r2) << ") in_sw="
        << (contains(sw, pt).inside ? "yes" : "no")
        << " in_key=" << (contains(key, pt).inside ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

namespace {

struct CheckTally {
  std::string name;
  bool passed = true;
  double worst = 0.0;
};

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out,
               const VerifyOptions& options) {
  const VerifySuite& suite = cfg.verify;
  std::vector<CheckTally> tallies;
  std::map<std::string, std::size_t> slot;
  std::vector<std::string> failures;
  auto record = [&](const std::string& name, bool ok, double deviation,
                    std::size_t system, std::uint64_t seed) {
    if (!slot.contains(name)) {
      slot[name] = tallies.size();
      tallies.push_back({name});
    }
    CheckTally& t = tallies[slot[name]];
    if (std::isnan(deviation)) deviation = INFINITY;
    t.worst = std::max(t.worst, deviation);
    if (!ok) {
      t.passed = false;
      failures.push_back("FAIL " + name + " system=" + std::to_string(system) +
                         " seed=" + std::to_string(seed) +
                         " deviation=" + format_real(deviation));
    }
  };

  for (std::size_t i = 0; i < suite.systems; ++i) {
    const std::uint64_t seed = derive_seed(cfg.seed, ~std::uint64_t{0}, i);
    std::mt19937_64 rng(seed);
    unsigned q1 = cfg.q1, q2 = cfg.q2;
    if (suite.random_pmfs) {
      q1 = q2 = suite.fields[rng() % suite.fields.size()];
    }
    const std::size_t n = suite.blocklengths[rng() % suite.blocklengths.size()];
    const FieldSpec f1(q1), f2(q2);
    const JointPmf src_pmf = suite.random_pmfs ? random_pmf(rng, q1, q2) : cfg.source;
    JointPmf key_pmf = cfg.keys;
    std::optional<AffineEncoderPair> enc;
    if (suite.identity_otp) {
      enc.emplace(AffineEncoderPair::identity(f1, f2, n));
      key_pmf = JointPmf::uniform(q1, q2);
    } else {
      if (suite.random_pmfs) key_pmf = random_pmf(rng, q1, q2);
      const std::size_t hi = n > 1 ? n - 1 : 1;
      std::uniform_int_distribution<std::size_t> dim(1, hi);
      const std::size_t m1 = dim(rng), m2 = dim(rng);
      enc.emplace(AffineEncoderPair::sample(rng, f1, f2, n, m1, m2,
                                            cfg.random_offsets));
    }
    std::optional<Cryptosystem> sys;
    sys.emplace(*enc, 1u);
    if (options.corrupt_table) {
      const DecoderTable& t = sys->table();
      DecoderTable bad = t.with_entry(0, 1, t.lookup(0, 0));
      sys.emplace(*enc, std::move(bad));
    }
    const BlockDistribution src(src_pmf, n), keys(key_pmf, n);
    const DecodingSet& d = sys->decoding_set();

    const double expected =
        double(word_space_size(f1, enc->m1())) * double(word_space_size(f2, enc->m2()));
    const double card_dev = std::abs(double(d.size()) - expected);
    record("cardinality", card_dev == 0.0, card_dev, i, seed);

    const TableCheck tc = check_decoder_table(sys->table(), *enc);
    record("decoder_injective", tc.injective && tc.reencodes,
           double(sys->table().size() - tc.distinct_values), i, seed);

    const CipherModel model(make_oracle(*sys), keys);
    const Lemma1Result l1 = lemma1_verify(model, d);
    record("lemma1_sums", l1.max_deviation < kLemmaTolerance, l1.max_deviation, i,
           seed);

    const CheckDistribution check = check_distribution(model, d);
    record("check_uniform", check.valid, check.max_deviation, i, seed);

    const PartitionResult part = key_preimage_partition_verify_all(model, d);
    record("key_partition", part.disjoint && part.covering,
           double(part.failing_ciphers), i, seed);

    const double delta = delta_exact(model, src, d, seed).value;
    const double mi = delta_mi(model, src);
    const double div = cipher_divergence_from_uniform(model, src);
    const double decomposition = std::abs(delta - (mi + div));
    record("decomposition", decomposition < 1e-9 && delta >= mi - 1e-9,
           decomposition, i, seed);

    const Lemma2Bound bound = lemma2_bound(n, enc->m1(), enc->m2(), q1, q2,
                                           entropy_set(key_pmf));
    record("lemma2", delta >= bound.raw - 1e-9, std::max(0.0, bound.raw - delta),
           i, seed);

    const double affine = delta_affine(*enc, keys);
    record("cross_path", std::abs(delta - affine) < 1e-9,
           std::abs(delta - affine), i, seed);

    if (suite.identity_otp) {
      const double pe = error_probability_exact(src, d);
      record("zero_leakage", delta < 1e-9 && pe == 0.0, std::max(delta, pe), i,
             seed);
    }
  }

  bool all = true;
  for (const CheckTally& t : tallies) {
    out << (t.passed ? "pass " : "FAIL ") << t.name
        << " worst_deviation=" << format_real(t.worst) << "\n";
    all = all && t.passed;
  }
  for (const std::string& f : failures) out << f << "\n";
  out << (all ? "all checks passed" : "verification failed") << " ("
      << suite.systems << " systems)\n";
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const std::vector<ResultRow> rows = run_sweep(cfg);
  write_csv(cfg.output, rows);
  const auto problems = validate_rows(read_csv(cfg.output), cfg);

  std::map<std::size_t, std::vector<const ResultRow*>> by_n;
  for (const ResultRow& r : rows) by_n[r.n].push_back(&r);
  for (const auto& [n, group] : by_n) {
    std::vector<double> deltas, errors;
    std::size_t downgraded = 0;
    for (const ResultRow* r : group) {
      deltas.push_back(r->delta);
      errors.push_back(r->p_e);
      if (r->mode == "montecarlo-downgraded") ++downgraded;
    }
    out << "n=" << n << " m1=" << group.front()->m1 << " m2=" << group.front()->m2
        << " rows=" << group.size() << " median_delta=" << format_real(median(deltas))
        << " median_p_e=" << format_real(median(errors));
    if (downgraded) out << " downgraded=" << downgraded;
    out << "\n";
  }
  out << "wrote " << rows.size() << " rows to " << cfg.output.string() << "\n";
  for (const std::string& p : problems) out << "INVALID " << p << "\n";
  return problems.empty() ? kExitOk : kExitVerifyFailed;
}

}  // namespace dsc
