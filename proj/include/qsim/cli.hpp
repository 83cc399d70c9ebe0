#pragma once

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

#include <json.hpp>

#include "qsim/cfft.hpp"
#include "qsim/epr.hpp"
#include "qsim/grover.hpp"
#include "qsim/oracles.hpp"
#include "qsim/protocols.hpp"
#include "qsim/qec.hpp"
#include "qsim/shor.hpp"

namespace qsim::cli {

using Json = nlohmann::ordered_json;

// One invocation: a command name plus free-form key/value parameters.  With
// output = kJson the report is a single JSON object and identical configs
// produce identical bytes.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  long shots = 1;
  std::map<std::string, std::string> params;
  bool json = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAlgorithmFailure = 3;

namespace detail {

inline std::string get(const RunConfig& cfg, const std::string& key,
                       const std::string& fallback) {
  const auto it = cfg.params.find(key);
  return it == cfg.params.end() ? fallback : it->second;
}

inline long get_long(const RunConfig& cfg, const std::string& key, long fallback) {
  const auto it = cfg.params.find(key);
  if (it == cfg.params.end()) return fallback;
  return std::stol(it->second);
}

inline double get_double(const RunConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.params.find(key);
  if (it == cfg.params.end()) return fallback;
  return std::stod(it->second);
}

inline bool get_flag(const RunConfig& cfg, const std::string& key) {
  const auto it = cfg.params.find(key);
  return it != cfg.params.end() && it->second != "0" && it->second != "false";
}

inline std::vector<std::uint64_t> get_list(const RunConfig& cfg, const std::string& key,
                                           const std::string& fallback) {
  std::vector<std::uint64_t> out;
  std::string text = get(cfg, key, fallback);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma - pos);
    if (!tok.empty()) out.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline Json params_json(const RunConfig& cfg) {
  Json p = Json::object();
  for (const auto& [k, v] : cfg.params) p[k] = v;
  return p;
}

// Sorted (value, probability) rows plus their sum, the export format for the
// peak tables.
inline Json distribution_json(const std::vector<double>& probs) {
  Json rows = Json::array();
  double sum = 0;
  for (std::uint64_t y = 0; y < probs.size(); ++y) {
    sum += probs[y];
    if (probs[y] > 0) rows.push_back(Json::array({y, probs[y]}));
  }
  Json out = Json::object();
  out["rows"] = std::move(rows);
  out["sum"] = sum;
  return out;
}

inline void emit_distribution_text(const std::vector<double>& probs, std::ostream& os) {
  double sum = 0;
  os << "        y   probability\n";
  for (std::uint64_t y = 0; y < probs.size(); ++y) {
    sum += probs[y];
    if (probs[y] > 0)
      os << std::setw(9) << y << "   " << std::setprecision(12) << probs[y] << "\n";
  }
  os << "sum " << std::setprecision(12) << sum << "\n";
}

inline Json run_deutsch(const RunConfig& cfg, Rng&) {
  const std::string f = get(cfg, "f", "01");
  if (f.size() != 2 || (f[0] != '0' && f[0] != '1') || (f[1] != '0' && f[1] != '1'))
    throw std::domain_error("deutsch: --f wants two bits, e.g. 01");
  const OracleSpec spec = make_oracle(1, 1, {std::uint64_t(f[0] - '0'),
                                             std::uint64_t(f[1] - '0')});
  const OracleRunStats r = deutsch(spec);
  Json out;
  out["classification"] =
      r.result == Classification::kConstant ? "CONSTANT" : "BALANCED";
  out["oracle_calls"] = r.oracle_calls;
  return out;
}

inline Json run_dj(const RunConfig& cfg, Rng& rng) {
  const int n = static_cast<int>(get_long(cfg, "n", 2));
  const std::string kind = get(cfg, "kind", "balanced");
  std::vector<std::uint64_t> table(std::uint64_t{1} << n, 0);
  if (kind == "constant0") {
    // already zero
  } else if (kind == "constant1") {
    table.assign(table.size(), 1);
  } else if (kind == "balanced") {
    const std::uint64_t mask = 1 + rng.next_below(table.size() - 1);
    for (std::uint64_t x = 0; x < table.size(); ++x)
      table[x] = static_cast<std::uint64_t>(bitwise_dot(mask, x));
  } else {
    throw std::domain_error("dj: --kind is constant0, constant1 or balanced");
  }
  const OracleRunStats r = deutsch_jozsa(make_oracle(n, 1, table));
  Json out;
  out["classification"] =
      r.result == Classification::kConstant ? "CONSTANT" : "BALANCED";
  out["oracle_calls"] = r.oracle_calls;
  return out;
}

inline Json run_bv(const RunConfig& cfg, Rng&) {
  const int n = static_cast<int>(get_long(cfg, "n", 5));
  const std::uint64_t a = std::stoull(get(cfg, "a", "26"));
  if (a >= (std::uint64_t{1} << n)) throw std::domain_error("bv: --a needs n bits");
  const BvResult r = bernstein_vazirani(a, n);
  Json out;
  out["hidden_string"] = a;
  out["recovered"] = r.a;
  out["oracle_calls"] = r.oracle_calls;
  out["exact"] = (r.a == a);
  return out;
}

inline Json run_simon(const RunConfig& cfg, Rng& rng) {
  const int n = static_cast<int>(get_long(cfg, "n", 3));
  const std::uint64_t a =
      std::stoull(get(cfg, "a", "3")) & ((std::uint64_t{1} << n) - 1);
  if (a == 0) throw std::domain_error("simon: --a must be nonzero");
  // two-to-one table with period a, labels shuffled by the seed
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> table(size, ~std::uint64_t{0});
  std::uint64_t label = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (table[x] != ~std::uint64_t{0}) continue;
    table[x] = table[x ^ a] = label++;
  }
  std::vector<std::uint64_t> perm(label);
  for (std::uint64_t i = 0; i < label; ++i) perm[i] = i;
  for (std::uint64_t i = label; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
  for (auto& v : table) v = perm[v];
  const SimonResult r = simon(make_oracle(n, std::max(1, n - 1), table), rng);
  Json out;
  out["hidden_string"] = a;
  out["recovered"] = r.a;
  out["oracle_calls"] = r.oracle_calls;
  out["exact"] = (r.a == a);
  return out;
}

inline ShorPath parse_path(const std::string& text) {
  if (text == "full") return ShorPath::kFull;
  if (text == "structured") return ShorPath::kStructured;
  if (text == "analytic") return ShorPath::kAnalytic;
  throw std::domain_error("shor: --path is full, structured or analytic");
}

inline Json run_shor(const RunConfig& cfg, Rng& rng, std::ostream& text_out,
                     bool want_json) {
  const u64 n_mod = static_cast<u64>(get_long(cfg, "N", 15));
  const ShorPath path = parse_path(get(cfg, "path", "structured"));
  if (get_flag(cfg, "dist")) {
    const u64 a = static_cast<u64>(get_long(cfg, "a", 4));
    const PeriodInstance inst = make_period_instance(n_mod, a);
    const YDistribution dist = y_distribution(inst);
    Json out;
    out["N"] = n_mod;
    out["a"] = a;
    out["n"] = inst.n;
    out["period"] = inst.r;
    out["distribution"] = distribution_json(dist.probs);
    if (!want_json) emit_distribution_text(dist.probs, text_out);
    return out;
  }
  std::optional<u64> base;
  if (cfg.params.count("a")) base = static_cast<u64>(get_long(cfg, "a", 0));
  const FactorResult r = factor(n_mod, rng, path, base);
  Json out;
  out["N"] = n_mod;
  out["factors"] = Json::array({r.p, r.q});
  out["sampling_rounds"] = r.sampling_rounds;
  out["bases_tried"] = r.bases_tried;
  out["lucky_gcd"] = r.lucky_gcd;
  return out;
}

inline Json run_grover(const RunConfig& cfg, Rng& rng, std::ostream& text_out,
                       bool want_json) {
  const int n = static_cast<int>(get_long(cfg, "n", 3));
  const auto marked_list = get_list(cfg, "marked", "5");
  const std::set<std::uint64_t> marked(marked_list.begin(), marked_list.end());
  std::optional<long> iterations;
  if (cfg.params.count("iterations")) iterations = get_long(cfg, "iterations", 0);
  if (get_flag(cfg, "dist")) {
    const long m = iterations ? *iterations : default_grover_iterations(n, marked.size());
    const StateVector s = grover_state_after(n, marked, m);
    Json out;
    out["iterations"] = m;
    out["distribution"] = distribution_json(probabilities(s));
    if (!want_json) emit_distribution_text(probabilities(s), text_out);
    return out;
  }
  long hits = 0;
  std::uint64_t last = 0;
  long iters = 0;
  for (long shot = 0; shot < cfg.shots; ++shot) {
    const GroverOutcome r = grover_search(n, marked, iterations, rng);
    hits += r.hit ? 1 : 0;
    last = r.sampled;
    iters = r.iterations;
  }
  Json out;
  out["sampled"] = last;
  out["hit"] = marked.count(last) > 0;
  out["hits"] = hits;
  out["shots"] = cfg.shots;
  out["iterations"] = iters;
  out["predicted_success"] = success_probability(n, marked.size(), iters);
  return out;
}

inline Json run_qec(const RunConfig& cfg, Rng& rng) {
  std::string name = get(cfg, "code", "shor9");
  for (char& c : name) c = static_cast<char>(std::toupper(c));
  const StabilizerCode c = code(name);
  const std::string error_text = get(cfg, "error", "none");

  const StateVector logical = make_state(
      1, {{std::cos(0.3), 0}, std::polar(std::sin(0.3), 0.7)});
  const StateVector encoded = encode(c, logical);
  StateVector corrupted = encoded;
  if (error_text.rfind("reset", 0) == 0) {
    const int label = std::stoi(error_text.substr(5));
    corrupted = inject_error(encoded, reset_map(), label - 1);
  } else {
    corrupted = inject_error(encoded, parse_pauli(c.n_physical, error_text));
  }
  auto [signs, post] = measure_syndrome(corrupted, c, rng);
  const StateVector fixed = correct(post, c, signs);
  Json out;
  out["code"] = name;
  out["error"] = error_text;
  out["syndrome"] = syndrome_str(signs);
  out["corrected"] = equal_up_to_global_phase(fixed, encoded, 1e-8);
  return out;
}

inline Json run_bell(const RunConfig& cfg, Rng& rng) {
  const double theta = get_double(cfg, "theta", std::numbers::pi / 3);
  const long trials = get_long(cfg, "trials", 10000);
  const BellInequality ineq = bell_inequality_check(theta);
  const Direction a{0, 0}, c{theta, 0}, b{2 * theta, 0};
  const BellExperiment exp = bell_experiment(a, b, c, trials, rng);
  Json out;
  out["theta"] = theta;
  out["lhs"] = ineq.lhs;
  out["rhs"] = ineq.rhs;
  out["violated"] = ineq.violated;
  out["empirical"] = Json::object();
  out["empirical"]["p_plus_a_plus_b"] = exp.p_plus_plus(0, 1);
  out["empirical"]["p_plus_a_plus_c"] = exp.p_plus_plus(0, 2);
  out["empirical"]["p_plus_c_plus_b"] = exp.p_plus_plus(2, 1);
  return out;
}

inline Json run_qkd(const RunConfig& cfg, Rng& rng, std::ostream& text_out,
                    bool want_json) {
  const std::string protocol = get(cfg, "protocol", "bb84");
  const long photons = get_long(cfg, "photons", 1000);
  const bool eve = get_flag(cfg, "eve");
  QkdTranscript t;
  if (protocol == "bb84")
    t = bb84(photons, eve, rng);
  else if (protocol == "b92")
    t = b92(photons, eve, rng);
  else
    throw std::domain_error("qkd: --protocol is bb84 or b92");

  // transcript export: to a file when requested, otherwise inline in text mode
  const std::string fmt = get(cfg, "export", "");
  if (fmt == "csv" || fmt == "jsonl") {
    const std::string path = get(cfg, "export_file", "");
    std::ofstream file;
    std::ostream* sink = &text_out;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("qkd: cannot open '" + path + "'");
      sink = &file;
    } else if (want_json) {
      throw std::domain_error("qkd: inline export needs text mode; use --export-file");
    }
    if (fmt == "csv")
      write_transcript(t, *sink);
    else
      write_transcript_jsonl(t, *sink);
  } else if (!fmt.empty()) {
    throw std::domain_error("qkd: --export is csv or jsonl");
  }

  Json out;
  out["protocol"] = protocol;
  out["photons"] = photons;
  out["eve"] = eve;
  out["sifted_bits"] = t.sifted_key_alice.size();
  out["sifted_fraction"] = t.sifted_fraction();
  out["disagreement_rate"] = t.disagreement_rate;
  return out;
}

inline Json run_teleport(const RunConfig& cfg, Rng& rng) {
  const double theta = get_double(cfg, "theta", std::numbers::pi / 2);
  const double phi = get_double(cfg, "phi", 0.0);
  const StateVector psi = make_state(
      1, {{std::cos(theta / 2), 0}, std::polar(std::sin(theta / 2), phi)});
  Json outcomes = Json::array();
  long matched = 0;
  int last_x = 0, last_y = 0;
  for (long shot = 0; shot < cfg.shots; ++shot) {
    const TeleportResult r = teleport(psi, rng);
    matched += equal_up_to_global_phase(r.bob_state, psi, 1e-10) ? 1 : 0;
    last_x = r.x;
    last_y = r.y;
    if (shot < 16) outcomes.push_back(Json::array({r.x, r.y}));
  }
  Json out;
  out["x"] = last_x;
  out["y"] = last_y;
  out["outcomes"] = std::move(outcomes);
  out["shots"] = cfg.shots;
  out["state_recovered"] = (matched == cfg.shots);
  return out;
}

inline Json run_fft(const RunConfig& cfg, Rng& rng) {
  SignalVector x;
  if (cfg.params.count("values")) {
    for (std::uint64_t v : get_list(cfg, "values", "")) {
      x.values.push_back(Amplitude{static_cast<double>(v), 0});
    }
    x = pad_to_power_of_two(std::move(x));
  } else {
    const long n = get_long(cfg, "n", 8);
    x.values.resize(n);
    for (auto& v : x.values)
      v = Amplitude{2 * rng.next_double() - 1, 2 * rng.next_double() - 1};
    x = pad_to_power_of_two(std::move(x));
  }
  const SignalVector y = fft(x);
  const SignalVector direct = dft_direct(x);
  double err = 0;
  for (std::size_t k = 0; k < y.values.size(); ++k)
    err = std::max(err, std::abs(y.values[k] - direct.values[k]));
  const SignalVector back = inverse_dft(y);
  double round_trip = 0;
  for (std::size_t k = 0; k < x.values.size(); ++k)
    round_trip = std::max(round_trip, std::abs(back.values[k] - x.values[k]));

  Json rows = Json::array();
  for (const auto& v : y.values) rows.push_back(Json::array({v.real(), v.imag()}));
  Json out;
  out["length"] = x.values.size();
  out["transform"] = std::move(rows);
  out["max_diff_vs_direct"] = err;
  out["round_trip_error"] = round_trip;
  return out;
}

inline Json run_rsa(const RunConfig& cfg, Rng&) {
  const u64 p = static_cast<u64>(get_long(cfg, "p", 7));
  const u64 q = static_cast<u64>(get_long(cfg, "q", 13));
  const u64 c = static_cast<u64>(get_long(cfg, "c", 11));
  const u64 message = static_cast<u64>(get_long(cfg, "message", 51));
  const RsaResult r = rsa_demo(p, q, c, message);
  Json out;
  out["N"] = p * q;
  out["d"] = r.d;
  out["message"] = message;
  out["encoded"] = r.encoded;
  out["decoded"] = r.decoded;
  out["round_trip"] = (r.decoded == message);
  return out;
}

inline Json run_qft(const RunConfig& cfg, Rng&) {
  const int n = static_cast<int>(get_long(cfg, "n", 3));
  const std::uint64_t x = std::stoull(get(cfg, "x", "5"));
  const bool swaps = get(cfg, "swaps", "1") != "0";
  const StateVector out_state =
      run_circuit(qft_circuit(n, swaps), basis_state(n, x));
  Json amps = Json::array();
  for (const auto& a : out_state.amps)
    amps.push_back(Json::array({a.real(), a.imag()}));
  Json out;
  out["n"] = n;
  out["x"] = x;
  out["swaps"] = swaps;
  out["amplitudes"] = std::move(amps);
  return out;
}

inline void print_text(const Json& result, std::ostream& os, int indent = 0) {
  for (const auto& [key, value] : result.items()) {
    os << std::string(indent, ' ') << key << ": ";
    if (value.is_object()) {
      os << "\n";
      print_text(value, os, indent + 2);
      continue;
    }
    os << value.dump() << "\n";
  }
}

}  // namespace detail

// Runs one command and writes the report; identical configs produce
// byte-identical output in JSON mode.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.shots < 1) throw std::domain_error("shots must be at least 1");
    Rng rng(cfg.seed);
    Json result;
    std::ostringstream side_channel;
    if (cfg.command == "deutsch")
      result = detail::run_deutsch(cfg, rng);
    else if (cfg.command == "dj")
      result = detail::run_dj(cfg, rng);
    else if (cfg.command == "bv")
      result = detail::run_bv(cfg, rng);
    else if (cfg.command == "simon")
      result = detail::run_simon(cfg, rng);
    else if (cfg.command == "shor")
      result = detail::run_shor(cfg, rng, side_channel, cfg.json);
    else if (cfg.command == "grover")
      result = detail::run_grover(cfg, rng, side_channel, cfg.json);
    else if (cfg.command == "qec")
      result = detail::run_qec(cfg, rng);
    else if (cfg.command == "bell")
      result = detail::run_bell(cfg, rng);
    else if (cfg.command == "qkd")
      result = detail::run_qkd(cfg, rng, side_channel, cfg.json);
    else if (cfg.command == "teleport")
      result = detail::run_teleport(cfg, rng);
    else if (cfg.command == "fft")
      result = detail::run_fft(cfg, rng);
    else if (cfg.command == "rsa")
      result = detail::run_rsa(cfg, rng);
    else if (cfg.command == "qft")
      result = detail::run_qft(cfg, rng);
    else
      throw std::domain_error("unknown command '" + cfg.command + "'");

    if (cfg.json) {
      Json report;
      report["schema"] = 1;
      report["command"] = cfg.command;
      report["seed"] = cfg.seed;
      report["params"] = detail::params_json(cfg);
      report["result"] = std::move(result);
      Json stats = Json::object();
      stats["shots"] = cfg.shots;
      report["stats"] = std::move(stats);
      out << report.dump() << "\n";
    } else {
      out << cfg.command << " (seed " << cfg.seed << ")\n";
      detail::print_text(result, out);
      out << side_channel.str();
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAlgorithmFailure;
  }
}

}  // namespace qsim::cli
