#include "aenx_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "aenx/math.hpp"
#include "aenx/rates.hpp"
#include "aenx/simulator.hpp"
#include "aenx/validation.hpp"
#include "aenx_cli/table.hpp"

namespace aenx::cli {

namespace {

using nlohmann::ordered_json;

/// Raised for flag combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

struct WindowOptions {
  std::vector<int> levels;
  std::optional<int> l1;
  std::optional<int> l2;
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.path, "Write output to this file instead of stdout");
}

void add_window_flags(CLI::App* cmd, WindowOptions& w, bool level_list) {
  auto* levels = cmd->add_option("--levels", w.levels,
                                 level_list ? "Total level counts, comma separated" : "Total level count")
                     ->check(CLI::PositiveNumber);
  if (level_list) {
    levels->delimiter(',');
  } else {
    levels->expected(1);
  }
  auto* l1 = cmd->add_option("--l1", w.l1, "Levels below zero (window starts at -l1)");
  auto* l2 = cmd->add_option("--l2", w.l2, "Top level of the window");
  levels->excludes(l1)->excludes(l2);
}

int integer_gamma_ceil(double snr) { return static_cast<int>(std::ceil(std::log2(1.0 + snr) - 1e-12)); }

LevelRange window_for_count(int n, double snr) { return centered_window(snr, n); }

LevelRange resolve_window(const WindowOptions& w, double snr, const LevelRange& fallback) {
  if (w.l1 || w.l2) {
    if (!w.l1 || !w.l2) throw UsageError("--l1 and --l2 must be given together");
    if (-*w.l1 > *w.l2) throw UsageError("empty window: -l1 exceeds l2");
    return LevelRange(-*w.l1, *w.l2);
  }
  if (!w.levels.empty()) return window_for_count(w.levels.front(), snr);
  return fallback;
}

/// "a" or "a:step:b" in dB.
std::vector<double> parse_snr_sweep(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("malformed --snr-db value '" + text + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw UsageError("--snr-db expects <a> or <a:step:b>");
  const double a = parts[0], step = parts[1], b = parts[2];
  if (!(step > 0.0) || b < a) throw UsageError("--snr-db sweep '" + text + "' is empty");
  std::vector<double> points;
  for (long k = 0;; ++k) {
    const double v = a + static_cast<double>(k) * step;
    if (v > b + 1e-9 * std::max(1.0, std::abs(b))) break;
    points.push_back(v);
  }
  return points;
}

double parse_single_snr_db(const std::string& text) {
  const auto points = parse_snr_sweep(text);
  if (points.size() != 1) throw UsageError("this command takes a single --snr-db value");
  return points.front();
}

void emit(const OutputOptions& o, std::ostream& out, const std::string& payload) {
  if (o.path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + o.path + "'");
  file << payload;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- level-table

struct LevelTableOptions {
  std::optional<std::string> snr_db;
  std::optional<int> gamma;
  WindowOptions window;
  std::string dist = "c1";
  bool zero_input = false;
  OutputOptions output;
};

int cmd_level_table(const LevelTableOptions& o, std::ostream& out) {
  int gamma_hint = 15;
  std::optional<ChannelSpec> channel;
  if (o.gamma) {
    if (*o.gamma < 1 || *o.gamma > 60) throw UsageError("--gamma must lie in [1, 60]");
    gamma_hint = *o.gamma;
  }
  if (o.snr_db) {
    channel = ChannelSpec::from_snr(db_to_linear(parse_single_snr_db(*o.snr_db)));
    gamma_hint = integer_gamma_ceil(channel->snr());
  } else {
    channel = ChannelSpec(std::ldexp(1.0, gamma_hint) - 1.0, 1.0);
  }
  const LevelRange range = resolve_window(o.window, channel->snr(), LevelRange(-5, gamma_hint + 5));
  const InputChoice choice = parse_input_choice(o.dist);

  ShapedInput input = input_profile(*channel, choice, range);
  if (o.zero_input) input.profile = BernoulliProfile(range);
  const BernoulliProfile q = noise_profile(*channel, range);
  const BernoulliProfile q_tilde = effective_noise_profile(input.profile, q);
  const double capacity = aen_capacity(channel->snr());
  const RateBreakdown r1 = rate_carryover_as_noise(input, q, capacity);
  const RateBreakdown r2 = rate_carryover_decoded(input, q, capacity);

  Table table({"level", "p", "q", "p_conv_q", "q_tilde", "rate_r1", "rate_r2"});
  for (std::size_t i = 0; i < range.count(); ++i) {
    const int l = range.lo() + static_cast<int>(i);
    table.add_row({static_cast<long long>(l), input.profile.at(l), q.at(l),
                   bernoulli_convolve(input.profile.at(l), q.at(l)), q_tilde.at(l), r1.per_level[i].rate,
                   r2.per_level[i].rate});
  }

  if (o.output.format == "csv") {
    std::ostringstream os;
    table.write_csv(os);
    emit(o.output, out, os.str());
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "level-table";
  j["parameters"] = {{"e_x", rounded_real(channel->e_x())},
                     {"e_n", rounded_real(channel->e_n())},
                     {"snr_db", rounded_real(linear_to_db(channel->snr()))},
                     {"gamma", rounded_real(channel->gamma())},
                     {"l_min", range.lo()},
                     {"l_max", range.hi()},
                     {"dist", o.dist},
                     {"duty", rounded_real(input.duty)}};
  j["totals"] = {{"capacity", rounded_real(capacity)},
                 {"r1", rounded_real(r1.total)},
                 {"r2", rounded_real(r2.total)}};
  j["rows"] = table.to_json();
  emit(o.output, out, dump(j));
  return kExitOk;
}

// ---------------------------------------------------------------- rates-sweep

struct RatesSweepOptions {
  std::string snr_db = "0:1:30";
  WindowOptions window;
  std::string scheme = "both";
  OutputOptions output;
};

int cmd_rates_sweep(const RatesSweepOptions& o, std::ostream& out) {
  const auto points = parse_snr_sweep(o.snr_db);
  const bool fixed_window = o.window.l1 || o.window.l2;
  std::vector<int> counts = o.window.levels;
  if (counts.empty() && !fixed_window) counts = {41};
  if (fixed_window) counts = {0};
  const bool with_r1 = o.scheme != "r2";
  const bool with_r2 = o.scheme != "r1";

  std::vector<std::string> columns = {"snr_db", "levels", "capacity"};
  if (with_r1) columns.insert(columns.end(), {"r1_c1", "r1_c2"});
  if (with_r2) columns.insert(columns.end(), {"r2_c1", "r2_c2"});
  Table table(columns);

  for (int n : counts) {
    for (double db : points) {
      const ChannelSpec channel = ChannelSpec::from_snr(db_to_linear(db));
      const LevelRange range = fixed_window ? resolve_window(o.window, channel.snr(), LevelRange(0, 0))
                                            : window_for_count(n, channel.snr());
      const double capacity = aen_capacity(channel.snr());
      const BernoulliProfile q = noise_profile(channel, range);
      const ShapedInput c1 = input_profile(channel, InputChoice::C1, range);
      const ShapedInput c2 = input_profile(channel, InputChoice::C2, range);
      std::vector<Cell> row = {db, static_cast<long long>(range.count()), capacity};
      if (with_r1) {
        row.emplace_back(rate_carryover_as_noise(c1, q, capacity).total);
        row.emplace_back(rate_carryover_as_noise(c2, q, capacity).total);
      }
      if (with_r2) {
        row.emplace_back(rate_carryover_decoded(c1, q, capacity).total);
        row.emplace_back(rate_carryover_decoded(c2, q, capacity).total);
      }
      table.add_row(std::move(row));
    }
  }

  if (o.output.format == "csv") {
    std::ostringstream os;
    table.write_csv(os);
    emit(o.output, out, os.str());
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "rates-sweep";
  j["parameters"] = {{"snr_db", o.snr_db}, {"scheme", o.scheme}};
  j["rows"] = table.to_json();
  emit(o.output, out, dump(j));
  return kExitOk;
}

// ---------------------------------------------------------------- gap-cert

struct GapCertOptions {
  double epsilon = 0.25;
  std::optional<int> gamma;
  std::optional<std::string> snr_db;
  std::optional<int> levels_below;
  OutputOptions output;
};

int cmd_gap_cert(const GapCertOptions& o, std::ostream& out) {
  if (!(o.epsilon > 0.0) || !std::isfinite(o.epsilon)) throw UsageError("--epsilon must be positive");
  const double c = gap_constant(o.epsilon);
  int gamma = static_cast<int>(std::ceil(2.0 * c));
  if (o.gamma) gamma = *o.gamma;
  if (o.snr_db) {
    const double g = std::log2(1.0 + db_to_linear(parse_single_snr_db(*o.snr_db)));
    if (std::abs(g - std::round(g)) > 1e-6 || std::round(g) < 1.0) {
      throw UsageError("log2(1+SNR) = " + format_real(g) +
                       " is not a positive integer; the certificate needs SNR = 2^gamma - 1 "
                       "(use --gamma instead)");
    }
    gamma = static_cast<int>(std::round(g));
  }
  if (gamma < 1 || gamma > 60) throw UsageError("gamma must lie in [1, 60]");
  const int below = o.levels_below.value_or(std::max(1, static_cast<int>(std::ceil(c))));
  if (below < 1) throw UsageError("--l1 must be at least 1");

  const GapCertificate cert = gap_certificate(o.epsilon, ChannelSpec(std::ldexp(1.0, gamma) - 1.0, 1.0), below);
  const std::string status = !cert.preconditions_met ? "PRECONDITIONS_NOT_MET" : (cert.certified ? "PASS" : "FAIL");

  Table table({"epsilon", "c_const", "gamma_required", "l_required", "gamma", "l", "capacity", "achieved_rate",
               "achieved_gap", "preconditions_met", "status"});
  table.add_row({cert.epsilon, cert.c_const, cert.gamma_required, cert.l_required,
                 static_cast<long long>(cert.gamma), static_cast<long long>(cert.levels_below),
                 static_cast<double>(cert.gamma), cert.achieved_rate, cert.achieved_gap, cert.preconditions_met,
                 status});

  if (o.output.format == "csv") {
    std::ostringstream os;
    table.write_csv(os);
    emit(o.output, out, os.str());
  } else {
    ordered_json j;
    j["command"] = "gap-cert";
    j["certificate"] = table.to_json().front();
    emit(o.output, out, dump(j));
  }
  return cert.certified ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
  double lambda = 1.0;
  int l1 = 20;
  int l2 = 20;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  std::uint64_t blocklength = 1'000'000;
  std::optional<int> perturb_level;
  double perturb = 0.1;
  OutputOptions output;
};

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  if (!(o.lambda > 0.0)) throw UsageError("--lambda must be positive");
  if (-o.l1 > o.l2) throw UsageError("empty window: -l1 exceeds l2");
  const std::uint64_t samples = o.trials * o.blocklength;
  if (samples < 10'000) throw UsageError("validate needs trials * blocklength >= 10000");

  ValidationConfig config;
  config.lambda = o.lambda;
  config.range = LevelRange(-o.l1, o.l2);
  config.samples = samples;
  config.seed = o.seed;
  if (o.perturb_level) {
    if (!config.range.contains(*o.perturb_level)) throw UsageError("--perturb-level outside the window");
    config.perturb_level = o.perturb_level;
    config.perturb_delta = o.perturb;
  }
  const ValidationReport report = validate_expansion(config);

  Table table({"check", "statistic", "threshold", "pass"});
  for (const auto& c : report.checks) table.add_row({c.name, c.statistic, c.threshold, c.pass});

  if (o.output.format == "csv") {
    std::ostringstream os;
    table.write_csv(os);
    emit(o.output, out, os.str());
  } else {
    ordered_json j;
    j["command"] = "validate";
    j["parameters"] = {{"lambda", rounded_real(o.lambda)}, {"l_min", -o.l1}, {"l_max", o.l2},
                       {"samples", samples}, {"seed", o.seed}};
    j["checks"] = table.to_json();
    j["pass"] = report.pass;
    emit(o.output, out, dump(j));
  }
  return report.pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string snr_db = "30";
  WindowOptions window;
  std::string dist = "c1";
  std::string mode = "genie_strip";
  std::string noise = "quantized";
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  std::uint64_t blocklength = 10'000;
  unsigned threads = 0;
  OutputOptions output;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const ChannelSpec channel = ChannelSpec::from_snr(db_to_linear(parse_single_snr_db(o.snr_db)));
  SimConfig config;
  config.blocklength = o.blocklength;
  config.trials = o.trials;
  config.seed = o.seed;
  config.mode = parse_sim_mode(o.mode);
  config.channel = channel;
  config.range = resolve_window(o.window, channel.snr(), window_for_count(41, channel.snr()));
  config.input_choice = parse_input_choice(o.dist);
  config.noise_source = o.noise == "bernoulli" ? NoiseSource::level_bernoulli : NoiseSource::quantized_exponential;
  config.threads = o.threads;
  if (config.range.count() > 62) throw UsageError("simulate supports at most 62 levels");

  const SimReport report = simulate(config);

  const LevelRange& range = config.range;
  const ShapedInput input = input_profile(channel, config.input_choice, range);
  const BernoulliProfile q = noise_profile(channel, range);
  const BernoulliProfile q_tilde = effective_noise_profile(input.profile, q);
  const double capacity = aen_capacity(channel.snr());
  const RateBreakdown r1 = rate_carryover_as_noise(input, q, capacity);
  const RateBreakdown r2 = rate_carryover_decoded(input, q, capacity);

  Table table({"level", "q", "q_tilde", "analytic_carry", "crossover", "crossover_minus_q",
               "crossover_minus_q_tilde", "mi", "analytic_rate_r1", "analytic_rate_r2", "carry_rate", "samples"});
  for (std::size_t i = 0; i < range.count(); ++i) {
    const int l = range.lo() + static_cast<int>(i);
    const LevelStats& s = report.per_level[i];
    const double analytic_carry = l == range.lo() ? 0.0 : input.profile.at(l - 1) * q_tilde.at(l - 1);
    table.add_row({static_cast<long long>(l), q.at(l), q_tilde.at(l), analytic_carry, s.crossover,
                   s.crossover - q.at(l), s.crossover - q_tilde.at(l), s.mi, r1.per_level[i].rate,
                   r2.per_level[i].rate, s.carry_rate, static_cast<long long>(s.samples)});
  }

  std::vector<std::pair<std::string, Cell>> summary = {
      {"mode", std::string(to_string(config.mode))},
      {"dist", o.dist},
      {"snr_db", rounded_real(linear_to_db(channel.snr()))},
      {"l_min", static_cast<long long>(range.lo())},
      {"l_max", static_cast<long long>(range.hi())},
      {"seed", static_cast<long long>(o.seed)},
      {"duty", report.duty},
      {"total_symbols", static_cast<long long>(report.total_symbols)},
      {"active_symbols", static_cast<long long>(report.active_symbols)},
      {"counted_symbols", static_cast<long long>(report.counted_symbols)},
      {"overflow_count", static_cast<long long>(report.overflow_count)},
      {"energy_estimate", report.energy_estimate},
      {"energy_std_error", report.energy_std_error},
      {"e_x", channel.e_x()},
      {"mi_total", report.mi_total},
      {"r1_total", r1.total},
      {"r2_total", r2.total},
      {"capacity", capacity},
  };

  if (o.output.format == "csv") {
    std::ostringstream os;
    table.write_csv(os);
    for (const auto& [k, v] : summary) os << "# " << k << "=" << cell_text(v) << '\n';
    emit(o.output, out, os.str());
  } else {
    ordered_json j;
    j["command"] = "simulate";
    ordered_json sj = ordered_json::object();
    for (const auto& [k, v] : summary) sj[k] = cell_to_json(v);
    j["summary"] = sj;
    j["rows"] = table.to_json();
    emit(o.output, out, dump(j));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expansion coding for the additive exponential noise channel"};
  app.name("aenx");
  app.require_subcommand(1);

  LevelTableOptions lt;
  auto* level_table = app.add_subcommand("level-table", "Per-level input/noise probabilities and rates");
  level_table->add_option("--snr-db", lt.snr_db, "Channel SNR in dB (default: gamma = 15)");
  level_table->add_option("--gamma", lt.gamma, "Integer log2(1+SNR); sets E_X = 2^gamma - 1, E_N = 1");
  level_table->get_option("--snr-db")->excludes(level_table->get_option("--gamma"));
  add_window_flags(level_table, lt.window, false);
  level_table->add_option("--dist", lt.dist, "Input choice")->check(CLI::IsMember({"c1", "c2"}));
  level_table->add_flag("--zero-input", lt.zero_input, "Override the input profile with p = 0");
  add_output_flags(level_table, lt.output);

  RatesSweepOptions rs;
  auto* rates_sweep = app.add_subcommand("rates-sweep", "R1/R2 totals over an SNR sweep");
  rates_sweep->add_option("--snr-db", rs.snr_db, "SNR in dB: <a> or <a:step:b>");
  add_window_flags(rates_sweep, rs.window, true);
  rates_sweep->add_option("--scheme", rs.scheme, "Columns to emit")->check(CLI::IsMember({"r1", "r2", "both"}));
  add_output_flags(rates_sweep, rs.output);

  GapCertOptions gc;
  auto* gap_cert = app.add_subcommand("gap-cert", "High-SNR capacity-gap certificate");
  gap_cert->add_option("--epsilon", gc.epsilon, "Target gap in bits");
  auto* gc_gamma = gap_cert->add_option("--gamma", gc.gamma, "Integer log2(1+SNR) (default: ceil(2c))");
  gap_cert->add_option("--snr-db", gc.snr_db, "SNR in dB; log2(1+SNR) must be an integer")->excludes(gc_gamma);
  gap_cert->add_option("--l1", gc.levels_below, "L, levels below zero (default: ceil(c))");
  add_output_flags(gap_cert, gc.output);

  ValidateOptions va;
  auto* validate = app.add_subcommand("validate", "Statistical checks of the exponential bit expansion");
  validate->add_option("--lambda", va.lambda, "Rate of the exponential law");
  validate->add_option("--l1", va.l1, "Levels below zero");
  validate->add_option("--l2", va.l2, "Top level");
  validate->add_option("--seed", va.seed, "RNG seed");
  validate->add_option("--trials", va.trials, "Number of sample batches")->check(CLI::PositiveNumber);
  validate->add_option("--blocklength", va.blocklength, "Samples per batch")->check(CLI::PositiveNumber);
  validate->add_option("--perturb-level", va.perturb_level, "Negative control: level whose probability is shifted");
  validate->add_option("--perturb", va.perturb, "Shift applied at --perturb-level");
  add_output_flags(validate, va.output);

  SimulateOptions si;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo bit-level channel simulation");
  sim->add_option("--snr-db", si.snr_db, "Channel SNR in dB");
  add_window_flags(sim, si.window, false);
  sim->add_option("--dist", si.dist, "Input choice")->check(CLI::IsMember({"c1", "c2"}));
  sim->add_option("--mode", si.mode, "Carry handling")->check(CLI::IsMember({"genie_strip", "carry_as_noise"}));
  sim->add_option("--noise", si.noise, "Noise generator")->check(CLI::IsMember({"quantized", "bernoulli"}));
  sim->add_option("--seed", si.seed, "RNG seed");
  sim->add_option("--trials", si.trials, "Independent blocks")->check(CLI::PositiveNumber);
  sim->add_option("--blocklength", si.blocklength, "Symbols per block")->check(CLI::PositiveNumber);
  sim->add_option("--threads", si.threads, "Worker threads (0 = all cores)");
  add_output_flags(sim, si.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "aenx: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*level_table) return cmd_level_table(lt, out);
    if (*rates_sweep) return cmd_rates_sweep(rs, out);
    if (*gap_cert) return cmd_gap_cert(gc, out);
    if (*validate) return cmd_validate(va, out);
    if (*sim) return cmd_simulate(si, out);
  } catch (const UsageError& e) {
    err << "aenx: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "aenx: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "aenx: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace aenx::cli
