#include "gsimplex/cli.hpp"

#include <algorithm>
#include <iostream>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsimplex/io.hpp"
#include "gsimplex/verification.hpp"

namespace gsimplex {

namespace {

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number in " + flag + ": '" + item + "'");
    }
    if (pos != item.size()) {
      throw std::invalid_argument("malformed number in " + flag + ": '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::invalid_argument(flag + " must list at least one value");
  }
  return values;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

void validate_simplex_params(const RunConfig& cfg, bool sigmas_required) {
  if (cfg.d < 1) {
    throw std::invalid_argument("--d must be >= 1");
  }
  if (cfg.l < 1) {
    throw std::invalid_argument("--l must be >= 1");
  }
  if (cfg.l > cfg.d) {
    throw std::invalid_argument("l must satisfy l <= d");
  }
  if (sigmas_required) {
    for (double s : cfg.sigmas) {
      if (!(s > 0.0)) {
        throw std::invalid_argument("sigmas must be positive");
      }
    }
    if (static_cast<int>(cfg.sigmas.size()) != cfg.l + 1) {
      throw std::invalid_argument("--sigmas must list l+1 values");
    }
  }
}

bool needs_sigmas(const RunConfig& cfg) {
  switch (cfg.command) {
    case RunConfig::Command::kMoments:
    case RunConfig::Command::kDensity:
      return true;
    case RunConfig::Command::kSample:
      return cfg.kind != "origin";
    case RunConfig::Command::kVerify:
      return cfg.experiment == "theorem1" || cfg.experiment == "grassmannian";
    case RunConfig::Command::kReport:
      return false;
  }
  return false;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output_path.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(cfg.output_path, content);
  }
}

VerificationReport report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport report;
  report.experiment = j.at("experiment").get<std::string>();
  const auto& params = j.at("parameters");
  report.parameters.d = params.at("d").get<int>();
  report.parameters.l = params.at("l").get<int>();
  report.parameters.sigmas = params.at("sigmas").get<std::vector<double>>();
  report.parameters.n = params.at("n").get<std::size_t>();
  report.parameters.seed = params.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("statistics")) {
    report.statistics.push_back({s.at("name").get<std::string>(), s.at("value").get<double>(),
                                 s.at("threshold").get<double>(), s.at("pass").get<bool>()});
  }
  for (const auto& p : j.at("p_values")) {
    report.p_values.push_back({p.at("name").get<std::string>(), p.at("p").get<double>()});
  }
  report.runtime_seconds = j.at("runtime_seconds").get<double>();
  return report;
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "name,value,threshold,pass\n";
  for (const StatEntry& s : report.statistics) {
    out << s.name << "," << format_double(s.value) << "," << format_double(s.threshold) << ","
        << (s.pass ? "true" : "false") << "\n";
  }
  return out.str();
}

int run_moments(const RunConfig& cfg) {
  const WeightVector w(cfg.sigmas);
  std::vector<double> values;
  values.reserve(cfg.p_list.size());
  for (double p : cfg.p_list) {
    values.push_back(weighted_volume_moment(cfg.d, cfg.l, w, p));
  }
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "moments";
    j["d"] = cfg.d;
    j["l"] = cfg.l;
    j["sigmas"] = cfg.sigmas;
    j["p"] = cfg.p_list;
    j["values"] = values;
    emit(cfg, j.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    std::ostringstream out;
    out << "p,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << format_double(cfg.p_list[i]) << "," << format_double(values[i]) << "\n";
    }
    emit(cfg, out.str());
  } else {
    std::ostringstream out;
    for (double v : values) {
      out << format_double(v) << "\n";
    }
    emit(cfg, out.str());
  }
  return 0;
}

int run_density(const RunConfig& cfg) {
  const WeightVector w(cfg.sigmas);
  const ChiProductSpec spec = spec_from_theorem1(cfg.d, cfg.l, w);
  const GridDensity gd = chiprod_density(spec, cfg.grid_size);
  emit(cfg, cfg.format == "json" ? grid_density_to_json(gd) : grid_density_to_csv(gd));
  return 0;
}

int run_sample(const RunConfig& cfg) {
  EmpiricalSample sample;
  if (cfg.kind == "volumes") {
    const WeightVector w(cfg.sigmas);
    sample = sample_weighted_simplex_volumes(cfg.d, cfg.l, w, cfg.n, cfg.seed, 0, cfg.workers);
  } else if (cfg.kind == "origin") {
    sample = sample_origin_simplex_volumes(cfg.d, cfg.l, cfg.n, cfg.seed, 0, cfg.workers);
  } else if (cfg.kind == "chiprod") {
    const WeightVector w(cfg.sigmas);
    const ChiProductSpec spec = spec_from_theorem1(cfg.d, cfg.l, w);
    sample = sample_chiprod(spec, cfg.n, cfg.seed, 0, cfg.workers);
  } else {
    throw std::invalid_argument("--kind must be one of volumes|origin|chiprod");
  }
  emit(cfg,
       cfg.format == "json" ? empirical_sample_to_json(sample) : empirical_sample_to_csv(sample));
  return 0;
}

int run_verify(const RunConfig& cfg) {
  VerificationReport report;
  if (cfg.experiment == "theorem1") {
    report = verify_theorem1(cfg.d, cfg.l, WeightVector(cfg.sigmas), cfg.n, cfg.seed, cfg.workers);
  } else if (cfg.experiment == "withorigin") {
    report = verify_with_origin(cfg.d, cfg.l, cfg.n, cfg.seed, cfg.workers);
  } else if (cfg.experiment == "projection") {
    report = verify_projection_identity(cfg.d, cfg.l, cfg.n, cfg.seed, cfg.workers);
  } else if (cfg.experiment == "grassmannian") {
    report =
        verify_grassmannian_lemma(cfg.d, cfg.l, WeightVector(cfg.sigmas), cfg.n, cfg.seed,
                                  cfg.workers);
  } else {
    throw std::invalid_argument(
        "experiment must be one of theorem1|withorigin|projection|grassmannian");
  }
  // JSON/CSV artifacts are byte-reproducible: runtime is pinned to 0 there
  // and available in the text rendering.
  if (cfg.format == "json") {
    emit(cfg, report.to_json(/*include_runtime=*/false));
  } else if (cfg.format == "csv") {
    emit(cfg, report_to_csv(report));
  } else {
    emit(cfg, report.to_text());
  }
  return report.all_pass() ? 0 : 1;
}

int run_report(const RunConfig& cfg) {
  std::ifstream in(cfg.input_path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open --input file: " + cfg.input_path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const VerificationReport report = report_from_json(buffer.str());
  emit(cfg, report.to_text());
  return 0;
}

}  // namespace

std::vector<std::string> RunConfig::to_argv() const {
  std::vector<std::string> argv;
  auto add = [&argv](const std::string& flag, const std::string& value) {
    argv.push_back(flag);
    argv.push_back(value);
  };
  switch (command) {
    case Command::kMoments:
      argv.push_back("moments");
      add("--d", std::to_string(d));
      add("--l", std::to_string(l));
      add("--sigmas", join_doubles(sigmas));
      add("--p", join_doubles(p_list));
      break;
    case Command::kDensity:
      argv.push_back("density");
      add("--d", std::to_string(d));
      add("--l", std::to_string(l));
      add("--sigmas", join_doubles(sigmas));
      add("--grid-size", std::to_string(grid_size));
      break;
    case Command::kSample:
      argv.push_back("sample");
      add("--kind", kind);
      add("--d", std::to_string(d));
      add("--l", std::to_string(l));
      if (!sigmas.empty()) add("--sigmas", join_doubles(sigmas));
      add("--n", std::to_string(n));
      add("--seed", std::to_string(seed));
      add("--workers", std::to_string(workers));
      break;
    case Command::kVerify:
      argv.push_back("verify");
      argv.push_back(experiment);
      add("--d", std::to_string(d));
      add("--l", std::to_string(l));
      if (!sigmas.empty()) add("--sigmas", join_doubles(sigmas));
      add("--n", std::to_string(n));
      add("--seed", std::to_string(seed));
      add("--workers", std::to_string(workers));
      break;
    case Command::kReport:
      argv.push_back("report");
      add("--input", input_path);
      break;
  }
  add("--format", format);
  if (!output_path.empty()) add("--output", output_path);
  return argv;
}

ParseResult parse_args(const std::vector<std::string>& argv) {
  ParseResult result;
  RunConfig cfg;
  std::string sigmas_str;
  std::string p_str = "1";

  CLI::App app{"Weighted Gaussian simplex volumes: exact laws, sampling, verification"};
  app.name("gsimplex");
  app.require_subcommand(1);

  auto add_format = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", cfg.output_path, "Output file (atomic write); stdout if omitted");
  };
  auto add_dls = [&cfg, &sigmas_str](CLI::App* sub, bool sigmas_required) {
    sub->add_option("--d", cfg.d, "Ambient dimension")->required();
    sub->add_option("--l", cfg.l, "Simplex order (number of vertices minus one)")->required();
    auto* opt = sub->add_option("--sigmas", sigmas_str, "Comma-separated vertex weights (l+1)");
    if (sigmas_required) opt->required();
  };
  auto add_mc = [&cfg](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Sample size")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--workers", cfg.workers, "Parallel sampling workers (output-invariant)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* moments = app.add_subcommand("moments", "Exact moments of the weighted volume");
  add_dls(moments, true);
  moments->add_option("--p", p_str, "Comma-separated moment orders");
  add_format(moments);

  CLI::App* density = app.add_subcommand("density", "Tabulate the exact volume density/CDF");
  add_dls(density, true);
  density->add_option("--grid-size", cfg.grid_size, "Grid points")->check(CLI::Range(64, 1 << 22));
  add_format(density);

  CLI::App* sample = app.add_subcommand("sample", "Draw Monte Carlo samples");
  sample->add_option("--kind", cfg.kind, "volumes | origin | chiprod")
      ->check(CLI::IsMember({"volumes", "origin", "chiprod"}));
  add_dls(sample, false);
  add_mc(sample);
  add_format(sample);

  CLI::App* verify = app.add_subcommand("verify", "Run a statistical verification experiment");
  verify
      ->add_option("experiment", cfg.experiment,
                   "theorem1 | withorigin | projection | grassmannian")
      ->required()
      ->check(CLI::IsMember({"theorem1", "withorigin", "projection", "grassmannian"}));
  add_dls(verify, false);
  add_mc(verify);
  add_format(verify);

  CLI::App* report = app.add_subcommand("report", "Render a JSON verification report as text");
  report->add_option("--input", cfg.input_path, "Report JSON file")->required();
  add_format(report);

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    result.status = ParseResult::Status::kHelp;
    std::ostringstream help;
    help << app.help();
    result.message = help.str();
    return result;
  } catch (const CLI::ParseError& e) {
    result.status = ParseResult::Status::kError;
    result.message = e.what();
    return result;
  }

  if (moments->parsed()) cfg.command = RunConfig::Command::kMoments;
  if (density->parsed()) cfg.command = RunConfig::Command::kDensity;
  if (sample->parsed()) cfg.command = RunConfig::Command::kSample;
  if (verify->parsed()) cfg.command = RunConfig::Command::kVerify;
  if (report->parsed()) cfg.command = RunConfig::Command::kReport;

  try {
    if (!sigmas_str.empty()) {
      cfg.sigmas = parse_double_list(sigmas_str, "--sigmas");
    }
    if (moments->parsed()) {
      cfg.p_list = parse_double_list(p_str, "--p");
    }
    const bool sigmas_required = needs_sigmas(cfg);
    if (sigmas_required && cfg.sigmas.empty()) {
      throw std::invalid_argument("--sigmas is required for this command");
    }
    if (cfg.command != RunConfig::Command::kReport) {
      validate_simplex_params(cfg, sigmas_required);
    }
    if ((cfg.experiment == "projection" || cfg.experiment == "grassmannian") && cfg.l >= cfg.d) {
      throw std::invalid_argument("l must satisfy l < d for this experiment");
    }
  } catch (const std::exception& e) {
    result.status = ParseResult::Status::kError;
    result.message = e.what();
    return result;
  }

  result.status = ParseResult::Status::kOk;
  result.config = cfg;
  return result;
}

int run(const RunConfig& config) {
  try {
    switch (config.command) {
      case RunConfig::Command::kMoments:
        return run_moments(config);
      case RunConfig::Command::kDensity:
        return run_density(config);
      case RunConfig::Command::kSample:
        return run_sample(config);
      case RunConfig::Command::kVerify:
        return run_verify(config);
      case RunConfig::Command::kReport:
        return run_report(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const ParseResult parsed = parse_args(args);
  switch (parsed.status) {
    case ParseResult::Status::kHelp:
      std::cout << parsed.message;
      return 0;
    case ParseResult::Status::kError:
      std::cerr << "error: " << parsed.message << "\n";
      return 2;
    case ParseResult::Status::kOk:
      return run(parsed.config);
  }
  return 2;
}

}  // namespace gsimplex
