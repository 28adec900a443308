#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "remap/automata.hpp"
#include "remap/errors.hpp"
#include "remap/harness.hpp"
#include "remap/learner.hpp"
#include "remap/lstar.hpp"
#include "remap/machine_io.hpp"
#include "remap/server.hpp"

namespace fs = std::filesystem;
using namespace remap;

namespace {

void configure_logging() {
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("REMAP_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::optional<Rational> parse_halt(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw BadConfig("bad --halt-output: " + std::string(e.what()));
  }
}

TeacherConfig teacher_config(const std::string& mode, const std::optional<std::uint64_t>& samples,
                             std::uint64_t seed, double stop_prob) {
  TeacherConfig cfg;
  cfg.mode = parse_teacher_mode(mode);
  if (cfg.mode == TeacherMode::interactive) throw BadConfig("use `serve` for interactive sessions");
  cfg.pac_samples = samples;
  cfg.seed = seed;
  cfg.length_stop_prob = stop_prob;
  cfg.validate();
  return cfg;
}

std::vector<std::optional<std::uint64_t>> parse_grid(const std::vector<std::string>& items) {
  std::vector<std::optional<std::uint64_t>> grid;
  for (const auto& item : items) {
    if (item == "exact" || item == "inf") {
      grid.emplace_back(std::nullopt);
      continue;
    }
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      grid.emplace_back(v);
    } catch (const std::exception&) {
      throw BadConfig("bad --samples entry '" + item + "'");
    }
  }
  if (grid.empty()) throw BadConfig("--samples needs at least one entry");
  return grid;
}

Propositions parse_props(const std::string& text) {
  Propositions props;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');)
    if (!p.empty()) props.push_back(p);
  return props;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Learn reward machines from preference and equivalence queries"};
  app.require_subcommand(1);

  std::string target, teacher_mode = "exact", out = "out", halt_text;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  double stop_prob = 0.2;

  auto* learn = app.add_subcommand("learn", "run one learning session and write machine.json + trace.jsonl");
  learn->add_option("--target", target, "ground-truth machine file")->required()->check(CLI::ExistingFile);
  learn->add_option("--teacher", teacher_mode, "exact or pac")->check(CLI::IsMember({"exact", "pac"}));
  learn->add_option("--samples", samples, "samples per equivalence query (pac)");
  learn->add_option("--seed", seed, "random seed");
  learn->add_option("--stop-prob", stop_prob, "geometric length stop probability");
  learn->add_option("--halt-output", halt_text, "HALT output for reward-machine targets (default: least output)");
  learn->add_option("--out", out, "output directory");

  auto* baseline = app.add_subcommand("baseline", "run the L* baseline against an exact teacher");
  baseline->add_option("--target", target, "ground-truth machine file")->required()->check(CLI::ExistingFile);
  baseline->add_option("--halt-output", halt_text, "HALT output for reward-machine targets");
  baseline->add_option("--out", out, "output directory");

  std::vector<std::string> grid_items;
  std::size_t trials = 100, jobs = 1, eval_random = 1000;
  auto* experiment = app.add_subcommand("experiment", "isomorphism probability over a samples-per-query grid");
  experiment->add_option("--target", target, "ground-truth machine file")->required()->check(CLI::ExistingFile);
  experiment->add_option("--samples", grid_items, "comma-separated samples per query; 'exact' for the exact teacher")
      ->required()
      ->delimiter(',');
  experiment->add_option("--trials", trials, "trials per grid point");
  experiment->add_option("--seed", seed, "base seed");
  experiment->add_option("--jobs", jobs, "worker threads");
  experiment->add_option("--eval-random", eval_random, "random words per evaluation set");
  experiment->add_option("--halt-output", halt_text, "HALT output for reward-machine targets");
  experiment->add_option("--out", out, "output directory");

  std::string op, in_path, out_path, props_text;
  auto* conv = app.add_subcommand("convert", "convert a machine file");
  conv->add_option("--op", op, "complete_halt|remove_halt|repair|expand|moore2mealy|mealy2moore|summarize|rm2moore|moore2rm")
      ->required();
  conv->add_option("--in", in_path, "input machine file")->required()->check(CLI::ExistingFile);
  conv->add_option("--out", out_path, "output machine file")->required();
  conv->add_option("--halt-output", halt_text, "HALT output value");
  conv->add_option("--props", props_text, "comma-separated propositions (summarize)");

  ServeOptions serve_opts;
  bool lan = false;
  std::string static_dir;
  auto* srv = app.add_subcommand("serve", "serve interactive sessions over HTTP");
  srv->add_option("--port", serve_opts.port, "port");
  srv->add_option("--host", serve_opts.host, "bind address (default loopback)");
  srv->add_flag("--lan", lan, "bind all interfaces");
  srv->add_option("--static", static_dir, "directory with teaching UI assets")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto halt = parse_halt(halt_text);
    if (*learn) {
      const auto truth = ground_truth(load_machine(target), halt);
      fs::create_directories(out);
      const auto cfg = teacher_config(teacher_mode, samples, seed, stop_prob);
      spdlog::info("learning {} ({} states, {} symbols) with the {} teacher", target, truth.num_states(),
                   truth.input_alphabet().size(), to_string(cfg.mode));
      SimulatedTeacher teacher(truth, cfg);
      const auto result = run_remap(truth.input_alphabet(), truth.output_alphabet(), teacher);
      save_machine(fs::path(out) / "machine.json", result.machine);
      write_file(fs::path(out) / "trace.jsonl", trace_to_jsonl(result.trace));
      std::cout << "states " << result.machine.num_states() << "\n"
                << "eq_queries " << result.stats.eq_queries << "\n"
                << "pref_queries " << result.stats.pref_queries << "\n"
                << "unique_sequences " << result.stats.unique_sequences << "\n"
                << "isomorphic " << (isomorphic(result.machine, truth) ? "true" : "false") << "\n";
    } else if (*baseline) {
      const auto truth = ground_truth(load_machine(target), halt);
      const auto result = lstar_baseline(truth);
      fs::create_directories(out);
      save_machine(fs::path(out) / "machine.json", result.machine);
      std::cout << "states " << result.machine.num_states() << "\n"
                << "eq_queries " << result.eq_queries << "\n"
                << "membership_queries " << result.membership_queries << "\n"
                << "isomorphic " << (isomorphic(result.machine, truth) ? "true" : "false") << "\n";
    } else if (*experiment) {
      const auto truth = ground_truth(load_machine(target), halt);
      const auto grid = parse_grid(grid_items);
      const std::string name = fs::path(target).stem().string();
      spdlog::info("experiment on {}: {} grid points x {} trials, {} jobs", name, grid.size(), trials, jobs);
      const auto rows = isomorphism_probability(truth, grid, trials, seed, jobs, eval_random);
      std::ostringstream csv;
      write_trials_csv(csv, name, rows);
      write_file(fs::path(out) / "trials.csv", csv.str());
      write_trial_traces(fs::path(out) / "traces", name, rows);
      for (const auto& row : rows)
        std::cout << "samples " << samples_label(row.samples_per_eq) << " isomorphic_fraction "
                  << row.fraction_isomorphic << "\n";
    } else if (*conv) {
      const auto result = convert_machine(op, load_machine(in_path), halt, parse_props(props_text));
      if (fs::path(out_path).has_parent_path()) fs::create_directories(fs::path(out_path).parent_path());
      save_machine(out_path, result);
    } else if (*srv) {
      if (lan) serve_opts.host = "0.0.0.0";
      if (!static_dir.empty()) serve_opts.static_dir = static_dir;
      SessionManager sessions;
      std::cerr << "serving on http://" << serve_opts.host << ":" << serve_opts.port << "\n";
      serve(sessions, serve_opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
