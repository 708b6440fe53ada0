#include "bailbench/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "bailbench/common/date.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "commands.hpp"

namespace bailbench::cli {

namespace {

std::string default_run_id() {
  std::string id;
  for (char c : utc_timestamp_now()) {
    if (c != '-' && c != ':') id += c;
  }
  return id;  // 20240101T000000Z
}

std::vector<SetupId> parse_setups(const std::vector<std::string>& names) {
  std::vector<SetupId> out;
  for (const auto& n : names) {
    if (n == "all") return {kAllSetups.begin(), kAllSetups.end()};
    auto id = parse_setup_id(n);
    if (!id) throw ConfigError("unknown setup '" + n + "' (expected S1..S6 or all)");
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void emit(const Context& ctx, int code, const std::string& error) {
  if (ctx.json) {
    nlohmann::ordered_json j;
    j["command"] = ctx.command;
    j["run_id"] = ctx.run_id;
    j["run_dir"] = ctx.run_dir.generic_string();
    j["exit_code"] = code;
    j["error"] = error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(error);
    j["summary"] = ctx.summary;
    auto diags = nlohmann::ordered_json::array();
    for (const auto& d : ctx.diag.entries()) {
      diags.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                       {"stage", d.stage},
                       {"item", d.item},
                       {"field", d.field},
                       {"message", d.message}});
    }
    j["diagnostics"] = std::move(diags);
    *ctx.out << j.dump() << "\n";
    return;
  }
  if (!error.empty()) *ctx.err << "error: " << error << "\n";
  const auto errors = ctx.diag.count(Severity::Error);
  const auto warnings = ctx.diag.count(Severity::Warning);
  if (errors + warnings > 0) {
    *ctx.err << ctx.command << ": " << warnings << " warnings, " << errors << " errors (see logs/" << ctx.command
             << ".diagnostics.jsonl)\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bail-judgment extraction, prediction and evaluation pipeline", "bailbench"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string config_path = "bailbench.json";
  std::string run_id;
  std::string output_dir;
  std::size_t jobs = 1;
  bool json = false;
  app.add_option("--config", config_path, "Path to the JSON run configuration")->capture_default_str();
  app.add_option("--run-id", run_id, "Run directory name; defaults to a UTC timestamp");
  app.add_option("--output-dir", output_dir, "Overrides output_dir from the config");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--json", json, "Print a machine-readable result object");

  auto* extract = app.add_subcommand("extract", "Raw judgments to parsed model output");
  auto* clean = app.add_subcommand("clean", "Parsed output to a cleaned corpus plus a discard log");
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  auto* index = app.add_subcommand("index-statutes", "Build the statute index");
  auto* predict = app.add_subcommand("predict", "Outcome prediction for one or more setups");
  std::vector<std::string> predict_setups{"all"};
  bool dry_run = false;
  predict->add_option("--setup", predict_setups, "S1..S6 or all")->capture_default_str();
  predict->add_flag("--dry-run", dry_run, "Render prompts without contacting any endpoint");
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions");
  std::vector<std::string> evaluate_setups;
  evaluate->add_option("--setup", evaluate_setups, "S1..S6 or all; default: every predicted setup");
  auto* report = app.add_subcommand("report", "Assemble the evaluation table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (e.get_exit_code() != 0) err << app.help();
    return kExitConfigError;
  }

  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  ctx.json = json;
  ctx.jobs = jobs;
  ctx.command = app.get_subcommands().front()->get_name();
  int code = kExitOk;
  std::string error;
  try {
    ctx.config = load_config(config_path);
    if (!output_dir.empty()) ctx.config.output_dir = output_dir;
    ctx.run_id = run_id.empty() ? default_run_id() : run_id;
    if (ctx.run_id.find_first_of("/\\") != std::string::npos || ctx.run_id == "." || ctx.run_id == "..") {
      throw ConfigError("--run-id must be a plain directory name");
    }
    ctx.run_dir = ctx.config.output_dir / ctx.run_id;
    write_text_file(ctx.run_dir / "config.snapshot.json", dump_pretty(ctx.config.snapshot()));

    if (extract->parsed()) code = cmd_extract(ctx);
    else if (clean->parsed()) code = cmd_clean(ctx);
    else if (stats->parsed()) code = cmd_stats(ctx);
    else if (index->parsed()) code = cmd_index_statutes(ctx);
    else if (predict->parsed()) code = cmd_predict(ctx, {parse_setups(predict_setups), dry_run});
    else if (evaluate->parsed()) code = cmd_evaluate(ctx, {parse_setups(evaluate_setups)});
    else if (report->parsed()) code = cmd_report(ctx);
  } catch (const ConfigError& e) {
    code = kExitConfigError;
    error = e.what();
  } catch (const std::exception& e) {
    code = kExitRunFailure;
    error = e.what();
  }
  if (!ctx.run_dir.empty()) {
    try {
      ctx.diag.write_jsonl(ctx.run_dir / "logs" / (ctx.command + ".diagnostics.jsonl"));
    } catch (const std::exception& e) {
      err << "warning: could not write diagnostics: " << e.what() << "\n";
    }
  }
  emit(ctx, code, error);
  return code;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace bailbench::cli
