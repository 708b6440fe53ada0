#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/experiments/setup.hpp"
#include "bailbench/gateway/gateway.hpp"
#include "config.hpp"

namespace bailbench::cli {

struct Context {
  RunConfig config;
  std::string command;
  std::string run_id;
  std::filesystem::path run_dir;
  std::size_t jobs = 1;
  bool json = false;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  Diagnostics diag;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::unique_ptr<Gateway> gateway;

  std::filesystem::path stage_dir(std::string_view stage) const { return run_dir / stage; }
  Gateway& gateway_for_run();
};

struct PredictArgs {
  std::vector<SetupId> setups;
  bool dry_run = false;
};

struct EvaluateArgs {
  std::vector<SetupId> setups;  // empty: every setup with predictions
};

int cmd_extract(Context& ctx);
int cmd_clean(Context& ctx);
int cmd_stats(Context& ctx);
int cmd_index_statutes(Context& ctx);
int cmd_predict(Context& ctx, const PredictArgs& args);
int cmd_evaluate(Context& ctx, const EvaluateArgs& args);
int cmd_report(Context& ctx);

}  // namespace bailbench::cli
