#include "bailbench/experiments/setup.hpp"

#include "bailbench/common/errors.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

std::string_view to_string(SetupId id) {
  switch (id) {
    case SetupId::S1_Vanilla: return "S1";
    case SetupId::S2_VanillaCtx: return "S2";
    case SetupId::S3_FT1: return "S3";
    case SetupId::S4_FT2: return "S4";
    case SetupId::S5_FT1Ctx: return "S5";
    case SetupId::S6_FT2Ctx: return "S6";
  }
  return "?";
}

std::string_view setup_label(SetupId id) {
  switch (id) {
    case SetupId::S1_Vanilla: return "VANILLA";
    case SetupId::S2_VanillaCtx: return "VANILLA + Context";
    case SetupId::S3_FT1: return "FT-1";
    case SetupId::S4_FT2: return "FT-2";
    case SetupId::S5_FT1Ctx: return "FT-1 + Context";
    case SetupId::S6_FT2Ctx: return "FT-2 + Context";
  }
  return "?";
}

std::optional<SetupId> parse_setup_id(std::string_view s) {
  s = text::trim(s);
  static constexpr std::string_view kLong[] = {"S1_Vanilla", "S2_VanillaCtx", "S3_FT1",
                                               "S4_FT2",     "S5_FT1Ctx",     "S6_FT2Ctx"};
  for (std::size_t i = 0; i < kAllSetups.size(); ++i) {
    if (text::iequals(s, to_string(kAllSetups[i])) || text::iequals(s, kLong[i])) return kAllSetups[i];
  }
  return std::nullopt;
}

bool uses_statute_context(SetupId id) {
  return id == SetupId::S2_VanillaCtx || id == SetupId::S5_FT1Ctx || id == SetupId::S6_FT2Ctx;
}

std::string_view endpoint_role(SetupId id) {
  switch (id) {
    case SetupId::S1_Vanilla:
    case SetupId::S2_VanillaCtx: return "vanilla";
    case SetupId::S3_FT1:
    case SetupId::S5_FT1Ctx: return "ft1";
    case SetupId::S4_FT2:
    case SetupId::S6_FT2Ctx: return "ft2";
  }
  return "?";
}

ExperimentSetup make_setup(SetupId id, const std::map<std::string, std::string, std::less<>>& role_endpoints) {
  auto it = role_endpoints.find(endpoint_role(id));
  if (it == role_endpoints.end() || it->second.empty()) {
    throw ConfigError("setup " + std::string(to_string(id)) + " needs an endpoint for role '" +
                      std::string(endpoint_role(id)) + "'");
  }
  return {id, it->second, uses_statute_context(id)};
}

int map_outcome_to_binary(Outcome outcome, BailType bail_type) {
  if (!outcome_matches(bail_type, outcome)) {
    throw PreconditionError("outcome " + std::string(to_string(outcome)) + " does not belong to bail type " +
                            std::string(to_string(bail_type)));
  }
  return (outcome == Outcome::Granted || outcome == Outcome::Cancelled) ? 1 : 0;
}

}  // namespace bailbench
