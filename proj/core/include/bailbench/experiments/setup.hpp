#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

enum class SetupId { S1_Vanilla, S2_VanillaCtx, S3_FT1, S4_FT2, S5_FT1Ctx, S6_FT2Ctx };

inline constexpr std::array<SetupId, 6> kAllSetups = {SetupId::S1_Vanilla, SetupId::S2_VanillaCtx, SetupId::S3_FT1,
                                                      SetupId::S4_FT2,     SetupId::S5_FT1Ctx,    SetupId::S6_FT2Ctx};

// Row order of the evaluation table: each model followed by its context variant.
inline constexpr std::array<SetupId, 6> kTableOrder = {SetupId::S1_Vanilla, SetupId::S2_VanillaCtx,
                                                       SetupId::S3_FT1,     SetupId::S5_FT1Ctx,
                                                       SetupId::S4_FT2,     SetupId::S6_FT2Ctx};

// "S1".."S6"
std::string_view to_string(SetupId id);
// "VANILLA", "VANILLA + Context", "FT-1", "FT-1 + Context", "FT-2", "FT-2 + Context"
std::string_view setup_label(SetupId id);
// Accepts "S1", "s1" and "S1_Vanilla".
std::optional<SetupId> parse_setup_id(std::string_view s);

bool uses_statute_context(SetupId id);
// Endpoint role shared by a model and its context variant: "vanilla", "ft1" or "ft2".
std::string_view endpoint_role(SetupId id);

struct ExperimentSetup {
  SetupId id = SetupId::S1_Vanilla;
  std::string endpoint_id;
  bool with_statute_context = false;
};

// Binds a setup to the endpoint configured for its role. Throws
// ConfigError when the role has no endpoint.
ExperimentSetup make_setup(SetupId id, const std::map<std::string, std::string, std::less<>>& role_endpoints);

// 1 for "Bail granted" and "Bail cancelled", 0 for their negations. Throws
// PreconditionError when the outcome does not belong to the bail type.
int map_outcome_to_binary(Outcome outcome, BailType bail_type);

}  // namespace bailbench
