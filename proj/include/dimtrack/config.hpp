#pragma once

#include <string>
#include <vector>

#include "dimtrack/campaign.hpp"
#include "dimtrack/scenario.hpp"

namespace dimtrack {

/// A full reproducible campaign: scenario (preset name or inline), methods
/// with their knobs, run count, master seed, output directory. Parsing is
/// strict: unknown keys are errors.
struct CampaignConfig {
  int schema_version = 1;
  std::string scenario_preset;  // non-empty when the scenario came from a preset
  ScenarioConfig scenario;
  std::vector<MethodConfig> methods;
  int n_runs = 100;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";

  void validate() const;

  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

CampaignConfig parse_campaign_config(const std::string& json_text);

CampaignConfig load_campaign_config(const std::string& path);

std::string serialize_campaign_config(const CampaignConfig& cfg);

}  // namespace dimtrack
