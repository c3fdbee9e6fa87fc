#pragma once

#include "cosal/salience.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace cosal {

inline constexpr const char* kContextMagic = "cosal-context";
inline constexpr const char* kStatsMagic = "cosal-moments";
inline constexpr int kFormatVersion = 1;

/// Extra fields stored alongside a context model.
struct ModelProvenance {
  std::string vectors;  // table path the model was trained against
  bool normalized = true;
};

nlohmann::json to_json(const ContextModel& model, const ModelProvenance& provenance = {});
ContextModel context_from_json(const nlohmann::json& j, ModelProvenance* provenance = nullptr);

nlohmann::json to_json(const MomentStats& stats);
MomentStats stats_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const ContextModel& model,
                const ModelProvenance& provenance = {});
ContextModel load_model(const std::filesystem::path& path, ModelProvenance* provenance = nullptr);

void save_stats(const std::filesystem::path& path, const MomentStats& stats);
MomentStats load_stats(const std::filesystem::path& path);

}  // namespace cosal
