#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "flsched/core.hpp"

namespace flsched {

// Instance documents:
//   { "tasks": T, "resources": [ { "costs": [c0, c1, ...], "lower": L, "upper": U } ] }
// "costs" needs at least T + 1 entries.

Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// { "counts": [...], "makespan": x, "pops": p }
nlohmann::json assignment_to_json(const Instance& instance, const Assignment& assignment);

}  // namespace flsched
