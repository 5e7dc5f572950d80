#include "flsched/instance_io.hpp"

#include <fstream>

namespace flsched {

using nlohmann::json;

Instance instance_from_json(const json& doc) {
  try {
    const auto tasks = doc.at("tasks").get<TaskCount>();
    const auto& list = doc.at("resources");
    if (!list.is_array()) throw ScheduleError("\"resources\" must be an array");
    std::vector<Resource> resources;
    resources.reserve(list.size());
    for (const auto& entry : list) {
      resources.emplace_back(CostTable(entry.at("costs").get<std::vector<double>>()),
                             entry.value("lower", TaskCount{0}),
                             entry.value("upper", tasks));
    }
    return Instance(tasks, std::move(resources));
  } catch (const json::exception& e) {
    throw ScheduleError(std::string("malformed instance document: ") + e.what());
  }
}

json instance_to_json(const Instance& instance) {
  json resources = json::array();
  for (const auto& r : instance.resources()) {
    resources.push_back({{"costs", std::vector<double>(r.cost.values().begin(), r.cost.values().end())}, {"lower", r.lower}, {"upper", r.upper}});
  }
  return {{"tasks", instance.tasks()}, {"resources", std::move(resources)}};
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScheduleError("cannot open instance file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ScheduleError("cannot parse " + path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ScheduleError("cannot write instance file " + path.string());
  out << instance_to_json(instance).dump() << '\n';
}

json assignment_to_json(const Instance& instance, const Assignment& assignment) {
  return {{"counts", assignment.counts},
          {"makespan", makespan(instance, assignment)},
          {"pops", assignment.pops}};
}

}  // namespace flsched
