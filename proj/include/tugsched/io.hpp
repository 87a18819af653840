#pragma once

// JSON documents for instances, solutions, schedules and violation reports.
// Documents are written in canonical form: sorted keys, two-space indent,
// trailing newline. Unbounded window ends are written as null.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tugsched/evaluation.hpp"
#include "tugsched/model.hpp"
#include "tugsched/validator.hpp"

namespace tug {

using Json = nlohmann::json;

std::string canonical(const Json& doc);

Json to_json(const InstanceData& data);
/// Throws SchemaError for missing or mistyped fields.
InstanceData instance_data_from_json(const Json& doc);

Json to_json(const Solution& sol);
Json to_json(const Schedule& schedule);
Json to_json(const LossBreakdown& loss);
Json to_json(const std::vector<Violation>& violations);

/// Solution document with its derived schedule and loss sections.
Json solution_report(const Instance& inst, const Solution& sol, const Penalties& pen);

Solution solution_from_json(const Json& doc);
/// The `schedule` section of a solution document, if present.
std::optional<Schedule> schedule_from_json(const Json& doc);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

InstanceData read_instance_data(const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const InstanceData& data);

}  // namespace tug
