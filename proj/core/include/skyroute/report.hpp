#ifndef SKYROUTE_REPORT_HPP
#define SKYROUTE_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "skyroute/composition.hpp"

namespace skyroute {

/// JSON document for a ranked list of plans answering one query.
/// Field names are part of the CLI contract (see README).
std::string plan_report_json(const DeliveryQuery& query,
                             const std::vector<CompositionPlan>& plans);

/// Writes plan_report_json to a file. Throws IoError.
void write_plan_report(const DeliveryQuery& query,
                       const std::vector<CompositionPlan>& plans,
                       const std::filesystem::path& out_file);

} // namespace skyroute

#endif
