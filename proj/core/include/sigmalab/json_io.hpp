#pragma once

#include <json.hpp>
#include <string>

#include "sigmalab/density.hpp"
#include "sigmalab/infodesign.hpp"
#include "sigmalab/metric.hpp"
#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

// JSON schemas:
//   space     {"weights":[...]}
//   partition {"block_of":[...]}
//   randvec   {"values":[...]}
//   sequence  {"partitions":[{"block_of":[...]},...]}
//   density   {"partition":{...},"u":[...]}

nlohmann::json to_json(const FiniteProbSpace& space);
nlohmann::json to_json(const Partition& p);
nlohmann::json to_json(const RandVec& f);
nlohmann::json to_json(const PartitionSequence& seq);

FiniteProbSpace space_from_json(const nlohmann::json& j);
Partition partition_from_json(const nlohmann::json& j);
RandVec randvec_from_json(const nlohmann::json& j);
PartitionSequence sequence_from_json(const nlohmann::json& j);
DensityPair density_from_json(const FiniteProbSpace& space, const nlohmann::json& j);
InfoDesignInstance instance_from_json(const nlohmann::json& j);

/// Floats formatted with 17 significant digits, for byte-stable reports.
std::string format_double(double x);

}  // namespace sigmalab
