#include "sigmalab/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace sigmalab {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw std::invalid_argument(std::string("missing field \"") + name + "\"");
    return *it;
}

std::vector<double> doubles(const nlohmann::json& j, const char* name) {
    const auto& arr = field(j, name);
    if (!arr.is_array())
        throw std::invalid_argument(std::string("field \"") + name + "\" must be an array");
    return arr.get<std::vector<double>>();
}

}  // namespace

nlohmann::json to_json(const FiniteProbSpace& space) {
    return {{"weights", space.weights()}};
}

nlohmann::json to_json(const Partition& p) {
    return {{"block_of", p.block_map()}};
}

nlohmann::json to_json(const RandVec& f) {
    return {{"values", f.values}};
}

nlohmann::json to_json(const PartitionSequence& seq) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Partition& p : seq.items) arr.push_back(to_json(p));
    return {{"partitions", arr}};
}

FiniteProbSpace space_from_json(const nlohmann::json& j) {
    return FiniteProbSpace(doubles(j, "weights"));
}

Partition partition_from_json(const nlohmann::json& j) {
    return Partition(field(j, "block_of").get<std::vector<int>>());
}

RandVec randvec_from_json(const nlohmann::json& j) {
    return RandVec(doubles(j, "values"));
}

PartitionSequence sequence_from_json(const nlohmann::json& j) {
    PartitionSequence seq;
    for (const auto& p : field(j, "partitions")) seq.items.push_back(partition_from_json(p));
    return seq;
}

DensityPair density_from_json(const FiniteProbSpace& space, const nlohmann::json& j) {
    return DensityPair(space, partition_from_json(field(j, "partition")), RandVec(doubles(j, "u")));
}

InfoDesignInstance instance_from_json(const nlohmann::json& j) {
    FiniteProbSpace space = space_from_json(j);
    Partition dm_info = partition_from_json(field(j, "dm_info"));
    std::vector<Partition> support;
    for (const auto& h : field(j, "support")) support.push_back(partition_from_json(h));
    int n_actions = field(j, "n_actions").get<int>();

    Utility v;
    const auto& vj = field(j, "v");
    std::string kind = field(vj, "kind").get<std::string>();
    if (kind == "power") {
        v.kind = Utility::Kind::Power;
        v.alpha = field(vj, "alpha").get<double>();
    } else if (kind == "log1p") {
        v.kind = Utility::Kind::Log1p;
    } else {
        throw std::invalid_argument("field \"v.kind\" must be \"power\" or \"log1p\"");
    }

    std::optional<std::vector<std::vector<double>>> su;
    if (j.contains("state_utility"))
        su = j["state_utility"].get<std::vector<std::vector<double>>>();
    return InfoDesignInstance(std::move(space), std::move(dm_info), std::move(support),
                              n_actions, v, std::move(su));
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace sigmalab
