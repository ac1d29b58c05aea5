#pragma once

#include "heatmatch/core_model.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace heatmatch {

// Malformed instance file. `field` is a JSON path such as hot_streams[2].fcp.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Exactly one of the two forms is present.
struct InstanceFile {
    std::optional<NetworkDesignInstance> network;
    std::optional<MatchesInstance> matches;

    // The matches form, derived through minimum utility cost when the file holds a network.
    MatchesInstance to_matches(PartitionOptions options = {}) const;
};

InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::filesystem::path& path);

std::string to_json(const NetworkDesignInstance& inst);
std::string to_json(const MatchesInstance& inst);

void save_instance(const NetworkDesignInstance& inst, const std::filesystem::path& path);
void save_instance(const MatchesInstance& inst, const std::filesystem::path& path);

}  // namespace heatmatch
