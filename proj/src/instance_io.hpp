#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "core.hpp"

namespace smf {

struct InstanceMetadata {
    std::optional<double> phi_m;
    std::optional<double> phi_w;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> stream;

    bool empty() const { return !phi_m && !phi_w && !seed && !stream; }
    bool operator==(const InstanceMetadata&) const = default;
};

struct Instance {
    PreferenceProfile profile;
    InstanceMetadata metadata;
};

enum class InstanceFormat { Json, Soc };

/// .soc selects Soc, anything else Json.
InstanceFormat format_for_path(const std::filesystem::path& path);

/// {"n", "men_prefs", "women_prefs", "metadata"} with 1-based indices, one
/// preference list per line. Output is canonical: parse then print is the
/// identity on printed documents.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text);

/// Comment lines start with '#'. First data line is n, then n men lines
/// "id: c1,...,cn", a "--" line and n women lines. Metadata travels in a
/// "# metadata" comment so conversion to and from JSON is lossless.
std::string instance_to_soc(const Instance& instance);
Instance instance_from_soc(std::string_view text);

std::string instance_to_string(const Instance& instance, InstanceFormat format);
Instance instance_from_string(std::string_view text, InstanceFormat format);

/// Throws Io when the file cannot be read or written.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace smf
