#include "instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "experiments.hpp"

namespace smf {

namespace {

using Lists = std::vector<std::vector<int>>;

Lists to_zero_based(const Lists& lists, int n, const char* what) {
    Lists out = lists;
    for (auto& list : out) {
        for (int& v : list) {
            if (v < 1 || v > n) fail(ErrorCode::InvalidInput, std::string(what) + " entries must lie in 1..n");
            --v;
        }
    }
    return out;
}

void append_lists(std::string& out, const Lists& lists) {
    out += "[\n";
    for (std::size_t i = 0; i < lists.size(); ++i) {
        out += "    [";
        for (std::size_t j = 0; j < lists[i].size(); ++j) {
            if (j) out += ", ";
            out += std::to_string(lists[i][j] + 1);
        }
        out += i + 1 < lists.size() ? "],\n" : "]\n";
    }
    out += "  ]";
}

std::string metadata_fields(const InstanceMetadata& m, const char* sep, const char* kv, bool quote) {
    std::vector<std::string> fields;
    auto key = [&](const char* k) { return quote ? "\"" + std::string(k) + "\"" : std::string(k); };
    if (m.phi_m) fields.push_back(key("phi_m") + kv + format_double(*m.phi_m));
    if (m.phi_w) fields.push_back(key("phi_w") + kv + format_double(*m.phi_w));
    if (m.seed) fields.push_back(key("seed") + kv + std::to_string(*m.seed));
    if (m.stream) fields.push_back(key("stream") + kv + std::to_string(*m.stream));
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += sep;
        out += fields[i];
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
    text = trim(text);
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty())
        fail(ErrorCode::Parse, "invalid " + what + " '" + std::string(text) + "'");
    return value;
}

void parse_metadata_comment(std::string_view body, InstanceMetadata& m) {
    std::istringstream in{std::string(body)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) fail(ErrorCode::Parse, "malformed metadata field '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string_view value = std::string_view(token).substr(eq + 1);
        if (key == "phi_m") {
            m.phi_m = parse_number<double>(value, "phi_m");
        } else if (key == "phi_w") {
            m.phi_w = parse_number<double>(value, "phi_w");
        } else if (key == "seed") {
            m.seed = parse_number<std::uint64_t>(value, "seed");
        } else if (key == "stream") {
            m.stream = parse_number<std::uint64_t>(value, "stream");
        } else {
            fail(ErrorCode::Parse, "unknown metadata field '" + key + "'");
        }
    }
}

}  // namespace

InstanceFormat format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".soc" ? InstanceFormat::Soc : InstanceFormat::Json;
}

std::string instance_to_json(const Instance& instance) {
    const auto& p = instance.profile;
    std::string out = "{\n  \"n\": " + std::to_string(p.size()) + ",\n  \"men_prefs\": ";
    append_lists(out, p.men_prefs());
    out += ",\n  \"women_prefs\": ";
    append_lists(out, p.women_prefs());
    if (!instance.metadata.empty()) {
        out += ",\n  \"metadata\": {" + metadata_fields(instance.metadata, ", ", ": ", true) + "}";
    }
    out += "\n}\n";
    return out;
}

Instance instance_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Parse, std::string("instance is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::Parse, "instance must be a JSON object");
    int n = 0;
    Lists men, women;
    InstanceMetadata meta;
    try {
        n = j.at("n").get<int>();
        men = j.at("men_prefs").get<Lists>();
        women = j.at("women_prefs").get<Lists>();
        if (j.contains("metadata")) {
            const auto& m = j.at("metadata");
            if (!m.is_object()) fail(ErrorCode::Parse, "metadata must be an object");
            for (const auto& [key, value] : m.items()) {
                if (key == "phi_m") {
                    meta.phi_m = value.get<double>();
                } else if (key == "phi_w") {
                    meta.phi_w = value.get<double>();
                } else if (key == "seed") {
                    meta.seed = value.get<std::uint64_t>();
                } else if (key == "stream") {
                    meta.stream = value.get<std::uint64_t>();
                } else {
                    fail(ErrorCode::Parse, "unknown metadata field '" + key + "'");
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed instance: ") + e.what());
    }
    if (n < 1) fail(ErrorCode::InvalidInput, "n must be positive");
    if (men.size() != static_cast<std::size_t>(n) || women.size() != static_cast<std::size_t>(n))
        fail(ErrorCode::InvalidInput, "men_prefs and women_prefs must each hold n lists");
    return {PreferenceProfile(to_zero_based(men, n, "men_prefs"), to_zero_based(women, n, "women_prefs")), meta};
}

std::string instance_to_soc(const Instance& instance) {
    const auto& p = instance.profile;
    std::string out = "# stable marriage instance\n";
    if (!instance.metadata.empty()) out += "# metadata " + metadata_fields(instance.metadata, " ", "=", false) + "\n";
    out += std::to_string(p.size()) + "\n";
    auto block = [&](const Lists& lists) {
        for (std::size_t i = 0; i < lists.size(); ++i) {
            out += std::to_string(i + 1) + ": ";
            for (std::size_t j = 0; j < lists[i].size(); ++j) {
                if (j) out += ',';
                out += std::to_string(lists[i][j] + 1);
            }
            out += '\n';
        }
    };
    block(p.men_prefs());
    out += "--\n";
    block(p.women_prefs());
    return out;
}

Instance instance_from_soc(std::string_view text) {
    InstanceMetadata meta;
    std::optional<int> n;
    Lists blocks[2];
    std::vector<char> seen[2];
    int block = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        const std::string where = " on line " + std::to_string(line_no);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string_view body = trim(line.substr(1));
            if (body.substr(0, 8) == "metadata") parse_metadata_comment(body.substr(8), meta);
            continue;
        }
        if (!n) {
            n = parse_number<int>(line, "agent count" + where);
            if (*n < 1) fail(ErrorCode::InvalidInput, "n must be positive");
            for (int b = 0; b < 2; ++b) {
                blocks[b].assign(static_cast<std::size_t>(*n), {});
                seen[b].assign(static_cast<std::size_t>(*n), 0);
            }
            continue;
        }
        if (line == "--") {
            if (block == 1) fail(ErrorCode::Parse, "more than one '--' separator" + where);
            block = 1;
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) fail(ErrorCode::Parse, "expected 'id: c1,...,cn'" + where);
        const int id = parse_number<int>(line.substr(0, colon), "agent id" + where);
        if (id < 1 || id > *n) fail(ErrorCode::InvalidInput, "agent id out of range" + where);
        const auto idx = static_cast<std::size_t>(id - 1);
        if (seen[block][idx]) fail(ErrorCode::InvalidInput, "duplicate agent id" + where);
        seen[block][idx] = 1;

        std::string_view rest = line.substr(colon + 1);
        auto& list = blocks[block][idx];
        while (true) {
            const auto comma = rest.find(',');
            const int v = parse_number<int>(rest.substr(0, comma), "preference entry" + where);
            if (v < 1 || v > *n) fail(ErrorCode::InvalidInput, "preference entry out of range" + where);
            list.push_back(v - 1);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    if (!n) fail(ErrorCode::Parse, "missing agent count");
    if (block != 1) fail(ErrorCode::Parse, "missing '--' separator between men and women");
    for (int b = 0; b < 2; ++b) {
        if (std::count(seen[b].begin(), seen[b].end(), 0) != 0)
            fail(ErrorCode::InvalidInput, std::string("missing lines in the ") + (b ? "women" : "men") + " block");
    }
    return {PreferenceProfile(std::move(blocks[0]), std::move(blocks[1])), meta};
}

std::string instance_to_string(const Instance& instance, InstanceFormat format) {
    return format == InstanceFormat::Soc ? instance_to_soc(instance) : instance_to_json(instance);
}

Instance instance_from_string(std::string_view text, InstanceFormat format) {
    return format == InstanceFormat::Soc ? instance_from_soc(text) : instance_from_json(text);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(ErrorCode::Io, "error reading '" + path.string() + "'");
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(ErrorCode::Io, "error writing '" + path.string() + "'");
}

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_string(read_file(path), format_for_path(path));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    write_file(path, instance_to_string(instance, format_for_path(path)));
}

}  // namespace smf
