#include "hvq/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hvq/errors.hpp"

namespace hvq::config {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    return std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '.' || c == '-';
    });
}

// Full-string parse; trailing junk is an error, not silently ignored.
double parse_double(const std::string& key, const std::string& text) {
    const std::string body = trim(text);
    double out = 0.0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || body.empty()) {
        throw InvalidParameter("key '" + key + "': cannot parse '" + text + "' as a number");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    const std::string body = trim(text);
    std::uint64_t out = 0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || body.empty()) {
        throw InvalidParameter("key '" + key + "': cannot parse '" + text +
                               "' as an unsigned integer");
    }
    return out;
}

}  // namespace

bool Options::contains(const std::string& key) const { return values.count(key) != 0; }

std::string Options::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double Options::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : parse_double(key, it->second);
}

std::uint64_t Options::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : parse_u64(key, it->second);
}

std::size_t Options::get_size(const std::string& key, std::size_t fallback) const {
    return static_cast<std::size_t>(get_u64(key, fallback));
}

double Options::get_angle(const std::string& key, double fallback_rad) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback_rad;
    std::string body = trim(it->second);
    double scale = 1.0;
    if (body.size() >= 3 && body.substr(body.size() - 3) == "deg") {
        scale = std::numbers::pi / 180.0;
        body = trim(body.substr(0, body.size() - 3));
    } else if (body.size() >= 3 && body.substr(body.size() - 3) == "rad") {
        body = trim(body.substr(0, body.size() - 3));
    }
    return scale * parse_double(key, body);
}

void Options::validate_keys(const std::vector<std::string>& allowed) const {
    std::string offenders;
    for (const auto& [key, value] : values) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            if (!offenders.empty()) offenders += ", ";
            offenders += key;
        }
    }
    if (!offenders.empty()) {
        throw InvalidParameter("unknown config key(s): " + offenders);
    }
}

Options parse_string(const std::string& text) {
    Options out;
    std::istringstream stream(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw InvalidParameter("config line " + std::to_string(lineno) +
                                   ": expected key = value");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (!valid_key(key)) {
            throw InvalidParameter("config line " + std::to_string(lineno) +
                                   ": invalid key '" + key + "'");
        }
        if (out.values.count(key)) {
            throw InvalidParameter("config line " + std::to_string(lineno) +
                                   ": duplicate key '" + key + "'");
        }
        out.values.emplace(key, value);
    }
    return out;
}

Options parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

Options merge(const Options& base, const Options& overrides) {
    Options out = base;
    for (const auto& [key, value] : overrides.values) {
        out.values[key] = value;
    }
    return out;
}

RunConfig resolve(const std::string& subcommand, Options merged) {
    RunConfig run;
    run.subcommand = subcommand;
    run.seed = merged.get_u64("seed", 1);
    std::string dir = merged.get_string("output_dir", "");
    if (dir.empty()) {
        const char* env = std::getenv("HVQ_OUTPUT_DIR");
        dir = (env != nullptr && *env != '\0') ? env : "./hvq_out";
    }
    run.output_dir = dir;
    merged.values.erase("seed");
    merged.values.erase("output_dir");
    run.options = std::move(merged);
    return run;
}

std::string manifest(const RunConfig& run) {
    std::ostringstream out;
    out << "# hvq run manifest\n";
    const auto now = std::chrono::system_clock::now();
    const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm utc{};
    gmtime_r(&stamp, &utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    out << "# written: " << buffer << '\n';
    out << "subcommand = " << run.subcommand << '\n';
    out << "seed = " << run.seed << '\n';
    out << "output_dir = " << run.output_dir.string() << '\n';
    for (const auto& [key, value] : run.options.values) {
        out << key << " = " << value << '\n';
    }
    return out.str();
}

}  // namespace hvq::config
