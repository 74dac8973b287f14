#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hvq::config {

// Flat key = value store parsed from config text.  Keys are unique per
// source; later sources override earlier ones only through merge(), so a
// single file assigning a key twice is rejected as an audit hazard.
struct Options {
    std::map<std::string, std::string> values;

    bool contains(const std::string& key) const;

    // Typed getters return the fallback when the key is absent and throw
    // InvalidParameter when the stored text does not parse in full.
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;

    // Angles carry an explicit unit suffix: "30 deg" or "0.5 rad"; a bare
    // number means radians.  The returned value is always radians.
    double get_angle(const std::string& key, double fallback_rad) const;

    // Throws InvalidParameter naming every key not in `allowed`.
    void validate_keys(const std::vector<std::string>& allowed) const;
};

// `# ...` is a comment to end of line; blank lines are skipped; the first
// `=` splits key from value and both sides are trimmed.
Options parse_string(const std::string& text);
Options parse_file(const std::filesystem::path& path);

// Right-hand values win on key collisions.
Options merge(const Options& base, const Options& overrides);

// A fully resolved run: reserved keys seed/output_dir are extracted here,
// everything else stays in options for the subcommand to consume.
struct RunConfig {
    std::string subcommand;
    Options options;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir;
};

// output_dir resolution order: explicit key, then $HVQ_OUTPUT_DIR, then
// ./hvq_out.  The seed key defaults to 1.
RunConfig resolve(const std::string& subcommand, Options merged);

// Echo of the resolved run for the manifest file.  The `# written:` line is
// the only part that varies between identical reruns.
std::string manifest(const RunConfig& run);

}  // namespace hvq::config
