#pragma once

// Run directories: every command writes its tables as CSV plus a
// manifest.json recording the resolved config, seed, tool version, and the
// digest of every output file. Digests and table bytes are the
// reproducibility contract; timestamps are informational only.

#include <filesystem>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace fppkit {

extern const char* kVersion;

struct RunManifest {
    std::string command;                                        // argv echo
    std::string name;                                           // report name
    std::vector<std::pair<std::string, std::string>> config;
    uint64_t seed = 0;
    int threads = 1;
    std::string mode;                                           // "exact" or "float"
    std::vector<std::pair<std::string, std::string>> aggregates;
    std::vector<std::string> notes;
    std::string started, finished;                              // ISO-8601 UTC
    double wall_seconds = 0;
    std::vector<std::pair<std::string, std::string>> outputs;   // file -> sha256
};

std::string iso8601_now();

// Creates out_dir (refusing to reuse a nonempty one without force), writes
// every table as <name>.csv, then manifest.json. Returns the manifest.
RunManifest emit_results(const ExperimentReport& report, const std::filesystem::path& out_dir,
                         bool force, const RunManifest& meta);

std::string manifest_json(const RunManifest& m);

} // namespace fppkit
