#include "fppkit/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "fppkit/csv.hpp"
#include "fppkit/sha256.hpp"
#include "json.hpp"

namespace fppkit {

const char* kVersion = "fppkit 0.1.0";

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = kVersion;
    j["command"] = m.command;
    j["name"] = m.name;
    j["seed"] = m.seed;
    j["threads"] = m.threads;
    j["mode"] = m.mode;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json agg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.aggregates) agg[k] = v;
    j["aggregates"] = agg;
    j["notes"] = m.notes;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["wall_seconds"] = m.wall_seconds;
    nlohmann::ordered_json outs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.outputs) outs[k] = v;
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

RunManifest emit_results(const ExperimentReport& report, const std::filesystem::path& out_dir,
                         bool force, const RunManifest& meta) {
    namespace fs = std::filesystem;
    if (fs::exists(out_dir)) {
        bool empty = fs::is_directory(out_dir) && fs::is_empty(out_dir);
        if (!empty && !force)
            throw std::runtime_error("output directory " + out_dir.string() +
                                     " exists; pass --force to overwrite");
        if (!fs::is_directory(out_dir))
            throw std::runtime_error(out_dir.string() + " exists and is not a directory");
    } else {
        fs::create_directories(out_dir);
    }

    RunManifest m = meta;
    m.name = report.name;
    m.config = report.config;
    m.aggregates = report.aggregates;
    m.notes = report.notes;
    for (const Table& t : report.tables) {
        fs::path file = out_dir / (t.name + ".csv");
        std::string bytes = csv_render(t.columns, t.rows);
        write_file_atomic(file, bytes);
        m.outputs.emplace_back(t.name + ".csv", sha256_hex(bytes));
    }
    m.finished = iso8601_now();
    write_file_atomic(out_dir / "manifest.json", manifest_json(m));
    return m;
}

} // namespace fppkit
