#pragma once

// key=value configuration files: one pair per line, '#' starts a comment,
// blank lines ignored. Every key must be consumed by the command that
// loads the file; leftovers are reported as unknown keys with their line.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "rational.hpp"

namespace fppkit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<config>");

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_str(const std::string& key);
    std::string get_str(const std::string& key, const std::string& def);
    int64_t get_int(const std::string& key, int64_t def);
    int64_t get_int(const std::string& key);
    uint64_t get_seed(const std::string& key, uint64_t def);
    double get_double(const std::string& key, double def);
    bool get_bool(const std::string& key, bool def);
    Rat get_rat(const std::string& key);
    Rat get_rat(const std::string& key, const Rat& def);

    // list values are space- or comma-separated
    std::vector<Rat> get_rat_list(const std::string& key, const std::string& def);
    std::vector<double> get_double_list(const std::string& key, const std::string& def);
    std::vector<int64_t> get_int_list(const std::string& key, const std::string& def);
    // "(60,60) (40,-40)"
    std::vector<Point> get_points(const std::string& key);
    std::vector<Point> get_points(const std::string& key, const std::string& def);

    // echo of raw entries in key order, for manifests
    std::vector<std::pair<std::string, std::string>> entries() const;

    // throws ConfigError listing any keys never consumed
    void finish() const;

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

private:
    struct Entry {
        std::string value;
        int line = 0;
        int col = 0;  // 1-based column of the value
        mutable bool used = false;
    };
    std::string raw(const std::string& key);  // marks consumed, throws if absent
    std::map<std::string, Entry> entries_;
    std::string origin_ = "<config>";
};

} // namespace fppkit
