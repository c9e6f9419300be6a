#include "fppkit/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace fppkit {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == ',' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + t + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (cfg.entries_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "' (first at line " +
                              std::to_string(cfg.entries_[key].line) + ")");
        int col = (int)line.find_first_not_of(" \t", eq + 1) + 1;
        cfg.entries_[key] = Entry{value, lineno, col};
    }
    return cfg;
}

void Config::fail(const std::string& key, const std::string& message) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(origin_ + ": key '" + key + "': " + message);
    throw ConfigError(origin_ + ":" + std::to_string(it->second.line) + ":" +
                      std::to_string(it->second.col) + ": key '" + key + "': " + message);
}

std::string Config::raw(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    it->second.used = true;
    return it->second.value;
}

std::string Config::get_str(const std::string& key) { return raw(key); }

std::string Config::get_str(const std::string& key, const std::string& def) {
    return has(key) ? raw(key) : def;
}

int64_t Config::get_int(const std::string& key) {
    std::string v = raw(key);
    int64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        fail(key, "expected an integer, got '" + v + "'");
    return out;
}

int64_t Config::get_int(const std::string& key, int64_t def) {
    return has(key) ? get_int(key) : def;
}

uint64_t Config::get_seed(const std::string& key, uint64_t def) {
    if (!has(key)) return def;
    std::string v = raw(key);
    uint64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        fail(key, "expected a nonnegative integer, got '" + v + "'");
    return out;
}

double Config::get_double(const std::string& key, double def) {
    if (!has(key)) return def;
    std::string v = raw(key);
    try {
        size_t pos = 0;
        double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        fail(key, "expected a number, got '" + v + "'");
    }
}

bool Config::get_bool(const std::string& key, bool def) {
    if (!has(key)) return def;
    std::string v = raw(key);
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    fail(key, "expected a boolean (1/0/true/false), got '" + v + "'");
}

Rat Config::get_rat(const std::string& key) {
    std::string v = raw(key);
    try {
        return Rat::parse(v);
    } catch (const std::exception& e) {
        fail(key, std::string(e.what()));
    }
}

Rat Config::get_rat(const std::string& key, const Rat& def) {
    return has(key) ? get_rat(key) : def;
}

std::vector<Rat> Config::get_rat_list(const std::string& key, const std::string& def) {
    std::string v = has(key) ? raw(key) : def;
    std::vector<Rat> out;
    for (const std::string& tok : split_list(v)) {
        try {
            out.push_back(Rat::parse(tok));
        } catch (const std::exception& e) {
            fail(key, std::string(e.what()));
        }
    }
    if (out.empty()) fail(key, "expected a nonempty list");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key, const std::string& def) {
    std::string v = has(key) ? raw(key) : def;
    std::vector<double> out;
    for (const std::string& tok : split_list(v)) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail(key, "expected numbers, got '" + tok + "'");
        }
    }
    if (out.empty()) fail(key, "expected a nonempty list");
    return out;
}

std::vector<int64_t> Config::get_int_list(const std::string& key, const std::string& def) {
    std::string v = has(key) ? raw(key) : def;
    std::vector<int64_t> out;
    for (const std::string& tok : split_list(v)) {
        int64_t x = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            fail(key, "expected integers, got '" + tok + "'");
        out.push_back(x);
    }
    if (out.empty()) fail(key, "expected a nonempty list");
    return out;
}

std::vector<Point> Config::get_points(const std::string& key) {
    std::string v = raw(key);
    std::vector<Point> out;
    size_t i = 0;
    while (i < v.size()) {
        while (i < v.size() && (v[i] == ' ' || v[i] == ',')) ++i;
        if (i >= v.size()) break;
        if (v[i] != '(') fail(key, "expected '(' in point list");
        size_t close = v.find(')', i);
        if (close == std::string::npos) fail(key, "unterminated point");
        Point p;
        for (const std::string& tok : split_list(v.substr(i + 1, close - i - 1))) {
            int x = 0;
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                fail(key, "expected integer coordinates, got '" + tok + "'");
            p.push_back(x);
        }
        if (p.empty()) fail(key, "empty point");
        if (!out.empty() && p.size() != out.front().size())
            fail(key, "points have mixed dimensions");
        out.push_back(std::move(p));
        i = close + 1;
    }
    if (out.empty()) fail(key, "expected a nonempty point list");
    return out;
}

std::vector<Point> Config::get_points(const std::string& key, const std::string& def) {
    if (has(key)) return get_points(key);
    Config tmp;
    tmp.origin_ = origin_;
    tmp.entries_[key] = Entry{def, 0, 0};
    return tmp.get_points(key);
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, e] : entries_) out.emplace_back(k, e.value);
    return out;
}

void Config::finish() const {
    std::string bad;
    for (const auto& [k, e] : entries_)
        if (!e.used) {
            if (!bad.empty()) bad += ", ";
            bad += "'" + k + "' (line " + std::to_string(e.line) + ")";
        }
    if (!bad.empty()) throw ConfigError(origin_ + ": unknown key(s): " + bad);
}

} // namespace fppkit
