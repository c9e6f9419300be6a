#include "fppkit/distribution.hpp"

#include <cstdlib>

#include "fppkit/rng.hpp"

namespace fppkit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_prob(const std::string& s) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DistParseError("bad probability literal '" + s + "'");
    }
    if (pos != s.size()) throw DistParseError("bad probability literal '" + s + "'");
    return v;
}

Rat parse_value(const std::string& s) {
    try {
        return Rat::parse(s);
    } catch (const std::exception&) {
        throw DistParseError("bad value literal '" + s + "' (want integer, decimal or p/q)");
    }
}

} // namespace

Distribution Distribution::finite_atoms(std::vector<Rat> values, std::vector<double> probs) {
    if (values.empty() || values.size() != probs.size())
        throw DistParseError("atoms: need matching nonempty value/probability lists");
    std::vector<size_t> order(values.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return values[a] < values[b]; });
    Distribution d;
    d.kind_ = Kind::atoms;
    double total = 0.0;
    for (size_t i : order) {
        if (values[i] < Rat(0)) throw DistParseError("atoms: values must be >= 0");
        if (!(probs[i] > 0.0)) throw DistParseError("atoms: probabilities must be > 0");
        if (!d.values_.empty() && d.values_.back() == values[i])
            throw DistParseError("atoms: duplicate value " + values[i].str());
        d.values_.push_back(values[i]);
        d.probs_.push_back(probs[i]);
        total += probs[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw DistParseError("atoms: probabilities sum to " + std::to_string(total) + ", want 1");
    double c = 0.0;
    for (double p : d.probs_) d.cumulative_.push_back(c += p);
    d.cumulative_.back() = 1.0;
    if (d.values_.size() == 1) {
        d.spec_ = "det:" + d.values_[0].str();
    } else {
        d.spec_ = "atoms:";
        for (size_t i = 0; i < d.values_.size(); ++i) {
            if (i) d.spec_ += ',';
            d.spec_ += d.values_[i].str() + "@";
            char buf[32];
            snprintf(buf, sizeof buf, "%.17g", d.probs_[i]);
            d.spec_ += buf;
        }
    }
    return d;
}

Distribution Distribution::uniform(double lo, double hi) {
    if (!(lo < hi)) throw DistParseError("unif: need lo < hi");
    if (lo < 0) throw DistParseError("unif: need lo >= 0");
    Distribution d;
    d.kind_ = Kind::uniform;
    d.lo_ = lo;
    d.hi_ = hi;
    char buf[64];
    snprintf(buf, sizeof buf, "unif:%.17g:%.17g", lo, hi);
    d.spec_ = buf;
    return d;
}

Distribution Distribution::exponential(double rate, double offset) {
    if (!(rate > 0)) throw DistParseError("exp: need rate > 0");
    if (offset < 0) throw DistParseError("exp: need offset >= 0");
    Distribution d;
    d.kind_ = Kind::exponential;
    d.rate_ = rate;
    d.offset_ = offset;
    char buf[64];
    snprintf(buf, sizeof buf, "exp:%.17g+%.17g", rate, offset);
    d.spec_ = buf;
    return d;
}

Distribution Distribution::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw DistParseError("distribution '" + spec + "': missing ':'");
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (head == "det") {
        return point_mass(parse_value(rest));
    }
    if (head == "bern") {
        auto parts = split(rest, ':');
        if (parts.size() != 3) throw DistParseError("bern: want bern:p:a:b");
        return two_point(parse_prob(parts[0]), parse_value(parts[1]), parse_value(parts[2]));
    }
    if (head == "atoms") {
        std::vector<Rat> vals;
        std::vector<double> probs;
        for (const std::string& item : split(rest, ',')) {
            auto at = item.find('@');
            if (at == std::string::npos)
                throw DistParseError("atoms: item '" + item + "' missing '@'");
            vals.push_back(parse_value(item.substr(0, at)));
            probs.push_back(parse_prob(item.substr(at + 1)));
        }
        return finite_atoms(std::move(vals), std::move(probs));
    }
    if (head == "unif") {
        auto parts = split(rest, ':');
        if (parts.size() != 2) throw DistParseError("unif: want unif:lo:hi");
        return uniform(parse_prob(parts[0]), parse_prob(parts[1]));
    }
    if (head == "exp") {
        auto plus = rest.find('+');
        double rate, offset = 0.0;
        if (plus == std::string::npos) {
            rate = parse_prob(rest);
        } else {
            rate = parse_prob(rest.substr(0, plus));
            offset = parse_prob(rest.substr(plus + 1));
        }
        return exponential(rate, offset);
    }
    throw DistParseError("unknown distribution kind '" + head + "'");
}

size_t Distribution::sample_atom(uint64_t seed, uint64_t replica, uint64_t counter) const {
    if (!atomic()) throw std::logic_error("sample_atom: law is not atomic");
    double u = counter_uniform(seed, replica, counter);
    size_t i = 0;
    while (i + 1 < cumulative_.size() && u >= cumulative_[i]) ++i;
    return i;
}

double Distribution::sample_double(uint64_t seed, uint64_t replica, uint64_t counter) const {
    double u = counter_uniform(seed, replica, counter);
    switch (kind_) {
        case Kind::atoms: {
            size_t i = 0;
            while (i + 1 < cumulative_.size() && u >= cumulative_[i]) ++i;
            return values_[i].to_double();
        }
        case Kind::uniform:
            return lo_ + u * (hi_ - lo_);
        case Kind::exponential:
            // Inverse CDF on 1-u so u = 0 maps to the offset.
            return offset_ - std::log1p(-u) / rate_;
    }
    return 0.0;
}

} // namespace fppkit
