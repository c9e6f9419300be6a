#pragma once

// Edge-weight laws. Atomic laws (point mass, two-point, finite support)
// carry exact rational atom values and are the only laws admitted in exact
// mode; uniform and shifted-exponential are float-only.
//
// Spec strings:
//   det:c              point mass at c
//   bern:p:a:b         value a with probability p, b with probability 1-p
//   atoms:v1@p1,v2@p2  finite support, probabilities must sum to 1
//   unif:lo:hi         Uniform[lo, hi)
//   exp:rate+offset    offset + Exponential(rate); "+offset" optional

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace fppkit {

struct DistParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Distribution {
public:
    enum class Kind { atoms, uniform, exponential };

    static Distribution point_mass(Rat c) {
        return finite_atoms({c}, {1.0});
    }
    static Distribution two_point(double p, Rat a, Rat b) {
        if (!(p > 0.0 && p < 1.0)) throw DistParseError("bern: p must be in (0,1)");
        if (a == b) throw DistParseError("bern: atoms must differ");
        if (a < b) return finite_atoms({a, b}, {p, 1.0 - p});
        return finite_atoms({b, a}, {1.0 - p, p});
    }
    static Distribution finite_atoms(std::vector<Rat> values, std::vector<double> probs);
    static Distribution uniform(double lo, double hi);
    static Distribution exponential(double rate, double offset);

    static Distribution parse(const std::string& spec);

    Kind kind() const { return kind_; }
    bool atomic() const { return kind_ == Kind::atoms; }
    bool bounded() const { return kind_ != Kind::exponential; }

    const std::vector<Rat>& atom_values() const { return values_; }
    const std::vector<double>& atom_probs() const { return probs_; }

    // Essential infimum of the law.
    double r0() const {
        switch (kind_) {
            case Kind::atoms: return values_.front().to_double();
            case Kind::uniform: return lo_;
            case Kind::exponential: return offset_;
        }
        return 0.0;
    }
    Rat r0_exact() const {
        if (!atomic()) throw std::logic_error("r0_exact: law is not atomic");
        return values_.front();
    }
    // Essential supremum; meaningless for the exponential (bounded() is false).
    double ess_sup() const {
        switch (kind_) {
            case Kind::atoms: return values_.back().to_double();
            case Kind::uniform: return hi_;
            case Kind::exponential: return std::numeric_limits<double>::infinity();
        }
        return 0.0;
    }

    // Smallest common denominator of the atom values.
    int64_t common_denominator() const {
        if (!atomic()) throw std::logic_error("common_denominator: law is not atomic");
        int64_t den = 1;
        for (const Rat& v : values_) den = lcm64(den, v.den());
        return den;
    }

    // P{t >= u}, closed form.
    double upper_tail(double u) const {
        switch (kind_) {
            case Kind::atoms: {
                double s = 0.0;
                for (size_t i = 0; i < values_.size(); ++i)
                    if (values_[i].to_double() >= u) s += probs_[i];
                return s;
            }
            case Kind::uniform:
                if (u <= lo_) return 1.0;
                if (u >= hi_) return 0.0;
                return (hi_ - u) / (hi_ - lo_);
            case Kind::exponential:
                if (u <= offset_) return 1.0;
                return std::exp(-rate_ * (u - offset_));
        }
        return 0.0;
    }
    // Exact-threshold variant for atomic laws: P{t >= u} with u rational.
    double upper_tail_rat(const Rat& u) const {
        if (!atomic()) return upper_tail(u.to_double());
        double s = 0.0;
        for (size_t i = 0; i < values_.size(); ++i)
            if (values_[i] >= u) s += probs_[i];
        return s;
    }

    // One draw addressed by (seed, replica, counter).
    double sample_double(uint64_t seed, uint64_t replica, uint64_t counter) const;
    // Exact draw as an index into atom_values(); atomic laws only.
    size_t sample_atom(uint64_t seed, uint64_t replica, uint64_t counter) const;

    double uniform_lo() const { return lo_; }
    double uniform_hi() const { return hi_; }
    double exp_rate() const { return rate_; }
    double exp_offset() const { return offset_; }

    const std::string& spec() const { return spec_; }

private:
    Kind kind_ = Kind::atoms;
    std::vector<Rat> values_;       // sorted ascending
    std::vector<double> probs_;     // matching, sum 1
    std::vector<double> cumulative_;
    double lo_ = 0, hi_ = 1;        // uniform
    double rate_ = 1, offset_ = 0;  // exponential
    std::string spec_;
};

} // namespace fppkit
