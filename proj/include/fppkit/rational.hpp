#pragma once

// Small exact rational on int64, used for edge-weight atoms, shifts and
// derived quotients in exact mode. Intermediate products go through
// __int128; anything that would not reduce back into int64 throws.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fppkit {

class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(int64_t n) : num_(n), den_(1) {}
    Rat(int64_t n, int64_t d) : num_(n), den_(d) { normalize(); }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    static Rat from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: overflow");
        Rat r;
        r.num_ = static_cast<int64_t>(n);
        r.den_ = static_cast<int64_t>(d);
        return r;
    }

    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_i128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                         (__int128)a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return from_i128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
    Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double to_double() const { return double(num_) / double(den_); }

    // "p/q", or just "p" when q == 1.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) { s += '/'; s += std::to_string(den_); }
        return s;
    }

    // Accepts "p", "p/q", and decimal literals like "-1.25".
    static Rat parse(std::string_view sv);

    // Largest integer <= value.
    int64_t floor() const {
        int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    int64_t num_, den_;
};

inline Rat Rat::parse(std::string_view sv) {
    if (sv.empty()) throw std::invalid_argument("Rat: empty literal");
    auto slash = sv.find('/');
    auto to_i64 = [](std::string_view t) -> int64_t {
        if (t.empty()) throw std::invalid_argument("Rat: bad literal");
        size_t pos = 0;
        int64_t v = std::stoll(std::string(t), &pos);
        if (pos != t.size()) throw std::invalid_argument("Rat: bad literal");
        return v;
    };
    if (slash != std::string_view::npos) {
        return Rat(to_i64(sv.substr(0, slash)), to_i64(sv.substr(slash + 1)));
    }
    auto dot = sv.find('.');
    if (dot == std::string_view::npos) return Rat(to_i64(sv));
    bool neg = sv.front() == '-';
    std::string_view ip = sv.substr(0, dot), fp = sv.substr(dot + 1);
    if (fp.empty() || fp.size() > 18) throw std::invalid_argument("Rat: bad decimal");
    int64_t den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    int64_t ipart = ip.empty() || ip == "-" ? 0 : to_i64(ip);
    int64_t frac = to_i64(fp);
    if (frac < 0) throw std::invalid_argument("Rat: bad decimal");
    __int128 n = (__int128)(ipart < 0 ? -ipart : ipart) * den + frac;
    if (neg) n = -n;
    return from_i128(n, den);
}

inline int64_t lcm64(int64_t a, int64_t b) {
    __int128 l = (__int128)(a / std::gcd(a, b)) * b;
    if (l > INT64_MAX) throw std::overflow_error("lcm64 overflow");
    return static_cast<int64_t>(l);
}

} // namespace fppkit
