#pragma once

// Finite origin-centered window of the integer lattice Z^d with nearest-
// neighbor edges. Vertices are addressed by a dense row-major index; the
// directed step set carries a canonical order (+e1, -e1, +e2, -e2, ...)
// used wherever ties between otherwise equivalent paths must be broken
// deterministically.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fppkit {

using Point = std::vector<int>;

inline int64_t l1_norm(const Point& p) {
    int64_t s = 0;
    for (int c : p) s += c < 0 ? -c : c;
    return s;
}

inline int64_t l1_dist(const Point& a, const Point& b) {
    int64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = (int64_t)a[i] - b[i];
        s += d < 0 ? -d : d;
    }
    return s;
}

inline std::string point_str(const Point& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i]);
    }
    return s;
}

// Directed step codes follow the canonical order: code 2*a is +e_{a+1},
// code 2*a+1 is -e_{a+1}. Smaller code = earlier in the tie-break order.
inline int step_axis(int code) { return code >> 1; }
inline int step_sign(int code) { return (code & 1) ? -1 : +1; }

// Exact hop-count reachability on Z^d: n-step walks from 0 reach x iff
// n >= |x|_1 and, when zero-steps are disallowed, n - |x|_1 is even.
inline bool reachable(const Point& x, int64_t n, bool allow_zero_steps) {
    int64_t m = l1_norm(x);
    if (n < m) return false;
    if (allow_zero_steps) return true;
    return ((n - m) & 1) == 0;
}

class Window {
public:
    Window() = default;
    explicit Window(std::vector<int> half_widths) : half_(std::move(half_widths)) {
        if (half_.size() < 2) throw std::invalid_argument("Window: need d >= 2");
        int64_t n = 1;
        strides_.assign(half_.size(), 0);
        for (int a = (int)half_.size() - 1; a >= 0; --a) {
            if (half_[a] < 1) throw std::invalid_argument("Window: half-width must be >= 1");
            strides_[a] = n;
            n *= 2 * (int64_t)half_[a] + 1;
            if (n > INT32_MAX) throw std::invalid_argument("Window: too many vertices");
        }
        nverts_ = n;
    }

    int d() const { return (int)half_.size(); }
    const std::vector<int>& half_widths() const { return half_; }
    int64_t vertex_count() const { return nverts_; }
    int64_t edge_slots() const { return nverts_ * d(); }

    bool contains(const Point& p) const {
        if ((int)p.size() != d()) return false;
        for (int a = 0; a < d(); ++a)
            if (p[a] < -half_[a] || p[a] > half_[a]) return false;
        return true;
    }

    int32_t index_of(const Point& p) const {
        int64_t idx = 0;
        for (int a = 0; a < d(); ++a) idx += (int64_t)(p[a] + half_[a]) * strides_[a];
        return (int32_t)idx;
    }

    Point point_of(int32_t idx) const {
        Point p(d());
        int64_t r = idx;
        for (int a = 0; a < d(); ++a) {
            p[a] = (int)(r / strides_[a]) - half_[a];
            r %= strides_[a];
        }
        return p;
    }

    int coord(int32_t idx, int axis) const {
        return (int)((idx / strides_[axis]) % (2 * (int64_t)half_[axis] + 1)) - half_[axis];
    }

    // Index after a directed step, or -1 when the step leaves the window.
    int32_t neighbor(int32_t idx, int step_code) const {
        int a = step_axis(step_code);
        int c = coord(idx, a);
        if (step_sign(step_code) > 0) {
            if (c >= half_[a]) return -1;
            return idx + (int32_t)strides_[a];
        }
        if (c <= -half_[a]) return -1;
        return idx - (int32_t)strides_[a];
    }

    // Per-vertex bitmask of admissible directed steps, bit k = step code k.
    std::vector<uint32_t> step_masks() const {
        std::vector<uint32_t> m(nverts_, 0);
        for (int32_t i = 0; i < nverts_; ++i) {
            uint32_t bits = 0;
            for (int a = 0; a < d(); ++a) {
                int c = coord(i, a);
                if (c < half_[a]) bits |= 1u << (2 * a);
                if (c > -half_[a]) bits |= 1u << (2 * a + 1);
            }
            m[i] = bits;
        }
        return m;
    }

    int32_t stride(int axis) const { return (int32_t)strides_[axis]; }

    // Undirected edge slot for the edge from vertex idx in +e_{axis+1}
    // direction; slots with coord(idx, axis) == half_[axis] do not name an
    // in-window edge and are never read.
    int64_t edge_slot(int32_t idx, int axis) const { return (int64_t)idx * d() + axis; }
    bool edge_slot_valid(int32_t idx, int axis) const { return coord(idx, axis) < half_[axis]; }

    std::string spec() const {
        std::string s;
        for (size_t i = 0; i < half_.size(); ++i) {
            if (i) s += 'x';
            s += std::to_string(half_[i]);
        }
        return s;
    }

    friend bool operator==(const Window& a, const Window& b) { return a.half_ == b.half_; }

private:
    std::vector<int> half_;
    std::vector<int64_t> strides_;
    int64_t nverts_ = 0;
};

// Inverse of Window::spec(): "9x9" -> half-widths {9, 9}.
inline Window window_from_spec(const std::string& spec) {
    std::vector<int> half;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument("window spec: empty component in '" + spec + "'");
        half.push_back(std::stoi(cur));
        cur.clear();
    };
    for (char c : spec) {
        if (c == 'x' || c == 'X') flush();
        else if (c >= '0' && c <= '9') cur.push_back(c);
        else throw std::invalid_argument("window spec: bad character in '" + spec + "'");
    }
    flush();
    return Window(half);
}

// Canonical undirected edge: base vertex plus positive axis direction. The
// base is the endpoint with the smaller coordinate along that axis, which
// makes the representation unique.
struct Edge {
    Point base;
    int axis = 0;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.axis == b.axis && a.base == b.base;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.axis < b.axis;
    }
};

// Canonicalize an edge given by an endpoint and a directed step code.
inline Edge make_edge(const Point& from, int step_code) {
    Edge e;
    e.axis = step_axis(step_code);
    e.base = from;
    if (step_sign(step_code) < 0) e.base[e.axis] -= 1;
    return e;
}

} // namespace fppkit
