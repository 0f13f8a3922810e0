#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <type_traits>

namespace daub {

// Double-word ("double-double") arithmetic: an unevaluated sum hi + lo of two
// binary64 values with |lo| <= ulp(hi)/2, giving about 106 significant bits.
// The error-free transforms require round-to-nearest and unfused
// multiply/add, so the core target is compiled with -ffp-contract=off.
class DoubleWord {
public:
    constexpr DoubleWord() = default;
    constexpr DoubleWord(double x) : hi_{x}, lo_{0.0} {}
    constexpr DoubleWord(int x) : hi_{static_cast<double>(x)}, lo_{0.0} {}
    constexpr DoubleWord(long x) : DoubleWord(split_integer(x)) {}
    constexpr DoubleWord(unsigned x) : hi_{static_cast<double>(x)}, lo_{0.0} {}
    constexpr DoubleWord(long long x) : DoubleWord(split_integer(x)) {}
    constexpr DoubleWord(unsigned long x) : DoubleWord(static_cast<long long>(x)) {}
    constexpr DoubleWord(unsigned long long x) : DoubleWord(static_cast<long long>(x)) {}

    // The pair must already satisfy |lo| <= ulp(hi)/2.
    static constexpr DoubleWord from_parts(double hi, double lo) noexcept {
        DoubleWord r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }

    constexpr double hi() const noexcept { return hi_; }
    constexpr double lo() const noexcept { return lo_; }

    explicit constexpr operator double() const noexcept { return hi_ + lo_; }
    explicit operator float() const noexcept { return to_float(); }

    DoubleWord operator-() const noexcept { return from_parts(-hi_, -lo_); }

    friend DoubleWord operator+(DoubleWord x, double y) noexcept {
        auto [sh, sl] = two_sum(x.hi_, y);
        double v = x.lo_ + sl;
        return fast_two_sum(sh, v);
    }
    friend DoubleWord operator+(double y, DoubleWord x) noexcept { return x + y; }

    friend DoubleWord operator+(DoubleWord x, DoubleWord y) noexcept {
        auto [sh, sl] = two_sum(x.hi_, y.hi_);
        auto [th, tl] = two_sum(x.lo_, y.lo_);
        double c = sl + th;
        DoubleWord v = fast_two_sum(sh, c);
        double w = tl + v.lo_;
        return fast_two_sum(v.hi_, w);
    }

    friend DoubleWord operator-(DoubleWord x, DoubleWord y) noexcept { return x + (-y); }
    friend DoubleWord operator-(DoubleWord x, double y) noexcept { return x + (-y); }
    friend DoubleWord operator-(double x, DoubleWord y) noexcept { return (-y) + x; }

    friend DoubleWord operator*(DoubleWord x, double y) noexcept {
        auto [ch, cl1] = two_prod(x.hi_, y);
        double cl3 = std::fma(x.lo_, y, cl1);
        return fast_two_sum(ch, cl3);
    }
    friend DoubleWord operator*(double y, DoubleWord x) noexcept { return x * y; }

    friend DoubleWord operator*(DoubleWord x, DoubleWord y) noexcept {
        auto [ch, cl1] = two_prod(x.hi_, y.hi_);
        double tl0 = x.lo_ * y.lo_;
        double tl1 = std::fma(x.hi_, y.lo_, tl0);
        double cl2 = std::fma(x.lo_, y.hi_, tl1);
        double cl3 = cl1 + cl2;
        return fast_two_sum(ch, cl3);
    }

    friend DoubleWord operator/(DoubleWord x, double y) noexcept {
        double th = x.hi_ / y;
        auto [ph, pl] = two_prod(th, y);
        double dh = x.hi_ - ph;
        double dt = dh - pl;
        double d = dt + x.lo_;
        double tl = d / y;
        return fast_two_sum(th, tl);
    }

    friend DoubleWord operator/(DoubleWord x, DoubleWord y) noexcept {
        double th = x.hi_ / y.hi_;
        DoubleWord r = y * th;
        double pih = x.hi_ - r.hi_;
        double dl = x.lo_ - r.lo_;
        double d = pih + dl;
        double tl = d / y.hi_;
        return fast_two_sum(th, tl);
    }
    friend DoubleWord operator/(double x, DoubleWord y) noexcept { return DoubleWord(x) / y; }

    DoubleWord& operator+=(DoubleWord y) noexcept { return *this = *this + y; }
    DoubleWord& operator-=(DoubleWord y) noexcept { return *this = *this - y; }
    DoubleWord& operator*=(DoubleWord y) noexcept { return *this = *this * y; }
    DoubleWord& operator/=(DoubleWord y) noexcept { return *this = *this / y; }

    friend constexpr bool operator==(DoubleWord x, DoubleWord y) noexcept {
        return x.hi_ == y.hi_ && x.lo_ == y.lo_;
    }
    friend constexpr std::partial_ordering operator<=>(DoubleWord x, DoubleWord y) noexcept {
        if (auto c = x.hi_ <=> y.hi_; c != 0) {
            return c;
        }
        return x.lo_ <=> y.lo_;
    }

    friend DoubleWord abs(DoubleWord x) noexcept { return x.hi_ < 0 || (x.hi_ == 0 && x.lo_ < 0) ? -x : x; }
    friend DoubleWord fabs(DoubleWord x) noexcept { return abs(x); }

    friend DoubleWord sqrt(DoubleWord x) noexcept {
        if (x.hi_ <= 0) {
            return DoubleWord(std::sqrt(x.hi_));
        }
        double s = std::sqrt(x.hi_);
        auto [ph, pl] = two_prod(s, s);
        double r = ((x.hi_ - ph) - pl) + x.lo_;
        return fast_two_sum(s, r / (2 * s));
    }

    friend DoubleWord floor(DoubleWord x) noexcept {
        double fh = std::floor(x.hi_);
        if (fh != x.hi_) {
            return DoubleWord(fh);
        }
        return fast_two_sum(fh, std::floor(x.lo_));
    }

    friend DoubleWord ldexp(DoubleWord x, int e) noexcept {
        return from_parts(std::ldexp(x.hi_, e), std::ldexp(x.lo_, e));
    }

    friend bool isfinite(DoubleWord x) noexcept { return std::isfinite(x.hi_) && std::isfinite(x.lo_); }

    // Real power through binary64 log/exp; accurate to about 1e-16 relative.
    friend DoubleWord pow(DoubleWord x, double e) noexcept { return DoubleWord(std::pow(double(x), e)); }

    friend std::ostream& operator<<(std::ostream& os, DoubleWord x) { return os << x.hi_ << " + " << x.lo_; }

private:
    struct Pair {
        double hi;
        double lo;
    };

    static constexpr DoubleWord split_integer(long long x) {
        double h = static_cast<double>(x);
        double l = static_cast<double>(x - static_cast<long long>(h));
        return from_parts(h, l);
    }

    static constexpr DoubleWord fast_two_sum(double a, double b) noexcept {
        double s = a + b;
        double z = s - a;
        return from_parts(s, b - z);
    }

    static constexpr Pair two_sum(double a, double b) noexcept {
        double s = a + b;
        double ap = s - b;
        double bp = s - ap;
        double da = a - ap;
        double db = b - bp;
        return {s, da + db};
    }

    static Pair two_prod(double a, double b) noexcept {
        double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    float to_float() const noexcept {
        float r = static_cast<float>(hi_);
        if (!std::isfinite(r) || lo_ == 0) {
            return r;
        }
        // hi - r is exact; the residual decides whether lo pushes past a
        // float rounding boundary.
        double residual = (hi_ - static_cast<double>(r)) + lo_;
        float up = std::nextafter(r, std::numeric_limits<float>::infinity());
        float down = std::nextafter(r, -std::numeric_limits<float>::infinity());
        if (residual > 0 && residual > (static_cast<double>(up) - r) / 2) {
            return up;
        }
        if (residual < 0 && -residual > (r - static_cast<double>(down)) / 2) {
            return down;
        }
        return r;
    }

    double hi_{0.0};
    double lo_{0.0};
};

// Precision metadata shared by grid construction and accuracy reports.
template <class Real>
struct precision_traits {
    static constexpr int digits = std::numeric_limits<Real>::digits;
    static constexpr const char* name = "unknown";
};
template <>
struct precision_traits<float> {
    static constexpr int digits = 24;
    static constexpr const char* name = "float";
};
template <>
struct precision_traits<double> {
    static constexpr int digits = 53;
    static constexpr const char* name = "double";
};
template <>
struct precision_traits<DoubleWord> {
    static constexpr int digits = 106;
    static constexpr const char* name = "double-word";
};

// Wide type used to build grids for a given evaluation target: at least twice
// the target's mantissa.
template <class Target>
struct wide_type;
template <>
struct wide_type<float> {
    using type = double;
};
template <>
struct wide_type<double> {
    using type = DoubleWord;
};
template <>
struct wide_type<DoubleWord> {
    using type = DoubleWord;
};
template <class Target>
using wide_type_t = typename wide_type<Target>::type;

// Narrowing conversion with a single rounding.
template <class To, class From>
constexpr To round_to(const From& x) {
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else {
        return static_cast<To>(x);
    }
}

// Exact widening conversion (float -> double -> DoubleWord are exact).
template <class To, class From>
constexpr To widen(const From& x) {
    if constexpr (std::is_same_v<To, DoubleWord> && std::is_same_v<From, float>) {
        return DoubleWord(static_cast<double>(x));
    } else {
        return To(x);
    }
}

}  // namespace daub
