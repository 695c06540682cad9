// Signed decimal fixed-point with 18 fractional digits (wad scaling).
//
// This is the numeric base of every kernel computation. All arithmetic is
// integer-only and platform-independent: identical raw inputs give identical
// raw outputs everywhere. Products and quotients are formed in 256-bit
// intermediates and rounded to the nearest representable value, ties away
// from zero. Results that leave the 128-bit signed range throw
// std::overflow_error; nothing wraps.
#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratesim {

class Fixed {
public:
    using raw_type = __int128;

    static constexpr int kFracDigits = 18;
    static constexpr raw_type kScale = static_cast<raw_type>(1000000000000000000LL);

    // Magnitudes are capped at 2^127 - 1 so every value has a negation.
    static constexpr unsigned __int128 kMaxMagnitude =
        ~static_cast<unsigned __int128>(0) >> 1;

    constexpr Fixed() = default;

    static constexpr Fixed from_raw(raw_type raw) { return Fixed(raw); }

    static Fixed from_int(std::int64_t units) {
        return Fixed(static_cast<raw_type>(units) * kScale);
    }

    static Fixed zero() { return Fixed(); }
    static Fixed one() { return Fixed(kScale); }

    // Parses "[-]digits[.digits]" with at most 18 fraction digits and no
    // exponent. The representation is exact.
    static Fixed from_decimal_string(std::string_view text);

    // Inverse of from_decimal_string for canonical input (no trailing
    // fraction zeros are emitted, "0" for zero).
    std::string to_decimal_string() const;

    constexpr raw_type raw() const { return raw_; }
    constexpr bool is_zero() const { return raw_ == 0; }
    constexpr bool is_negative() const { return raw_ < 0; }

    double to_double() const { return static_cast<double>(raw_) / 1e18; }
    long double to_long_double() const {
        return static_cast<long double>(raw_) / 1e18L;
    }

    friend Fixed operator+(Fixed a, Fixed b) {
        raw_type out;
        if (__builtin_add_overflow(a.raw_, b.raw_, &out)) overflow("add");
        return Fixed(checked(out, "add"));
    }

    friend Fixed operator-(Fixed a, Fixed b) {
        raw_type out;
        if (__builtin_sub_overflow(a.raw_, b.raw_, &out)) overflow("sub");
        return Fixed(checked(out, "sub"));
    }

    friend Fixed operator-(Fixed a) { return Fixed(checked(-a.raw_, "neg")); }

    // Nearest representable value of a*b, ties away from zero.
    friend Fixed operator*(Fixed a, Fixed b) {
        using boost::multiprecision::uint256_t;
        uint256_t prod = uint256_t(magnitude(a.raw_)) * magnitude(b.raw_);
        uint256_t q = prod / kScaleU();
        if ((prod % kScaleU()) * 2 >= kScaleU()) ++q;
        return from_magnitude(q, (a.raw_ < 0) != (b.raw_ < 0), "mul");
    }

    // Nearest representable value of a/b, ties away from zero.
    friend Fixed operator/(Fixed a, Fixed b) {
        using boost::multiprecision::uint256_t;
        if (b.raw_ == 0) throw std::domain_error("fixed: division by zero");
        uint256_t bm = uint256_t(magnitude(b.raw_));
        uint256_t num = uint256_t(magnitude(a.raw_)) * kScaleU();
        uint256_t q = num / bm;
        if ((num % bm) * 2 >= bm) ++q;
        return from_magnitude(q, (a.raw_ < 0) != (b.raw_ < 0), "div");
    }

    // Exact scaling by a step count; used for timestamps t = k*dt.
    friend Fixed operator*(Fixed a, std::int64_t k) {
        using boost::multiprecision::int256_t;
        int256_t prod = int256_t(a.raw_) * k;
        if (prod > int256_t(max_raw()) || prod < -int256_t(max_raw())) overflow("mul_int");
        return Fixed(prod.convert_to<raw_type>());
    }

    Fixed& operator+=(Fixed b) { return *this = *this + b; }
    Fixed& operator-=(Fixed b) { return *this = *this - b; }

    friend constexpr bool operator==(Fixed a, Fixed b) { return a.raw_ == b.raw_; }
    friend constexpr std::strong_ordering operator<=>(Fixed a, Fixed b) {
        if (a.raw_ < b.raw_) return std::strong_ordering::less;
        if (a.raw_ > b.raw_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Fixed abs(Fixed a) { return a.raw_ < 0 ? -a : a; }
    friend Fixed min(Fixed a, Fixed b) { return a < b ? a : b; }
    friend Fixed max(Fixed a, Fixed b) { return a < b ? b : a; }

    friend std::ostream& operator<<(std::ostream& os, Fixed v) {
        return os << v.to_decimal_string();
    }

private:
    constexpr explicit Fixed(raw_type raw) : raw_(raw) {}

    static constexpr raw_type max_raw() {
        return static_cast<raw_type>(kMaxMagnitude);
    }

    static const boost::multiprecision::uint256_t& kScaleU() {
        static const boost::multiprecision::uint256_t s(kScale);
        return s;
    }

    static constexpr unsigned __int128 magnitude(raw_type v) {
        return v < 0 ? ~static_cast<unsigned __int128>(v) + 1
                     : static_cast<unsigned __int128>(v);
    }

    [[noreturn]] static void overflow(const char* op) {
        throw std::overflow_error(std::string("fixed: overflow in ") + op);
    }

    static constexpr raw_type checked(raw_type v, const char* op) {
        if (magnitude(v) > kMaxMagnitude) overflow(op);
        return v;
    }

    static Fixed from_magnitude(const boost::multiprecision::uint256_t& mag,
                                bool negative, const char* op) {
        if (mag > boost::multiprecision::uint256_t(kMaxMagnitude)) overflow(op);
        auto m = mag.convert_to<unsigned __int128>();
        return Fixed(negative ? -static_cast<raw_type>(m) : static_cast<raw_type>(m));
    }

    raw_type raw_ = 0;
};

inline Fixed Fixed::from_decimal_string(std::string_view text) {
    const auto bad = [&] {
        throw std::invalid_argument("fixed: malformed decimal '" + std::string(text) + "'");
    };
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    if (s.empty() || s.front() == '.') bad();

    boost::multiprecision::uint256_t mag = 0;
    const boost::multiprecision::uint256_t limit(kMaxMagnitude);
    std::size_t i = 0;
    for (; i < s.size() && s[i] != '.'; ++i) {
        if (s[i] < '0' || s[i] > '9') bad();
        mag = mag * 10 + (s[i] - '0');
        if (mag > limit) overflow("parse");
    }
    mag *= kScale;
    if (mag > limit) overflow("parse");

    if (i < s.size()) {  // fraction
        ++i;
        if (i == s.size()) bad();
        raw_type frac = 0;
        int digits = 0;
        for (; i < s.size(); ++i, ++digits) {
            if (s[i] < '0' || s[i] > '9' || digits >= kFracDigits) bad();
            frac = frac * 10 + (s[i] - '0');
        }
        for (; digits < kFracDigits; ++digits) frac *= 10;
        mag += static_cast<unsigned __int128>(frac);
        if (mag > limit) overflow("parse");
    }
    auto m = mag.convert_to<unsigned __int128>();
    return Fixed(negative ? -static_cast<raw_type>(m) : static_cast<raw_type>(m));
}

inline std::string Fixed::to_decimal_string() const {
    unsigned __int128 mag = magnitude(raw_);
    unsigned __int128 units = mag / static_cast<unsigned __int128>(kScale);
    std::uint64_t frac = static_cast<std::uint64_t>(mag % static_cast<unsigned __int128>(kScale));

    std::string integral;
    do {
        integral.insert(integral.begin(), static_cast<char>('0' + static_cast<int>(units % 10)));
        units /= 10;
    } while (units != 0);

    std::string out;
    if (raw_ < 0) out.push_back('-');
    out += integral;
    if (frac != 0) {
        char buf[kFracDigits + 1];
        for (int d = kFracDigits - 1; d >= 0; --d) {
            buf[d] = static_cast<char>('0' + frac % 10);
            frac /= 10;
        }
        buf[kFracDigits] = '\0';
        std::string_view digits(buf, kFracDigits);
        while (digits.back() == '0') digits.remove_suffix(1);
        out.push_back('.');
        out += digits;
    }
    return out;
}

}  // namespace ratesim
