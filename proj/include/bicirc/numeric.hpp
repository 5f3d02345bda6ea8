#ifndef BICIRC_NUMERIC_HPP
#define BICIRC_NUMERIC_HPP

// Exact and floating-point scalar kit.
//
//   BigInt         arbitrary-precision signed integer
//   ExactRational  arbitrary-precision rational, canonical form
//                  (gcd(num, den) = 1, den > 0)
//   GaussianRational  re + im*i with ExactRational components
//   ComplexScalar  std::complex<double>
//
// Plus the shared tolerance bundle, complex literal parsing/formatting,
// and principal roots used by the circulant eigenvalue machinery.
//
// Complex literal grammar (decimal components, optional exponent):
//   "x"      real            "2", "-0.5", "1e-3"
//   "xi"     imaginary       "2i", "-0.25i", "i", "-i"
//   "x+yi"   both            "3+4i", "0.75-0.25i", "1+i"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "bicirc/errors.hpp"

namespace bicirc {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;
using ComplexScalar = std::complex<double>;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }
inline double to_double(const ExactRational& v) { return v.convert_to<double>(); }

/// x^e for exact integers, e >= 0.
inline BigInt ipow(const BigInt& x, unsigned e) {
    return boost::multiprecision::pow(x, e);
}

// ---------------------------------------------------------------------------
// tolerances
// ---------------------------------------------------------------------------

/// Shared tolerance bundle.  Every approximate comparison takes one of these;
/// exact (rational) checks take none.
struct Tolerances {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double power_iter_tol = 1e-12;
    std::size_t power_iter_max = 10000;
    double degeneracy_eps = 1e-10;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || !(power_iter_tol > 0) ||
            !(degeneracy_eps > 0) || power_iter_max == 0) {
            throw std::invalid_argument("Tolerances: all fields must be positive");
        }
    }
};

/// |x - y| <= abs_tol + rel_tol * max(|x|, |y|).  Throws NonFinite on NaN/inf.
inline bool approx_eq(double x, double y, const Tolerances& tol) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw NonFinite("approx_eq: non-finite operand");
    }
    return std::abs(x - y) <= tol.abs_tol + tol.rel_tol * std::max(std::abs(x), std::abs(y));
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// Complex number with exact rational components.  Used wherever |r|^2 must
/// stay exact (Frobenius closed form, entrywise sums).
struct GaussianRational {
    ExactRational re = 0;
    ExactRational im = 0;

    bool is_zero() const { return re == 0 && im == 0; }

    /// |z|^2 = re^2 + im^2, exact.
    ExactRational abs_sq() const { return re * re + im * im; }

    ComplexScalar to_complex() const { return {to_double(re), to_double(im)}; }
};

// ---------------------------------------------------------------------------
// decimal / complex literal parsing
// ---------------------------------------------------------------------------

namespace detail {

// Parses "ddd[.ddd][(e|E)[+-]ddd]" with optional leading sign into an exact
// rational.  Rejects anything else.
inline ExactRational rational_from_decimal(std::string_view s) {
    const std::string_view original = s;
    auto fail = [&]() -> ExactRational {
        throw std::invalid_argument("invalid decimal literal: '" + std::string(original) + "'");
    };

    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) fail();

    std::string digits;
    std::size_t frac_len = 0;
    std::size_t i = 0;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) digits.push_back(s[i]);
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i, ++frac_len) digits.push_back(s[i]);
    }
    if (digits.empty()) fail();

    long long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_neg = s[i] == '-';
            ++i;
        }
        if (i == s.size()) fail();
        long long e = 0;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            e = e * 10 + (s[i] - '0');
            if (e > 1000000) fail();  // exponent sanity cap
        }
        exp10 = exp_neg ? -e : e;
    }
    if (i != s.size()) fail();

    // strip leading zeros: BigInt's string constructor treats "0..." as octal
    const std::size_t first = digits.find_first_not_of('0');
    BigInt num(first == std::string::npos ? "0" : digits.substr(first));
    BigInt den = ipow(BigInt(10), static_cast<unsigned>(frac_len));
    if (exp10 > 0) {
        num *= ipow(BigInt(10), static_cast<unsigned>(exp10));
    } else if (exp10 < 0) {
        den *= ipow(BigInt(10), static_cast<unsigned>(-exp10));
    }
    if (negative) num = -num;
    return ExactRational(num, den);
}

// Splits "x+yi" at the sign that separates the two components: the last
// '+' or '-' that is not at position 0 and not an exponent sign.
inline std::size_t component_split(std::string_view s) {
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            return i;
        }
    }
    return std::string_view::npos;
}

}  // namespace detail

/// Parses the complex literal grammar into exact rational components.
inline GaussianRational parse_complex_exact(std::string_view text) {
    std::string compact;
    compact.reserve(text.size());
    for (char c : text) {
        if (c != ' ' && c != '\t') compact.push_back(c);
    }
    std::string_view s = compact;
    if (s.empty()) throw std::invalid_argument("invalid complex literal: ''");

    // "y i" component, where y may be empty or a bare sign (meaning +-1)
    auto imag_part = [](std::string_view y) -> ExactRational {
        if (y.empty() || y == "+") return 1;
        if (y == "-") return -1;
        return detail::rational_from_decimal(y);
    };

    GaussianRational z;
    if (s.back() == 'i') {
        std::string_view body = s.substr(0, s.size() - 1);
        std::size_t split = detail::component_split(body);
        if (split != std::string_view::npos) {
            z.re = detail::rational_from_decimal(body.substr(0, split));
            std::string_view y = body.substr(split);
            z.im = imag_part(y);
        } else {
            z.im = imag_part(body);
        }
    } else {
        z.re = detail::rational_from_decimal(s);
    }
    return z;
}

/// Parses the complex literal grammar into a ComplexScalar.
inline ComplexScalar parse_complex(std::string_view text) {
    return parse_complex_exact(text).to_complex();
}

// ---------------------------------------------------------------------------
// formatting
// ---------------------------------------------------------------------------

/// Shortest round-trip decimal form of a finite double.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// "num/den", or just "num" when den = 1.
inline std::string format_rational(const ExactRational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) {
        out += '/';
        out += denominator(q).str();
    }
    return out;
}

/// Renders z in the same grammar parse_complex accepts (round-trips bitwise).
inline std::string format_complex(ComplexScalar z) {
    const double re = z.real();
    const double im = z.imag();
    auto imag_token = [](double v) -> std::string {
        if (v == 1.0) return "i";
        if (v == -1.0) return "-i";
        return format_double(v) + "i";
    };
    if (im == 0.0) return format_double(re);
    if (re == 0.0) return imag_token(im);
    std::string out = format_double(re);
    out += im < 0 ? "-" : "+";
    const double mag = std::abs(im);
    out += mag == 1.0 ? "i" : format_double(mag) + "i";
    return out;
}

// ---------------------------------------------------------------------------
// roots
// ---------------------------------------------------------------------------

/// Principal n-th root of r: |r|^{1/n} * exp(i * arg(r) / n), arg in (-pi, pi].
/// Throws ZeroRatio for r = 0.
inline ComplexScalar nth_root_principal(ComplexScalar r, std::size_t n) {
    if (n == 0) throw std::invalid_argument("nth_root_principal: n must be >= 1");
    if (r == ComplexScalar{0.0, 0.0}) throw ZeroRatio();
    if (n == 1) return r;
    const double mag = std::pow(std::abs(r), 1.0 / static_cast<double>(n));
    const double arg = std::arg(r) / static_cast<double>(n);
    return std::polar(mag, arg);
}

/// [1, w, w^2, ..., w^{n-1}] with w = exp(2*pi*i/n).
inline std::vector<ComplexScalar> roots_of_unity(std::size_t n) {
    if (n == 0) throw std::invalid_argument("roots_of_unity: n must be >= 1");
    std::vector<ComplexScalar> out(n);
    const double step = 2.0 * std::acos(-1.0) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = std::polar(1.0, step * static_cast<double>(j));
    }
    out[0] = {1.0, 0.0};
    return out;
}

}  // namespace bicirc

#endif  // BICIRC_NUMERIC_HPP
