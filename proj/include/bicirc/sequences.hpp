#ifndef BICIRC_SEQUENCES_HPP
#define BICIRC_SEQUENCES_HPP

// Generalized bi-periodic Fibonacci sequences.
//
// Given integers a, b >= 1 and seeds w0, w1, the sequence alternates the
// multiplier by parity of the new index:
//
//   w_n = a * w_{n-1} + w_{n-2}   (n >= 2 even)
//   w_n = b * w_{n-1} + w_{n-2}   (n >= 2 odd)
//
// Compactly, with zeta(n) = n mod 2:  w_n = a^{zeta(n+1)} b^{zeta(n)} w_{n-1} + w_{n-2}.
//
// Specializations: (w0, w1) = (0, 1) is the bi-periodic Fibonacci sequence
// q_n; (w0, w1) = (2, b) is the bi-periodic Lucas sequence p_n.
//
// The characteristic roots alpha, beta solve x^2 - ab*x - ab = 0, and the
// Binet form is
//
//   w_n = a^{zeta(n+1)} / (ab)^{floor(n/2)} * (A alpha^n - B beta^n),
//   A = (w1 - (beta/a) w0) / (alpha - beta),
//   B = (w1 - (alpha/a) w0) / (alpha - beta).
//
// Everything integer-valued is computed in BigInt; the square-sum closed
// forms return ExactRational and assert themselves against a direct
// term-by-term sum (IdentityFailed on mismatch, which is always a bug).

#include <cstdint>
#include <string>
#include <vector>

#include "bicirc/errors.hpp"
#include "bicirc/numeric.hpp"

namespace bicirc {

/// zeta(n) = 1 for odd n, 0 for even n.  Safe for negative n.
constexpr int zeta(long long n) { return n % 2 != 0 ? 1 : 0; }

/// Sequence parameters.  a, b >= 1; w1 >= 1; w0 >= 0.
struct SeqParams {
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t w0 = 0;
    std::int64_t w1 = 1;

    void validate() const {
        if (a < 1) throw std::invalid_argument("SeqParams: a must be >= 1");
        if (b < 1) throw std::invalid_argument("SeqParams: b must be >= 1");
        if (w0 < 0) throw std::invalid_argument("SeqParams: w0 must be >= 0");
        if (w1 < 1) throw std::invalid_argument("SeqParams: w1 must be >= 1");
    }

    /// q_n seeds: (w0, w1) = (0, 1).
    static SeqParams fibonacci(std::int64_t a, std::int64_t b) { return {a, b, 0, 1}; }

    /// p_n seeds: (w0, w1) = (2, b).
    static SeqParams lucas(std::int64_t a, std::int64_t b) { return {a, b, 2, b}; }

    bool operator==(const SeqParams&) const = default;
};

/// Prefix w_0 .. w_N of a sequence, exact.
struct SequenceTable {
    SeqParams params;
    std::vector<BigInt> values;

    std::size_t max_index() const { return values.size() - 1; }

    const BigInt& at(std::size_t n) const {
        if (n >= values.size()) {
            throw std::out_of_range("SequenceTable: index " + std::to_string(n) +
                                    " > max " + std::to_string(max_index()));
        }
        return values[n];
    }
};

/// Computes w_0 .. w_N by the recurrence.
inline SequenceTable generate(const SeqParams& p, std::size_t N) {
    p.validate();
    SequenceTable t;
    t.params = p;
    t.values.reserve(N + 1);
    t.values.emplace_back(p.w0);
    if (N >= 1) t.values.emplace_back(p.w1);
    for (std::size_t n = 2; n <= N; ++n) {
        // even n takes multiplier a, odd n takes b
        const std::int64_t m = (n % 2 == 0) ? p.a : p.b;
        t.values.push_back(m * t.values[n - 1] + t.values[n - 2]);
    }
    return t;
}

// ---------------------------------------------------------------------------
// characteristic roots and Binet evaluation
// ---------------------------------------------------------------------------

/// Roots of x^2 - ab*x - ab = 0.  alpha > 0 > beta; alpha*beta = -ab.
struct RootPair {
    double alpha;
    double beta;
    double discriminant;  // a^2 b^2 + 4ab > 0
};

inline RootPair roots(const SeqParams& p) {
    p.validate();
    const double ab = static_cast<double>(p.a) * static_cast<double>(p.b);
    const double disc = ab * ab + 4.0 * ab;
    const double sq = std::sqrt(disc);
    return {(ab + sq) / 2.0, (ab - sq) / 2.0, disc};
}

/// Binet coefficients A, B (see header comment).
struct BinetCoeffs {
    double A;
    double B;
};

inline BinetCoeffs binet_coeffs(const SeqParams& p) {
    const RootPair rp = roots(p);
    const double w0 = static_cast<double>(p.w0);
    const double w1 = static_cast<double>(p.w1);
    const double a = static_cast<double>(p.a);
    const double span = rp.alpha - rp.beta;
    return {(w1 - rp.beta / a * w0) / span, (w1 - rp.alpha / a * w0) / span};
}

/// Evaluates w_n through the Binet form (floating point).
inline double binet_eval(const SeqParams& p, std::size_t n) {
    const RootPair rp = roots(p);
    const BinetCoeffs c = binet_coeffs(p);
    const double a = static_cast<double>(p.a);
    const double ab = a * static_cast<double>(p.b);
    const double scale =
        (zeta(static_cast<long long>(n) + 1) ? a : 1.0) /
        std::pow(ab, static_cast<double>(n / 2));
    const double v = scale * (c.A * std::pow(rp.alpha, static_cast<double>(n)) -
                              c.B * std::pow(rp.beta, static_cast<double>(n)));
    if (!std::isfinite(v)) throw NonFinite("binet_eval: overflow at n=" + std::to_string(n));
    return v;
}

// ---------------------------------------------------------------------------
// weighted square sums
// ---------------------------------------------------------------------------

/// (a/b)^{zeta(k)} * w_k^2 as an exact rational.
inline ExactRational scaled_square(const SeqParams& p, const SequenceTable& t, std::size_t k) {
    const BigInt wk2 = t.at(k) * t.at(k);
    if (zeta(static_cast<long long>(k))) {
        return ExactRational(wk2 * p.a, BigInt(p.b));
    }
    return ExactRational(wk2);
}

namespace detail {

inline std::string seq_point(const SeqParams& p, std::size_t n) {
    return "a=" + std::to_string(p.a) + " b=" + std::to_string(p.b) +
           " w0=" + std::to_string(p.w0) + " w1=" + std::to_string(p.w1) +
           " n=" + std::to_string(n);
}

}  // namespace detail

/// sum_{k=1}^{n} (a/b)^{zeta(k)} w_k^2  =  (w_n w_{n+1} - w_0 w_1) / b, exact.
/// Evaluates both sides and throws IdentityFailed if they ever differ.
inline ExactRational sum_squares_from1(const SeqParams& p, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sum_squares_from1: n must be >= 1");
    const SequenceTable t = generate(p, n + 1);
    ExactRational direct = 0;
    for (std::size_t k = 1; k <= n; ++k) direct += scaled_square(p, t, k);
    const ExactRational closed(t.at(n) * t.at(n + 1) - BigInt(p.w0) * p.w1, BigInt(p.b));
    if (direct != closed) {
        throw IdentityFailed("sum_squares_from1: closed form mismatch at " +
                             detail::seq_point(p, n));
    }
    return closed;
}

/// sum_{k=0}^{n-1} (a/b)^{zeta(k)} w_k^2  =  (w_n w_{n-1} - w_0 w_1 + b w_0^2) / b, exact.
inline ExactRational sum_squares_from0(const SeqParams& p, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sum_squares_from0: n must be >= 1");
    const SequenceTable t = generate(p, n);
    ExactRational direct = 0;
    for (std::size_t k = 0; k < n; ++k) direct += scaled_square(p, t, k);
    const BigInt w0(p.w0);
    const ExactRational closed(t.at(n) * t.at(n - 1) - w0 * p.w1 + p.b * w0 * w0, BigInt(p.b));
    if (direct != closed) {
        throw IdentityFailed("sum_squares_from0: closed form mismatch at " +
                             detail::seq_point(p, n));
    }
    return closed;
}

// ---------------------------------------------------------------------------
// generating function coefficients
// ---------------------------------------------------------------------------

/// First N+1 Taylor coefficients of the rational generating function
///
///   G(x) = (w0 + w1 x + (a w1 - (ab+1) w0) x^2 + (b w0 - w1) x^3)
///          / (1 - (ab+2) x^2 + x^4),
///
/// extracted by clearing the denominator: c_k = (ab+2) c_{k-2} - c_{k-4}
/// for k >= 4, with c_0..c_3 read off the numerator.  This route never
/// touches the two-term recurrence, so it serves as an independent check.
inline std::vector<BigInt> genfn_coeffs(const SeqParams& p, std::size_t N) {
    p.validate();
    const BigInt ab = BigInt(p.a) * p.b;
    const BigInt w0(p.w0), w1(p.w1);
    std::vector<BigInt> c;
    c.reserve(N + 1);
    c.push_back(w0);
    if (N >= 1) c.push_back(w1);
    if (N >= 2) c.push_back((ab + 2) * c[0] + (p.a * w1 - (ab + 1) * w0));
    if (N >= 3) c.push_back((ab + 2) * c[1] + (p.b * w0 - w1));
    for (std::size_t k = 4; k <= N; ++k) {
        c.push_back((ab + 2) * c[k - 2] - c[k - 4]);
    }
    return c;
}

}  // namespace bicirc

#endif  // BICIRC_SEQUENCES_HPP
