#ifndef BICIRC_NORMS_HPP
#define BICIRC_NORMS_HPP

// Norms, norm identities, and spectral-norm bounds for W_r.
//
// Exact layer (rational arithmetic):
//   frobenius_closed_sq   ||W_r||_F^2 = sum_k (n + k(|r|^2 - 1)) (a/b)^{zeta(k)} w_k^2
//   entrywise_frobenius_sq  the same quantity summed entry by entry through the
//                           two-case circulant rule; independent of the count
//                           argument behind the closed form
//   delta                 Delta = w_{n-1} w_n - w_0 w_1 + b w_0^2  (= b * sum_squares_from0)
//
// Floating layer:
//   frobenius             direct entrywise root-sum-square
//   spectral_norm         power iteration on A^H A
//   spectral_bounds       sqrt(Delta/b) sandwich,
//                           |r| >= 1:  sqrt(Delta/b) <= ||W_r||_2 <= sqrt(((n-1)|r|^2+1) Delta/b)
//                           |r| <  1:  |r| sqrt(Delta/b) <= ||W_r||_2 <= sqrt(n Delta/b)
//   check_zielke          ||A||_F / sqrt(n) <= ||A||_2 <= ||A||_F
//   check_mathias         ||A o B||_2 <= ||A||_2 ||B||_2  and  <= r1(A) c1(B)
//
// Inequality checks use an absolute slack of ineq_slack * max(1, bound) so
// they stay meaningful for both tiny and huge norms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bicirc/circulant.hpp"
#include "bicirc/errors.hpp"
#include "bicirc/numeric.hpp"
#include "bicirc/sequences.hpp"

namespace bicirc {

inline constexpr double kIneqSlack = 1e-8;
inline constexpr std::uint64_t kDefaultSeed = 0x42494349u;  // "BICI"

// ---------------------------------------------------------------------------
// Frobenius norm
// ---------------------------------------------------------------------------

/// Direct entrywise Frobenius norm.
inline double frobenius(const DenseMatrix& a) {
    double acc = 0.0;
    for (const auto& z : a.data()) acc += std::norm(z);
    const double f = std::sqrt(acc);
    if (!std::isfinite(f)) throw NonFinite("frobenius: overflow");
    return f;
}

/// ||W_r||_F^2 via the closed form, exact for Gaussian-rational r.
inline ExactRational frobenius_closed_sq(const SeqParams& p, std::size_t n,
                                         const GaussianRational& r) {
    if (n == 0) throw ShapeError("frobenius_closed_sq: n must be >= 1");
    if (r.is_zero()) throw ZeroRatio();
    const SequenceTable t = generate(p, n - 1);
    const ExactRational r_sq = r.abs_sq();
    ExactRational acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const ExactRational weight = ExactRational(n) + ExactRational(k) * (r_sq - 1);
        acc += weight * scaled_square(p, t, k);
    }
    return acc;
}

/// ||W_r||_F^2 summed entry by entry in rational arithmetic, walking the
/// dense index rule directly.  Oracle for frobenius_closed_sq.
inline ExactRational entrywise_frobenius_sq(const SeqParams& p, std::size_t n,
                                            const GaussianRational& r) {
    if (n == 0) throw ShapeError("entrywise_frobenius_sq: n must be >= 1");
    if (r.is_zero()) throw ZeroRatio();
    const SequenceTable t = generate(p, n - 1);
    const ExactRational r_sq = r.abs_sq();
    ExactRational acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = j >= i ? j - i : n + j - i;
            const ExactRational term = scaled_square(p, t, k);
            acc += j >= i ? term : r_sq * term;
        }
    }
    return acc;
}

/// Closed Frobenius form evaluated in floating point; usable for any complex
/// r (the exact route needs a Gaussian rational).
inline double frobenius_closed_sq_approx(const SeqParams& p, std::size_t n, ComplexScalar r) {
    if (n == 0) throw ShapeError("frobenius_closed_sq_approx: n must be >= 1");
    if (r == ComplexScalar{0.0, 0.0}) throw ZeroRatio();
    const SequenceTable t = generate(p, n - 1);
    const double r_sq = std::norm(r);
    const double ratio = static_cast<double>(p.a) / static_cast<double>(p.b);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double wk = to_double(t.at(k));
        const double scaled = (zeta(static_cast<long long>(k)) ? ratio : 1.0) * wk * wk;
        acc += (static_cast<double>(n) + static_cast<double>(k) * (r_sq - 1.0)) * scaled;
    }
    if (!std::isfinite(acc)) throw NonFinite("frobenius_closed_sq_approx: overflow");
    return acc;
}

// ---------------------------------------------------------------------------
// spectral norm via power iteration
// ---------------------------------------------------------------------------

/// Largest singular value of a, computed by power iteration on a^H a with a
/// seeded random start vector.  Converges when the Rayleigh quotient's
/// relative change drops below tol.power_iter_tol; throws NoConvergence past
/// tol.power_iter_max iterations.
inline double spectral_norm(const DenseMatrix& a, const Tolerances& tol,
                            std::uint64_t seed = kDefaultSeed) {
    detail::require_square(a, "spectral_norm");
    if (!a.is_finite()) throw NonFinite("spectral_norm: non-finite entry");
    const std::size_t n = a.rows();

    double max_abs = 0.0;
    for (const auto& z : a.data()) max_abs = std::max(max_abs, std::abs(z));
    if (max_abs == 0.0) return 0.0;

    const DenseMatrix ah = conj_transpose(a);

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<ComplexScalar> v(n);
    for (auto& z : v) z = {unit(gen), unit(gen)};

    auto norm2 = [](const std::vector<ComplexScalar>& x) {
        double acc = 0.0;
        for (const auto& z : x) acc += std::norm(z);
        return std::sqrt(acc);
    };

    double nv = norm2(v);
    if (nv == 0.0) {
        v[0] = {1.0, 0.0};
        nv = 1.0;
    }
    for (auto& z : v) z /= nv;

    double lambda = 0.0;
    for (std::size_t it = 1; it <= tol.power_iter_max; ++it) {
        std::vector<ComplexScalar> w = matvec(ah, matvec(a, v));
        // Rayleigh quotient of a^H a at unit v; real by Hermitian symmetry
        double next = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next += (std::conj(v[i]) * w[i]).real();
        }
        if (!std::isfinite(next)) throw NonFinite("spectral_norm: iteration diverged");
        const double nw = norm2(w);
        if (nw == 0.0) return 0.0;  // v landed in the kernel of a
        for (auto& z : w) z /= nw;
        v = std::move(w);
        const double delta = std::abs(next - lambda) / std::max(next, 1e-300);
        lambda = next;
        if (it > 1 && delta <= tol.power_iter_tol) {
            return std::sqrt(std::max(lambda, 0.0));
        }
    }
    throw NoConvergence(tol.power_iter_max, std::sqrt(std::max(lambda, 0.0)), tol.power_iter_tol);
}

/// Largest Euclidean row norm.
inline double r1_max_row(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += std::norm(a(i, j));
        best = std::max(best, acc);
    }
    return std::sqrt(best);
}

/// Largest Euclidean column norm.
inline double c1_max_col(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) acc += std::norm(a(i, j));
        best = std::max(best, acc);
    }
    return std::sqrt(best);
}

// ---------------------------------------------------------------------------
// inequality checks
// ---------------------------------------------------------------------------

/// Named check outcome; slack is how far inside the inequality the value sits
/// (negative means violated by |slack|).
struct CheckResult {
    std::string name;
    bool pass = false;
    double slack = 0.0;
};

namespace detail {

inline CheckResult ineq_check(std::string name, double lhs, double rhs) {
    // lhs <= rhs up to kIneqSlack * max(1, rhs)
    CheckResult c;
    c.name = std::move(name);
    c.slack = rhs - lhs;
    c.pass = lhs <= rhs + kIneqSlack * std::max(1.0, std::abs(rhs));
    return c;
}

}  // namespace detail

/// Zielke: ||A||_F / sqrt(n) <= ||A||_2 <= ||A||_F.
/// Returns the two checks; throws InequalityViolated if either fails.
inline std::vector<CheckResult> check_zielke(const DenseMatrix& a, const Tolerances& tol,
                                             std::uint64_t seed = kDefaultSeed) {
    detail::require_square(a, "check_zielke");
    const double f = frobenius(a);
    const double s = spectral_norm(a, tol, seed);
    const double root_n = std::sqrt(static_cast<double>(a.rows()));
    std::vector<CheckResult> out{
        detail::ineq_check("zielke_lower", f / root_n, s),
        detail::ineq_check("zielke_upper", s, f),
    };
    for (const auto& c : out) {
        if (!c.pass) {
            throw InequalityViolated(c.name + " violated by " + format_double(-c.slack));
        }
    }
    return out;
}

/// Mathias: ||A o B||_2 <= ||A||_2 ||B||_2 and ||A o B||_2 <= r1(A) c1(B).
inline std::vector<CheckResult> check_mathias(const DenseMatrix& a, const DenseMatrix& b,
                                              const Tolerances& tol,
                                              std::uint64_t seed = kDefaultSeed) {
    detail::require_same_shape(a, b, "check_mathias");
    detail::require_square(a, "check_mathias");
    const double had = spectral_norm(hadamard(a, b), tol, seed);
    const double prod = spectral_norm(a, tol, seed) * spectral_norm(b, tol, seed);
    const double rc = r1_max_row(a) * c1_max_col(b);
    std::vector<CheckResult> out{
        detail::ineq_check("mathias_norm_product", had, prod),
        detail::ineq_check("mathias_r1c1", had, rc),
    };
    for (const auto& c : out) {
        if (!c.pass) {
            throw InequalityViolated(c.name + " violated by " + format_double(-c.slack));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// spectral-norm sandwich for W_r
// ---------------------------------------------------------------------------

/// Delta = w_{n-1} w_n - w_0 w_1 + b w_0^2, exact.  Cross-checked against
/// b * sum_squares_from0 (throws IdentityFailed on mismatch).
inline ExactRational delta(const SeqParams& p, std::size_t n) {
    if (n < 1) throw std::invalid_argument("delta: n must be >= 1");
    const SequenceTable t = generate(p, n);
    const BigInt w0(p.w0);
    const ExactRational d(t.at(n - 1) * t.at(n) - w0 * p.w1 + p.b * w0 * w0);
    if (d != ExactRational(p.b) * sum_squares_from0(p, n)) {
        throw IdentityFailed("delta: disagrees with b * sum_squares_from0 at " +
                             detail::seq_point(p, n));
    }
    return d;
}

enum class Regime { RGe1, RLt1 };

inline const char* regime_name(Regime g) { return g == Regime::RGe1 ? "r_ge_1" : "r_lt_1"; }

struct SpectralBounds {
    double lower = 0.0;
    double upper = 0.0;
    Regime regime = Regime::RGe1;
};

namespace detail {

// Shared float pipeline: both the general and the specialized bound paths
// must funnel the ratio Delta/b through this exact function so their doubles
// agree bitwise.
inline SpectralBounds bounds_from_ratio(std::size_t n, ComplexScalar r,
                                        const ExactRational& delta_over_b) {
    if (n == 0) throw ShapeError("bounds_from_ratio: n must be >= 1");
    if (r == ComplexScalar{0.0, 0.0}) throw ZeroRatio();
    const double ratio = to_double(delta_over_b);
    if (ratio < 0.0) throw NonFinite("bounds_from_ratio: negative Delta/b");
    const double root = std::sqrt(ratio);
    const double r_abs_sq = std::norm(r);
    SpectralBounds out;
    if (r_abs_sq >= 1.0) {
        out.regime = Regime::RGe1;
        out.lower = root;
        out.upper = std::sqrt((static_cast<double>(n - 1) * r_abs_sq + 1.0) * ratio);
    } else {
        out.regime = Regime::RLt1;
        out.lower = std::sqrt(r_abs_sq) * root;
        out.upper = std::sqrt(static_cast<double>(n) * ratio);
    }
    if (!std::isfinite(out.lower) || !std::isfinite(out.upper)) {
        throw NonFinite("bounds_from_ratio: overflow");
    }
    return out;
}

}  // namespace detail

/// Two-sided bound on ||W_r||_2 from the weighted square-sum Delta/b.
inline SpectralBounds spectral_bounds(const SeqParams& p, std::size_t n, ComplexScalar r) {
    if (n == 0) throw ShapeError("spectral_bounds: n must be >= 1");
    return detail::bounds_from_ratio(n, r, delta(p, n) / p.b);
}

/// Named specializations whose Delta/b collapses to a product formula.
enum class SpecialKind { BiFibonacci, BiLucas, ClassicalGeneralized };

/// Bounds via the specialization's own ratio formula:
///   BiFibonacci           q_{n-1} q_n / b                 (w0, w1) = (0, 1)
///   BiLucas               p_{n-1} p_n / b + 2             (w0, w1) = (2, b)
///   ClassicalGeneralized  w_{n-1} w_n - w_0 w_1 + w_0^2   a = b = 1
/// The result must equal spectral_bounds at the substituted parameters
/// bitwise, since both routes reduce to the same canonical rational.
inline SpectralBounds special_case_bounds(SpecialKind kind, const SeqParams& p, std::size_t n,
                                          ComplexScalar r) {
    if (n == 0) throw ShapeError("special_case_bounds: n must be >= 1");
    p.validate();
    switch (kind) {
        case SpecialKind::BiFibonacci: {
            const SequenceTable q = generate(SeqParams::fibonacci(p.a, p.b), n);
            return detail::bounds_from_ratio(
                n, r, ExactRational(q.at(n - 1) * q.at(n), BigInt(p.b)));
        }
        case SpecialKind::BiLucas: {
            const SequenceTable pl = generate(SeqParams::lucas(p.a, p.b), n);
            return detail::bounds_from_ratio(
                n, r, ExactRational(pl.at(n - 1) * pl.at(n), BigInt(p.b)) + 2);
        }
        case SpecialKind::ClassicalGeneralized: {
            const SeqParams cp{1, 1, p.w0, p.w1};
            const SequenceTable t = generate(cp, n);
            const BigInt w0(p.w0);
            return detail::bounds_from_ratio(
                n, r, ExactRational(t.at(n - 1) * t.at(n) - w0 * p.w1 + w0 * w0));
        }
    }
    throw std::invalid_argument("special_case_bounds: unknown kind");
}

// ---------------------------------------------------------------------------
// aggregate report
// ---------------------------------------------------------------------------

/// Everything the norms/bounds commands need for one (params, n, r) point.
struct NormReport {
    std::size_t n = 0;
    ComplexScalar ratio{1.0, 0.0};
    double frobenius_direct = 0.0;
    ExactRational frobenius_closed_sq;  // exact, from the Gaussian-rational r
    double spectral = 0.0;
    SpectralBounds bounds;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

/// Builds the full norm report: direct and closed Frobenius, power-iteration
/// spectral norm, sandwich bounds, Zielke, and Mathias on the U o W split.
inline NormReport analyze_norms(const SeqParams& p, std::size_t n, const GaussianRational& r,
                                const Tolerances& tol, std::uint64_t seed = kDefaultSeed) {
    p.validate();
    tol.validate();
    const ComplexScalar rc = r.to_complex();
    const DenseMatrix a = densify(build_Wr(p, n, rc));

    NormReport rep;
    rep.n = n;
    rep.ratio = rc;
    rep.frobenius_direct = frobenius(a);
    rep.frobenius_closed_sq = frobenius_closed_sq(p, n, r);
    rep.spectral = spectral_norm(a, tol, seed);
    rep.bounds = spectral_bounds(p, n, rc);

    const double closed_f = std::sqrt(to_double(rep.frobenius_closed_sq));
    CheckResult closed_check;
    closed_check.name = "frobenius_closed_form";
    closed_check.slack = rep.frobenius_direct - closed_f;
    closed_check.pass = approx_eq(rep.frobenius_direct, closed_f, tol);
    rep.checks.push_back(closed_check);

    rep.checks.push_back(detail::ineq_check("sandwich_lower", rep.bounds.lower, rep.spectral));
    rep.checks.push_back(detail::ineq_check("sandwich_upper", rep.spectral, rep.bounds.upper));

    for (auto& c : check_zielke(a, tol, seed)) rep.checks.push_back(std::move(c));
    const DenseMatrix u = factor_U(n, rc);
    const DenseMatrix w = factor_W(p, n);
    for (auto& c : check_mathias(u, w, tol, seed)) rep.checks.push_back(std::move(c));
    return rep;
}

}  // namespace bicirc

#endif  // BICIRC_NORMS_HPP
