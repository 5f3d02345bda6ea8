#ifndef BICIRC_SPECTRAL_HPP
#define BICIRC_SPECTRAL_HPP

// Eigenvalues and determinants of r-circulants.
//
// Any r-circulant circ_r(c_0..c_{n-1}) is diagonalized by the scaled Fourier
// basis: with rho the principal n-th root of r and omega = exp(2*pi*i/n),
//
//   lambda_j = sum_k c_k (rho omega^{-j})^k,        j = 0..n-1,     (DFT route)
//   v_j      = ((rho omega^{-j})^k)_k               eigenvector.
//
// For W_r the geometric series collapses to a closed form.  Writing
// x_j = rho omega^{-j} and s = sqrt(a/b):
//
//   lambda_j = [ s^{zeta(n)} r w_n - w_0
//                + x_j ( s^{zeta(n+1)} r w_{n-1} + s (b w_0 - w_1) ) ]
//              / [ x_j^2 + sqrt(ab) x_j - 1 ],                       (closed route)
//
// valid for n >= 2.  The denominator vanishes when x_j hits a root of
// x^2 + sqrt(ab) x - 1; those j are reported through DegenerateFormula and
// the caller falls back to the DFT route.
//
// Determinant routes:
//   det_closed  [ (w_0 - s^{zeta(n)} r w_n)^n
//                 - r ( s^{zeta(n+1)} r w_{n-1} + s (b w_0 - w_1) )^n ]
//               / [ 1 - s^{zeta(n)} p_n r + (-1)^n r^2 ],
//               p_n the Lucas-type companion values (w0=2, w1=b)
//   det_product prod_j lambda_j  (from either eigenvalue route)
//   det_lu      LU with partial pivoting on the dense matrix
//
// Eigenvalue multisets are compared by greedy minimal-distance matching;
// sorting by (re, im) is unstable when conjugate pairs tie in the real part.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "bicirc/circulant.hpp"
#include "bicirc/errors.hpp"
#include "bicirc/norms.hpp"
#include "bicirc/numeric.hpp"
#include "bicirc/sequences.hpp"

namespace bicirc {

enum class EigenMethod { ClosedForm, DftSum };

inline const char* method_name(EigenMethod m) {
    return m == EigenMethod::ClosedForm ? "closed" : "dft";
}

/// Eigenvalues of one r-circulant, plus the root data that produced them.
struct EigenSet {
    std::size_t n = 0;
    ComplexScalar ratio{1.0, 0.0};
    ComplexScalar rho{1.0, 0.0};
    EigenMethod method = EigenMethod::DftSum;
    std::vector<ComplexScalar> values;
};

// ---------------------------------------------------------------------------
// DFT route (works for every r-circulant, any n >= 1)
// ---------------------------------------------------------------------------

/// lambda_j = sum_k c_k x_j^k evaluated by Horner at x_j = rho omega^{-j}.
inline EigenSet eigenvalues_dft(const RCirculant& c) {
    EigenSet e;
    e.n = c.n;
    e.ratio = c.ratio;
    e.rho = nth_root_principal(c.ratio, c.n);
    e.method = EigenMethod::DftSum;
    e.values.resize(c.n);
    const std::vector<ComplexScalar> omega = roots_of_unity(c.n);
    for (std::size_t j = 0; j < c.n; ++j) {
        // omega^{-j} = conj(omega^j) on the unit circle
        const ComplexScalar x = e.rho * std::conj(omega[j]);
        ComplexScalar acc = c.first_row[c.n - 1];
        for (std::size_t k = c.n - 1; k-- > 0;) {
            acc = acc * x + c.first_row[k];
        }
        e.values[j] = acc;
    }
    return e;
}

/// max_j ||A v_j - lambda_j v_j|| / (||A||_F ||v_j||), the scaled residual of
/// the claimed eigenpairs against the dense matrix.  Zero matrix gives 0.
inline double eigen_residual(const DenseMatrix& a, const EigenSet& e) {
    detail::require_square(a, "eigen_residual");
    if (a.rows() != e.n) {
        throw ShapeError("eigen_residual: matrix order " + std::to_string(a.rows()) +
                         " vs eigen set order " + std::to_string(e.n));
    }
    const double fnorm = frobenius(a);
    if (fnorm == 0.0) return 0.0;
    const std::vector<ComplexScalar> omega = roots_of_unity(e.n);
    double worst = 0.0;
    for (std::size_t j = 0; j < e.n; ++j) {
        const ComplexScalar x = e.rho * std::conj(omega[j]);
        std::vector<ComplexScalar> v(e.n);
        ComplexScalar pw{1.0, 0.0};
        for (std::size_t k = 0; k < e.n; ++k) {
            v[k] = pw;
            pw *= x;
        }
        const std::vector<ComplexScalar> av = matvec(a, v);
        double diff = 0.0, vn = 0.0;
        for (std::size_t k = 0; k < e.n; ++k) {
            diff += std::norm(av[k] - e.values[j] * v[k]);
            vn += std::norm(v[k]);
        }
        worst = std::max(worst, std::sqrt(diff) / (fnorm * std::sqrt(vn)));
    }
    if (!std::isfinite(worst)) throw NonFinite("eigen_residual: non-finite");
    return worst;
}

// ---------------------------------------------------------------------------
// closed route for W_r (n >= 2)
// ---------------------------------------------------------------------------

namespace detail {

// Numerator coefficients of the closed eigenvalue form: lambda_j =
// (n0 + x_j n1) / (x_j^2 + sqrt(ab) x_j - 1).  Shared by eig and det.
struct ClosedCoeffs {
    double n0;
    double n1;
    double sqrt_ab;
};

inline ClosedCoeffs closed_coeffs(const SeqParams& p, std::size_t n) {
    const SequenceTable t = generate(p, n);
    const double a = static_cast<double>(p.a);
    const double b = static_cast<double>(p.b);
    const double s = std::sqrt(a / b);
    ClosedCoeffs c{};
    c.sqrt_ab = std::sqrt(a * b);
    const double sz_n = zeta(static_cast<long long>(n)) ? s : 1.0;
    const double sz_n1 = zeta(static_cast<long long>(n) + 1) ? s : 1.0;
    // r is complex; call sites fold it in to keep these real
    c.n0 = sz_n * to_double(t.at(n));
    c.n1 = sz_n1 * to_double(t.at(n - 1));
    return c;
}

}  // namespace detail

/// Closed-form eigenvalues of W_r.  Requires n >= 2.  If any denominator
/// magnitude falls below tol.degeneracy_eps, throws DegenerateFormula listing
/// the affected j; callers fall back to eigenvalues_dft.
inline EigenSet eigenvalues_closed(const SeqParams& p, std::size_t n, ComplexScalar r,
                                   const Tolerances& tol) {
    p.validate();
    if (n < 2) throw std::invalid_argument("eigenvalues_closed: n must be >= 2");
    if (r == ComplexScalar{0.0, 0.0}) throw ZeroRatio();

    const detail::ClosedCoeffs cc = detail::closed_coeffs(p, n);
    const double s = std::sqrt(static_cast<double>(p.a) / static_cast<double>(p.b));
    const double w0 = static_cast<double>(p.w0);
    const double w1 = static_cast<double>(p.w1);
    const ComplexScalar num0 = r * cc.n0 - w0;
    const ComplexScalar num1 = r * cc.n1 + s * (static_cast<double>(p.b) * w0 - w1);

    EigenSet e;
    e.n = n;
    e.ratio = r;
    e.rho = nth_root_principal(r, n);
    e.method = EigenMethod::ClosedForm;
    e.values.resize(n);

    const std::vector<ComplexScalar> omega = roots_of_unity(n);
    std::vector<std::size_t> degenerate;
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexScalar x = e.rho * std::conj(omega[j]);
        const ComplexScalar den = x * x + cc.sqrt_ab * x - 1.0;
        if (std::abs(den) < tol.degeneracy_eps) {
            degenerate.push_back(j);
            continue;
        }
        e.values[j] = (num0 + x * num1) / den;
    }
    if (!degenerate.empty()) {
        std::string what = "eigenvalues_closed: denominator below degeneracy_eps at j =";
        for (std::size_t j : degenerate) what += " " + std::to_string(j);
        throw DegenerateFormula(what, std::move(degenerate));
    }
    return e;
}

// ---------------------------------------------------------------------------
// determinants
// ---------------------------------------------------------------------------

/// prod_j lambda_j.
inline ComplexScalar det_product(const EigenSet& e) {
    ComplexScalar acc{1.0, 0.0};
    for (const auto& v : e.values) acc *= v;
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
        throw NonFinite("det_product: overflow");
    }
    return acc;
}

/// Closed determinant of W_r, n >= 2.  Throws DegenerateFormula when the
/// denominator magnitude falls below tol.degeneracy_eps (fallback: take the
/// product of the DFT eigenvalues).  break_sign flips the sign of the second
/// numerator term; it exists so self-test machinery can prove the check
/// would catch a wrong formula.
inline ComplexScalar det_closed(const SeqParams& p, std::size_t n, ComplexScalar r,
                                const Tolerances& tol, bool break_sign = false) {
    p.validate();
    if (n < 2) throw std::invalid_argument("det_closed: n must be >= 2");
    if (r == ComplexScalar{0.0, 0.0}) throw ZeroRatio();

    const detail::ClosedCoeffs cc = detail::closed_coeffs(p, n);
    const double s = std::sqrt(static_cast<double>(p.a) / static_cast<double>(p.b));
    const double w0 = static_cast<double>(p.w0);
    const double w1 = static_cast<double>(p.w1);
    const SequenceTable lucas = generate(SeqParams::lucas(p.a, p.b), n);
    const double pn = to_double(lucas.at(n));
    const double sz_n = zeta(static_cast<long long>(n)) ? s : 1.0;

    const ComplexScalar base0 = w0 - r * cc.n0;
    const ComplexScalar base1 = r * cc.n1 + s * (static_cast<double>(p.b) * w0 - w1);
    const double parity = n % 2 == 0 ? 1.0 : -1.0;
    const ComplexScalar den = 1.0 - sz_n * pn * r + parity * r * r;
    if (std::abs(den) < tol.degeneracy_eps) {
        throw DegenerateFormula("det_closed: denominator below degeneracy_eps",
                                std::vector<std::size_t>{});
    }

    auto cpow = [](ComplexScalar z, std::size_t e) {
        ComplexScalar acc{1.0, 0.0};
        while (e > 0) {
            if (e & 1u) acc *= z;
            z *= z;
            e >>= 1u;
        }
        return acc;
    };
    const double sign = break_sign ? 1.0 : -1.0;
    const ComplexScalar num = cpow(base0, n) + sign * r * cpow(base1, n);
    const ComplexScalar d = num / den;
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
        throw NonFinite("det_closed: overflow");
    }
    return d;
}

/// LU determinant with partial pivoting.
inline ComplexScalar det_lu(DenseMatrix a) {
    detail::require_square(a, "det_lu");
    if (!a.is_finite()) throw NonFinite("det_lu: non-finite entry");
    const std::size_t n = a.rows();
    ComplexScalar det{1.0, 0.0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double m = std::abs(a(i, col));
            if (m > best) {
                best = m;
                pivot = i;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const ComplexScalar f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    if (!std::isfinite(det.real()) || !std::isfinite(det.imag())) {
        throw NonFinite("det_lu: overflow");
    }
    return det;
}

// ---------------------------------------------------------------------------
// multiset comparison
// ---------------------------------------------------------------------------

/// Greedy minimal-distance matching between two eigenvalue multisets.
/// Returns max matched distance normalized by max(1, largest magnitude in
/// either list); +inf when the sizes differ.
inline double multiset_max_rel_err(const std::vector<ComplexScalar>& xs,
                                   const std::vector<ComplexScalar>& ys) {
    if (xs.size() != ys.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = xs.size();
    double scale = 1.0;
    for (const auto& z : xs) scale = std::max(scale, std::abs(z));
    for (const auto& z : ys) scale = std::max(scale, std::abs(z));

    std::vector<bool> used_x(n, false), used_y(n, false);
    double worst = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_x[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_y[j]) continue;
                const double d = std::abs(xs[i] - ys[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_x[bi] = true;
        used_y[bj] = true;
        worst = std::max(worst, best);
    }
    return worst / scale;
}

// ---------------------------------------------------------------------------
// aggregate report
// ---------------------------------------------------------------------------

/// Eigenvalue + determinant cross-check for one (params, n, r) point.
/// n = 1 has no closed route at all; that is a skip, not a fallback.
struct SpectralReport {
    EigenSet eigen;                  // closed route when available, else DFT
    EigenSet eigen_dft;              // always the DFT route
    bool eig_degenerate = false;     // closed eigenvalue route fell back
    bool det_degenerate = false;     // closed determinant route fell back
    std::vector<std::size_t> degenerate_js;
    double multiset_err = 0.0;       // closed vs DFT, 0 when unavailable
    double residual = 0.0;           // eigenpair residual against the dense matrix
    ComplexScalar det_closed_value{0.0, 0.0};  // fallback: product of DFT values
    ComplexScalar det_product_value{0.0, 0.0};
    ComplexScalar det_lu_value{0.0, 0.0};
    double det_max_rel_err = 0.0;    // pairwise, floor max(1, |det|)

    bool any_fallback() const { return eig_degenerate || det_degenerate; }
};

/// Runs both eigenvalue routes (n >= 2; n = 1 uses DFT only), the residual
/// check, and all determinant routes, recording degeneracy fallbacks.
inline SpectralReport analyze_spectral(const SeqParams& p, std::size_t n, ComplexScalar r,
                                       const Tolerances& tol, bool break_sign = false) {
    p.validate();
    tol.validate();
    const RCirculant c = build_Wr(p, n, r);
    const DenseMatrix a = densify(c);

    SpectralReport rep;
    rep.eigen_dft = eigenvalues_dft(c);
    rep.eigen = rep.eigen_dft;
    if (n >= 2) {
        try {
            rep.eigen = eigenvalues_closed(p, n, r, tol);
            rep.multiset_err = multiset_max_rel_err(rep.eigen.values, rep.eigen_dft.values);
        } catch (const DegenerateFormula& d) {
            rep.eig_degenerate = true;
            rep.degenerate_js = d.indices;
        }
    }
    rep.residual = eigen_residual(a, rep.eigen);

    rep.det_product_value = det_product(rep.eigen_dft);
    rep.det_lu_value = det_lu(a);
    rep.det_closed_value = rep.det_product_value;
    if (n >= 2) {
        try {
            rep.det_closed_value = det_closed(p, n, r, tol, break_sign);
        } catch (const DegenerateFormula&) {
            rep.det_degenerate = true;
        }
    }

    auto pair_err = [](ComplexScalar x, ComplexScalar y) {
        return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
    };
    rep.det_max_rel_err = std::max({pair_err(rep.det_closed_value, rep.det_product_value),
                                    pair_err(rep.det_product_value, rep.det_lu_value),
                                    pair_err(rep.det_closed_value, rep.det_lu_value)});
    return rep;
}

}  // namespace bicirc

#endif  // BICIRC_SPECTRAL_HPP
