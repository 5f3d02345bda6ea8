#ifndef BICIRC_CIRCULANT_HPP
#define BICIRC_CIRCULANT_HPP

// r-circulant matrices over complex doubles.
//
// An r-circulant C_r = circ_r(c_0, ..., c_{n-1}) has entries
//
//   C_r(i, j) = c_{j-i}          if j >= i,
//   C_r(i, j) = r * c_{n+j-i}    if j <  i,
//
// so each row is the previous one rotated right with the wrapped entry
// multiplied by r.  The matrix of interest here, W_r, uses the parity-scaled
// first row
//
//   c_k = (a/b)^{zeta(k)/2} * w_k,    k = 0 .. n-1,
//
// i.e. odd positions carry a factor sqrt(a/b).  W_r factors entrywise as
// U o W (Hadamard product), where u_ij = 1 for j >= i and r below the
// diagonal, and W is the 1-circulant with the same first row.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bicirc/errors.hpp"
#include "bicirc/numeric.hpp"
#include "bicirc/sequences.hpp"

namespace bicirc {

// ---------------------------------------------------------------------------
// dense matrices
// ---------------------------------------------------------------------------

/// Row-major dense complex matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, ComplexScalar{0.0, 0.0}) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = {1.0, 0.0};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    ComplexScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const ComplexScalar& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    const std::vector<ComplexScalar>& data() const { return data_; }

    bool is_finite() const {
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ComplexScalar> data_;
};

namespace detail {

inline void require_square(const DenseMatrix& m, const char* where) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ShapeError(std::string(where) + ": square nonempty matrix required, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(where) + ": shape mismatch " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// r-circulant structure
// ---------------------------------------------------------------------------

/// Structural form of an r-circulant: ratio and first row only.
struct RCirculant {
    std::size_t n = 0;
    ComplexScalar ratio{1.0, 0.0};
    std::vector<ComplexScalar> first_row;

    RCirculant() = default;
    RCirculant(ComplexScalar r, std::vector<ComplexScalar> row)
        : n(row.size()), ratio(r), first_row(std::move(row)) {
        if (n == 0) throw ShapeError("RCirculant: first row must be nonempty");
        if (ratio == ComplexScalar{0.0, 0.0}) throw ZeroRatio();
    }
};

/// Expands the structural form into a dense matrix by the two-case entry rule.
inline DenseMatrix densify(const RCirculant& c) {
    DenseMatrix m(c.n, c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        for (std::size_t j = 0; j < c.n; ++j) {
            m(i, j) = j >= i ? c.first_row[j - i] : c.ratio * c.first_row[c.n + j - i];
        }
    }
    return m;
}

/// Parity-scaled first row: entry k is (a/b)^{zeta(k)/2} * w_k.
inline std::vector<ComplexScalar> scaled_first_row(const SeqParams& p, std::size_t n) {
    if (n == 0) throw ShapeError("scaled_first_row: n must be >= 1");
    const SequenceTable t = generate(p, n - 1);
    const double s = std::sqrt(static_cast<double>(p.a) / static_cast<double>(p.b));
    std::vector<ComplexScalar> row(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double wk = to_double(t.at(k));
        row[k] = {zeta(static_cast<long long>(k)) ? s * wk : wk, 0.0};
    }
    return row;
}

/// W_r for the given sequence parameters.
inline RCirculant build_Wr(const SeqParams& p, std::size_t n, ComplexScalar r) {
    return RCirculant(r, scaled_first_row(p, n));
}

// ---------------------------------------------------------------------------
// Hadamard factorization W_r = U o W
// ---------------------------------------------------------------------------

/// U: ones on and above the diagonal, r below.
inline DenseMatrix factor_U(std::size_t n, ComplexScalar r) {
    if (n == 0) throw ShapeError("factor_U: n must be >= 1");
    if (r == ComplexScalar{0.0, 0.0}) throw ZeroRatio();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = j >= i ? ComplexScalar{1.0, 0.0} : r;
        }
    }
    return m;
}

/// W: the plain 1-circulant with the parity-scaled first row.
inline DenseMatrix factor_W(const SeqParams& p, std::size_t n) {
    return densify(RCirculant({1.0, 0.0}, scaled_first_row(p, n)));
}

/// Entrywise (Hadamard) product.
inline DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
    detail::require_same_shape(a, b, "hadamard");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) * b(i, j);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// basic linear algebra
// ---------------------------------------------------------------------------

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: inner dimensions " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
    }
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const ComplexScalar aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline DenseMatrix conj_transpose(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline std::vector<ComplexScalar> matvec(const DenseMatrix& a,
                                         const std::vector<ComplexScalar>& x) {
    if (a.cols() != x.size()) {
        throw ShapeError("matvec: " + std::to_string(a.cols()) + " cols vs vector of " +
                         std::to_string(x.size()));
    }
    std::vector<ComplexScalar> y(a.rows(), ComplexScalar{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        ComplexScalar acc{0.0, 0.0};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

}  // namespace bicirc

#endif  // BICIRC_CIRCULANT_HPP
