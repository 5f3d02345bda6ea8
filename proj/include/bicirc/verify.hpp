#ifndef BICIRC_VERIFY_HPP
#define BICIRC_VERIFY_HPP

// Grid verification engine.
//
// Runs every identity the library claims over a cartesian parameter grid
// and tallies per-identity pass/fail/skip counts.  Exact identities compare
// rationals for equality; floating identities use the pinned tolerances
// below.  Given the same grid and seed the result is fully deterministic.
//
// The self_test_break option flips one sign inside the closed determinant
// numerator.  A healthy suite must then report failures; this guards against
// checks that silently compare a formula with itself.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bicirc/circulant.hpp"
#include "bicirc/errors.hpp"
#include "bicirc/norms.hpp"
#include "bicirc/numeric.hpp"
#include "bicirc/sequences.hpp"
#include "bicirc/spectral.hpp"

namespace bicirc {

// pinned check tolerances (absolute, scaled by max(1, magnitude))
inline constexpr double kMultisetTol = 1e-8;
inline constexpr double kDetTripleTol = 1e-8;
inline constexpr double kResidualTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kBinetTol = 1e-9;
inline constexpr double kFrobFloatTol = 1e-9;
inline constexpr double kRootTol = 1e-12;

/// One ratio value; exact form present when the value came from a literal.
struct RatioPoint {
    ComplexScalar value{1.0, 0.0};
    std::optional<GaussianRational> exact;
    std::string label;  // printable form for failure messages

    static RatioPoint from_literal(const std::string& text) {
        RatioPoint p;
        p.exact = parse_complex_exact(text);
        p.value = p.exact->to_complex();
        p.label = text;
        return p;
    }
};

/// Cartesian verification grid plus fixed ranges for the sequence-level
/// identities (those have no matrix order, so grid.n does not apply).
struct VerifyGrid {
    std::vector<std::int64_t> a{1};
    std::vector<std::int64_t> b{1};
    std::vector<std::int64_t> w0{0};
    std::vector<std::int64_t> w1{1};
    std::vector<std::size_t> n{2};
    std::vector<RatioPoint> r;

    std::size_t seq_n_max = 30;    // square-sum identities run n = 1..seq_n_max
    std::size_t binet_n_max = 40;  // Binet check runs n = 0..binet_n_max
    std::size_t genfn_terms = 20;  // generating-function prefix length
    std::size_t exact_frob_n_max = 12; // exact entrywise Frobenius cap
    std::size_t random_mathias_pairs = 100;

    /// Stock grid: both |r| regimes, |r| = 1, exact Gaussian ratios for the
    /// entrywise Frobenius oracle, and three seeded random phases.
    static VerifyGrid default_grid(std::uint64_t seed) {
        VerifyGrid g;
        g.a = {1, 2, 4};
        g.b = {1, 2, 3};
        g.w0 = {0, 1, 2};
        g.w1 = {1, 3};
        g.n = {1, 2, 3, 4, 8, 12};
        for (const char* lit : {"2", "0.5", "-1", "0.75+0.25i", "i"}) {
            g.r.push_back(RatioPoint::from_literal(lit));
        }
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
        for (double mag : {0.25, 1.0, 4.0}) {
            RatioPoint p;
            p.value = std::polar(mag, angle(gen));
            p.label = format_complex(p.value);
            g.r.push_back(p);
        }
        return g;
    }

    std::size_t matrix_points() const {
        return a.size() * b.size() * w0.size() * w1.size() * n.size() * r.size();
    }
};

struct IdentitySummary {
    std::string name;
    long long points = 0;
    long long passes = 0;
    long long failures = 0;
    long long skipped = 0;
    std::string first_failure;
    std::string skip_reason;
};

struct VerifyOptions {
    Tolerances tol;
    std::uint64_t seed = kDefaultSeed;
    bool self_test_break = false;
};

struct VerifyResult {
    std::vector<IdentitySummary> identities;
    long long degenerate_points = 0;

    bool all_pass() const {
        for (const auto& id : identities) {
            if (id.failures > 0) return false;
        }
        return true;
    }

    const IdentitySummary* find(const std::string& name) const {
        for (const auto& id : identities) {
            if (id.name == name) return &id;
        }
        return nullptr;
    }
};

namespace detail {

// fixed identity order; indexes into VerifyResult::identities
enum IdentityIndex : std::size_t {
    kRootRelations = 0,
    kBinetForm,
    kGenfnCoefficients,
    kSumSquares,
    kSumSquaresShifted,
    kSpecialSumQ,
    kSpecialSumP,
    kFrobeniusExact,
    kFrobeniusFloat,
    kHadamardSplit,
    kSpectralSandwich,
    kZielke,
    kMathias,
    kSpecialBounds,
    kEigenMultiset,
    kEigenResidual,
    kTraceIdentity,
    kDetTriple,
    kIdentityCount
};

inline std::vector<IdentitySummary> make_identity_slots() {
    static const char* names[kIdentityCount] = {
        "root_relations",      "binet_form",        "genfn_coefficients",
        "sum_squares",         "sum_squares_shifted", "special_sum_q",
        "special_sum_p",       "frobenius_exact",   "frobenius_float",
        "hadamard_split",      "spectral_sandwich", "zielke",
        "mathias",             "special_bounds",    "eigen_multiset",
        "eigen_residual",      "trace_identity",    "det_triple",
    };
    std::vector<IdentitySummary> out(kIdentityCount);
    for (std::size_t i = 0; i < kIdentityCount; ++i) out[i].name = names[i];
    return out;
}

struct Recorder {
    std::vector<IdentitySummary>& ids;

    void pass(IdentityIndex i) {
        ++ids[i].points;
        ++ids[i].passes;
    }
    void fail(IdentityIndex i, const std::string& where, const std::string& detail) {
        ++ids[i].points;
        ++ids[i].failures;
        if (ids[i].first_failure.empty()) ids[i].first_failure = where + ": " + detail;
    }
    void check(IdentityIndex i, bool ok, const std::string& where, const std::string& detail) {
        if (ok) {
            pass(i);
        } else {
            fail(i, where, detail);
        }
    }
    void skip(IdentityIndex i, const std::string& reason) {
        ++ids[i].points;
        ++ids[i].skipped;
        ids[i].skip_reason = reason;
    }
};

inline std::string point_label(const SeqParams& p, std::size_t n, const std::string& r_label) {
    return seq_point(p, n) + " r=" + r_label;
}

// All matrix-level identities at one (params, n, r) grid point.
inline void run_matrix_point(const SeqParams& p, std::size_t n, const RatioPoint& rp,
                             const VerifyGrid& grid, const VerifyOptions& opt, Recorder& rec,
                             VerifyResult& res) {
    const std::string where = point_label(p, n, rp.label);
    const ComplexScalar rv = rp.value;
    const DenseMatrix dense = densify(build_Wr(p, n, rv));
    const DenseMatrix u = factor_U(n, rv);
    const DenseMatrix w = factor_W(p, n);

    // entrywise split: U o W must reproduce the dense matrix bitwise
    rec.check(IdentityIndex::kHadamardSplit, hadamard(u, w) == dense, where,
              "U o W != densify(W_r)");

    // Frobenius closed form: exact route for Gaussian-rational r, float always
    if (rp.exact && n <= grid.exact_frob_n_max) {
        rec.check(IdentityIndex::kFrobeniusExact,
                  frobenius_closed_sq(p, n, *rp.exact) ==
                      entrywise_frobenius_sq(p, n, *rp.exact),
                  where, "closed Frobenius^2 != entrywise rational sum");
    }
    const double fnorm = frobenius(dense);
    {
        const double closed_f = std::sqrt(frobenius_closed_sq_approx(p, n, rv));
        const double err =
            std::abs(fnorm - closed_f) / std::max({1.0, fnorm, closed_f});
        rec.check(IdentityIndex::kFrobeniusFloat, err <= kFrobFloatTol, where,
                  "Frobenius closed/direct gap " + format_double(err));
    }

    // sandwich + Zielke + Mathias, sharing one power iteration on the dense matrix
    const SpectralBounds sb = spectral_bounds(p, n, rv);
    bool have_spectral = false;
    double snorm = 0.0;
    try {
        snorm = spectral_norm(dense, opt.tol, opt.seed);
        have_spectral = true;
    } catch (const NoConvergence& e) {
        rec.fail(IdentityIndex::kSpectralSandwich, where, e.what());
        rec.skip(IdentityIndex::kZielke, "power iteration did not converge");
        rec.skip(IdentityIndex::kMathias, "power iteration did not converge");
    }
    if (have_spectral) {
        const double slack = kIneqSlack * std::max(1.0, sb.upper);
        const bool inside = sb.lower - slack <= snorm && snorm <= sb.upper + slack;
        rec.check(IdentityIndex::kSpectralSandwich, inside, where,
                  "spectral " + format_double(snorm) + " outside [" +
                      format_double(sb.lower) + ", " + format_double(sb.upper) + "]");

        const CheckResult z1 =
            ineq_check("zielke_lower", fnorm / std::sqrt(static_cast<double>(n)), snorm);
        const CheckResult z2 = ineq_check("zielke_upper", snorm, fnorm);
        rec.check(IdentityIndex::kZielke, z1.pass && z2.pass, where,
                  (z1.pass ? z2.name : z1.name) + " violated");

        // ||U o W||_2 is snorm itself: the split was checked bitwise above
        try {
            const double su = spectral_norm(u, opt.tol, opt.seed);
            const double sw = spectral_norm(w, opt.tol, opt.seed);
            const CheckResult m1 = ineq_check("mathias_norm_product", snorm, su * sw);
            const CheckResult m2 =
                ineq_check("mathias_r1c1", snorm, r1_max_row(u) * c1_max_col(w));
            rec.check(IdentityIndex::kMathias, m1.pass && m2.pass, where,
                      (m1.pass ? m2.name : m1.name) + " violated");
        } catch (const NoConvergence& e) {
            rec.fail(IdentityIndex::kMathias, where, e.what());
        }
    }

    // specialized bound routes must equal the general pipeline bitwise
    {
        auto same = [](const SpectralBounds& x, const SpectralBounds& y) {
            return x.lower == y.lower && x.upper == y.upper && x.regime == y.regime;
        };
        const bool ok =
            same(special_case_bounds(SpecialKind::BiFibonacci, p, n, rv),
                 spectral_bounds(SeqParams::fibonacci(p.a, p.b), n, rv)) &&
            same(special_case_bounds(SpecialKind::BiLucas, p, n, rv),
                 spectral_bounds(SeqParams::lucas(p.a, p.b), n, rv)) &&
            same(special_case_bounds(SpecialKind::ClassicalGeneralized, p, n, rv),
                 spectral_bounds(SeqParams{1, 1, p.w0, p.w1}, n, rv));
        rec.check(IdentityIndex::kSpecialBounds, ok, where,
                  "specialized ratio route differs from general route");
    }

    // eigenvalues and determinants
    SpectralReport srep;
    try {
        srep = analyze_spectral(p, n, rv, opt.tol, opt.self_test_break);
    } catch (const NonFinite& e) {
        rec.fail(IdentityIndex::kEigenResidual, where, e.what());
        rec.fail(IdentityIndex::kDetTriple, where, e.what());
        return;
    }
    if (srep.any_fallback()) ++res.degenerate_points;

    if (n < 2) {
        rec.skip(IdentityIndex::kEigenMultiset, "n >= 2 required");
    } else if (srep.eig_degenerate) {
        rec.skip(IdentityIndex::kEigenMultiset, "degenerate denominator");
    } else {
        rec.check(IdentityIndex::kEigenMultiset, srep.multiset_err <= kMultisetTol, where,
                  "multiset error " + format_double(srep.multiset_err));
    }

    rec.check(IdentityIndex::kEigenResidual, srep.residual <= kResidualTol, where,
              "residual " + format_double(srep.residual));

    {
        ComplexScalar trace{0.0, 0.0};
        double mass = 0.0;
        for (const auto& v : srep.eigen_dft.values) {
            trace += v;
            mass += std::abs(v);
        }
        const ComplexScalar expected{static_cast<double>(n) * static_cast<double>(p.w0), 0.0};
        const double err = std::abs(trace - expected) / std::max(1.0, mass);
        rec.check(IdentityIndex::kTraceIdentity, err <= kTraceTol, where,
                  "trace error " + format_double(err));
    }

    if (n < 2) {
        rec.skip(IdentityIndex::kDetTriple, "n >= 2 required");
    } else {
        rec.check(IdentityIndex::kDetTriple, srep.det_max_rel_err <= kDetTripleTol, where,
                  "determinant routes disagree by " + format_double(srep.det_max_rel_err));
    }
}

}  // namespace detail

/// Runs the full identity suite over the grid.  Never throws for identity
/// failures (they are tallied); throws only for invalid grids or tolerances.
inline VerifyResult run_verify(const VerifyGrid& grid, const VerifyOptions& opt) {
    opt.tol.validate();
    if (grid.a.empty() || grid.b.empty() || grid.w0.empty() || grid.w1.empty() ||
        grid.n.empty() || grid.r.empty()) {
        throw std::invalid_argument("run_verify: empty grid axis");
    }

    VerifyResult res;
    res.identities = detail::make_identity_slots();
    detail::Recorder rec{res.identities};
    using detail::IdentityIndex;

    for (std::int64_t a : grid.a) {
        for (std::int64_t b : grid.b) {
            // characteristic roots: alpha+beta = ab, alpha*beta = -ab,
            // alpha-beta = sqrt(disc)
            {
                const SeqParams p{a, b, 0, 1};
                const RootPair rp = roots(p);
                const double ab = static_cast<double>(a) * static_cast<double>(b);
                const double scale = std::max(1.0, std::abs(ab));
                const bool ok = std::abs(rp.alpha + rp.beta - ab) <= kRootTol * scale &&
                                std::abs(rp.alpha * rp.beta + ab) <= kRootTol * scale &&
                                std::abs(rp.alpha - rp.beta - std::sqrt(rp.discriminant)) <=
                                    kRootTol * scale;
                rec.check(IdentityIndex::kRootRelations, ok, detail::seq_point(p, 0),
                          "root relations drifted past 1e-12");
            }

            // q/p square-sum specializations, exact
            {
                const SeqParams q = SeqParams::fibonacci(a, b);
                const SeqParams pl = SeqParams::lucas(a, b);
                const SequenceTable qt = generate(q, grid.seq_n_max + 1);
                const SequenceTable pt = generate(pl, grid.seq_n_max + 1);
                for (std::size_t n = 1; n <= grid.seq_n_max; ++n) {
                    const ExactRational qrhs(qt.at(n) * qt.at(n + 1), BigInt(b));
                    rec.check(IdentityIndex::kSpecialSumQ, sum_squares_from1(q, n) == qrhs,
                              detail::seq_point(q, n), "q_n q_{n+1}/b mismatch");
                    const ExactRational prhs =
                        ExactRational(pt.at(n) * pt.at(n + 1), BigInt(b)) - 2;
                    rec.check(IdentityIndex::kSpecialSumP, sum_squares_from1(pl, n) == prhs,
                              detail::seq_point(pl, n), "p_n p_{n+1}/b - 2 mismatch");
                }
            }

            for (std::int64_t w0 : grid.w0) {
                for (std::int64_t w1 : grid.w1) {
                    const SeqParams p{a, b, w0, w1};
                    const SequenceTable table =
                        generate(p, std::max(grid.binet_n_max, grid.genfn_terms));

                    // Binet form against the exact table
                    for (std::size_t n = 0; n <= grid.binet_n_max; ++n) {
                        const double exact = to_double(table.at(n));
                        double err;
                        try {
                            err = std::abs(binet_eval(p, n) - exact) / std::max(1.0, exact);
                        } catch (const NonFinite&) {
                            rec.fail(IdentityIndex::kBinetForm, detail::seq_point(p, n),
                                     "binet_eval overflow");
                            continue;
                        }
                        rec.check(IdentityIndex::kBinetForm, err <= kBinetTol,
                                  detail::seq_point(p, n),
                                  "binet error " + format_double(err));
                    }

                    // generating-function coefficients, exact prefix
                    {
                        const std::vector<BigInt> c = genfn_coeffs(p, grid.genfn_terms);
                        bool ok = true;
                        for (std::size_t k = 0; k <= grid.genfn_terms; ++k) {
                            if (c[k] != table.at(k)) {
                                ok = false;
                                break;
                            }
                        }
                        rec.check(IdentityIndex::kGenfnCoefficients, ok,
                                  detail::seq_point(p, grid.genfn_terms),
                                  "series prefix disagrees with recurrence");
                    }

                    // weighted square sums, exact (the closed forms also
                    // self-assert; IdentityFailed here is still tallied)
                    for (std::size_t n = 1; n <= grid.seq_n_max; ++n) {
                        try {
                            sum_squares_from1(p, n);
                            rec.pass(IdentityIndex::kSumSquares);
                        } catch (const IdentityFailed& e) {
                            rec.fail(IdentityIndex::kSumSquares, detail::seq_point(p, n),
                                     e.what());
                        }
                        try {
                            sum_squares_from0(p, n);
                            rec.pass(IdentityIndex::kSumSquaresShifted);
                        } catch (const IdentityFailed& e) {
                            rec.fail(IdentityIndex::kSumSquaresShifted, detail::seq_point(p, n),
                                     e.what());
                        }
                    }

                    for (std::size_t n : grid.n) {
                        for (const RatioPoint& rp : grid.r) {
                            detail::run_matrix_point(p, n, rp, grid, opt, rec, res);
                        }
                    }
                }
            }
        }
    }

    // Mathias on random dense pairs (not circulant); seeded and fixed-count
    {
        std::mt19937_64 gen(opt.seed ^ 0x6d617468u);  // decorrelate from phase stream
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (std::size_t t = 0; t < grid.random_mathias_pairs; ++t) {
            const std::size_t n = 2 + t % 9;
            DenseMatrix x(n, n), y(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    x(i, j) = {unit(gen), unit(gen)};
                    y(i, j) = {unit(gen), unit(gen)};
                }
            }
            try {
                check_mathias(x, y, opt.tol, opt.seed);
                rec.pass(detail::IdentityIndex::kMathias);
            } catch (const InequalityViolated& e) {
                rec.fail(detail::IdentityIndex::kMathias,
                         "random pair " + std::to_string(t), e.what());
            }
        }
    }

    return res;
}

}  // namespace bicirc

#endif  // BICIRC_VERIFY_HPP
