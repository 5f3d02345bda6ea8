// Acceptance gate: ten go/no-go checks over the full library and the CLI.
// Prints one [PASS]/[FAIL] line per criterion; the exit code is the number
// of failed criteria, so 0 means the build is acceptable.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bicirc/bicirc.hpp"
#include "oracles.hpp"

namespace {

using namespace bicirc;
using Clock = std::chrono::steady_clock;

struct CriterionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void expect(bool ok, const std::string& msg) {
    if (!ok) throw CriterionFailed(msg);
}

std::string fmt_point(const SeqParams& p, std::size_t n, ComplexScalar r) {
    std::ostringstream os;
    os << "(a=" << p.a << ",b=" << p.b << ",w0=" << p.w0 << ",w1=" << p.w1 << ",n=" << n
       << ",r=" << r.real() << "+" << r.imag() << "i)";
    return os.str();
}

// shared acceptance grid: compact but regime- and parity-covering
const std::vector<std::int64_t> kAs{1, 2, 4};
const std::vector<std::int64_t> kBs{1, 2, 3};
const std::vector<std::int64_t> kW0s{0, 1, 2};
const std::vector<std::int64_t> kW1s{1, 3};

std::vector<GaussianRational> exact_ratios() {
    return {parse_complex_exact("2"), parse_complex_exact("0.5"), parse_complex_exact("-1"),
            parse_complex_exact("0.75+0.25i")};
}

std::vector<ComplexScalar> float_ratios() {
    return {{2.0, 0.0}, {0.5, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.75, 0.25}, {1.0, 0.0}};
}

// denser grid used by the spectral cross-oracle criteria
const std::vector<std::int64_t> kCrossAs{1, 2, 3, 4};
const std::vector<std::int64_t> kCrossBs{1, 2, 3, 4};
const std::vector<std::int64_t> kCrossW0s{0, 1, 2};
const std::vector<std::int64_t> kCrossW1s{1, 2, 3};

std::vector<ComplexScalar> spectral_ratios() {
    return {{2.0, 0.0}, {1.0, 1.0}, {0.5, 0.0}, {-3.0, 0.0}, {0.0, 1.0}};
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BICIRC_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    expect(pipe != nullptr, "popen failed");
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    expect(WIFEXITED(status), "cli did not exit normally");
    res.exit_code = WEXITSTATUS(status);
    return res;
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

// 1: scaled square sums match their closed forms in exact arithmetic
std::string crit_square_sums() {
    const auto t0 = Clock::now();
    std::size_t tuples = 0;
    for (std::int64_t a = 1; a <= 5; ++a) {
        for (std::int64_t b = 1; b <= 5; ++b) {
            for (std::int64_t w0 = 0; w0 <= 3; ++w0) {
                for (std::int64_t w1 = 1; w1 <= 3; ++w1) {
                    const SeqParams p{a, b, w0, w1};
                    for (std::size_t n = 1; n <= 30; ++n) {
                        sum_squares_from1(p, n);  // throws IdentityFailed on mismatch
                        sum_squares_from0(p, n);
                        ++tuples;
                    }
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    expect(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
    std::ostringstream os;
    os << tuples << " tuples, " << dt << "s";
    return os.str();
}

// 2: the (0,1) and (2,b) seed specializations reduce to product forms
std::string crit_specializations() {
    std::size_t tuples = 0;
    for (std::int64_t a = 1; a <= 5; ++a) {
        for (std::int64_t b = 1; b <= 5; ++b) {
            const SeqParams q = SeqParams::fibonacci(a, b);
            const SeqParams pl = SeqParams::lucas(a, b);
            const SequenceTable qt = generate(q, 31);
            const SequenceTable pt = generate(pl, 31);
            for (std::size_t n = 1; n <= 30; ++n) {
                ExactRational qsum(0), psum(0);
                for (std::size_t k = 1; k <= n; ++k) {
                    qsum += scaled_square(q, qt, k);
                    psum += scaled_square(pl, pt, k);
                }
                const ExactRational qrhs(qt.at(n) * qt.at(n + 1), BigInt(b));
                const ExactRational prhs =
                    ExactRational(pt.at(n) * pt.at(n + 1), BigInt(b)) - 2;
                expect(qsum == qrhs, "q specialization at " + detail::seq_point(q, n));
                expect(psum == prhs, "p specialization at " + detail::seq_point(pl, n));
                ++tuples;
            }
        }
    }
    return std::to_string(tuples) + " (a,b,n) tuples";
}

// 3: closed Frobenius square equals the exact entrywise sum; float side within 1e-9
std::string crit_frobenius() {
    std::size_t exact_pts = 0;
    for (std::int64_t a : kAs) {
        for (std::int64_t b : kBs) {
            for (std::int64_t w0 : kW0s) {
                for (std::int64_t w1 : kW1s) {
                    const SeqParams p{a, b, w0, w1};
                    for (std::size_t n = 1; n <= 12; ++n) {
                        for (const GaussianRational& r : exact_ratios()) {
                            const ExactRational closed = frobenius_closed_sq(p, n, r);
                            const ExactRational entrywise = entrywise_frobenius_sq(p, n, r);
                            expect(closed == entrywise,
                                   "exact mismatch at " + fmt_point(p, n, r.to_complex()));
                            const DenseMatrix dense = densify(build_Wr(p, n, r.to_complex()));
                            const double direct = frobenius(dense);
                            const double viaclosed = std::sqrt(to_double(closed));
                            const double err = std::abs(direct - viaclosed) /
                                               std::max(1.0, std::abs(viaclosed));
                            expect(err <= 1e-9,
                                   "float mismatch at " + fmt_point(p, n, r.to_complex()));
                            ++exact_pts;
                        }
                    }
                }
            }
        }
    }
    return std::to_string(exact_pts) + " exact+float points";
}

// 4: power-iteration spectral norm sits inside the closed bounds
std::string crit_sandwich() {
    const auto t0 = Clock::now();
    const Tolerances tol;
    std::size_t total = 0, ge1 = 0, lt1 = 0, boundary = 0;
    for (std::int64_t a : kAs) {
        for (std::int64_t b : kBs) {
            for (std::int64_t w0 : kW0s) {
                for (std::int64_t w1 : kW1s) {
                    const SeqParams p{a, b, w0, w1};
                    for (std::size_t n : {2, 3, 4, 6, 8, 12, 16}) {
                        for (ComplexScalar r : float_ratios()) {
                            const DenseMatrix dense = densify(build_Wr(p, n, r));
                            const double s = spectral_norm(dense, tol, kDefaultSeed);
                            const SpectralBounds sb = spectral_bounds(p, n, r);
                            const double slack = kIneqSlack * std::max(1.0, sb.upper);
                            expect(sb.lower - slack <= s && s <= sb.upper + slack,
                                   "sandwich violated at " + fmt_point(p, n, r));
                            const double mag = std::abs(r);
                            ++total;
                            if (mag >= 1.0) ++ge1;
                            if (mag < 1.0) ++lt1;
                            if (mag == 1.0) ++boundary;
                        }
                    }
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    expect(total >= 2000, "grid too small: " + std::to_string(total));
    expect(ge1 > 0 && lt1 > 0 && boundary > 0, "regime coverage missing");
    expect(dt < 60.0, "runtime " + std::to_string(dt) + "s exceeds 60s");
    std::ostringstream os;
    os << total << " points (" << ge1 << " with |r|>=1, " << lt1 << " with |r|<1, " << boundary
       << " on |r|=1), " << dt << "s";
    return os.str();
}

// 5: closed-form eigenvalues match the polynomial-at-root oracle
std::string crit_eigenvalues() {
    const Tolerances tol;
    std::size_t checked = 0, degenerate = 0;
    for (std::int64_t a : kCrossAs) {
        for (std::int64_t b : kCrossBs) {
            for (std::int64_t w0 : kCrossW0s) {
                for (std::int64_t w1 : kCrossW1s) {
                    const SeqParams p{a, b, w0, w1};
                    for (std::size_t n = 2; n <= 16; ++n) {
                        for (ComplexScalar r : spectral_ratios()) {
                            const RCirculant c = build_Wr(p, n, r);
                            const EigenSet dft = eigenvalues_dft(c);
                            const double res = eigen_residual(densify(c), dft);
                            expect(res <= kResidualTol,
                                   "oracle residual " + std::to_string(res) + " at " +
                                       fmt_point(p, n, r));
                            try {
                                const EigenSet closed = eigenvalues_closed(p, n, r, tol);
                                const double err =
                                    multiset_max_rel_err(closed.values, dft.values);
                                expect(err <= kMultisetTol,
                                       "multiset error " + std::to_string(err) + " at " +
                                           fmt_point(p, n, r));
                                ++checked;
                            } catch (const DegenerateFormula&) {
                                ++degenerate;
                            }
                        }
                    }
                }
            }
        }
    }
    std::ostringstream os;
    os << checked << " points, " << degenerate << " degenerate skips";
    return os.str();
}

// 6: three determinant routes agree; brute-force cofactor agrees for small n
std::string crit_determinants() {
    const Tolerances tol;
    auto rel = [](ComplexScalar x, ComplexScalar y) {
        return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
    };
    std::size_t checked = 0, degenerate = 0;
    for (std::int64_t a : kCrossAs) {
        for (std::int64_t b : kCrossBs) {
            for (std::int64_t w0 : kCrossW0s) {
                for (std::int64_t w1 : kCrossW1s) {
                    const SeqParams p{a, b, w0, w1};
                    for (std::size_t n = 2; n <= 16; ++n) {
                        for (ComplexScalar r : spectral_ratios()) {
                            const RCirculant c = build_Wr(p, n, r);
                            const DenseMatrix dense = densify(c);
                            const ComplexScalar product = det_product(eigenvalues_dft(c));
                            const ComplexScalar lu = det_lu(dense);
                            expect(rel(product, lu) <= kDetTripleTol,
                                   "product/lu split at " + fmt_point(p, n, r));
                            try {
                                const ComplexScalar closed = det_closed(p, n, r, tol);
                                expect(rel(closed, product) <= kDetTripleTol,
                                       "closed/product split at " + fmt_point(p, n, r));
                                expect(rel(closed, lu) <= kDetTripleTol,
                                       "closed/lu split at " + fmt_point(p, n, r));
                                ++checked;
                            } catch (const DegenerateFormula&) {
                                ++degenerate;
                            }
                        }
                    }
                }
            }
        }
    }

    // brute-force cross-check on a slice that still reaches n = 8
    std::size_t cofactor_pts = 0;
    for (std::int64_t a : {1, 2}) {
        for (std::int64_t b : {1, 3}) {
            for (std::int64_t w0 : {0, 1}) {
                const SeqParams p{a, b, w0, 1};
                for (std::size_t n = 2; n <= 8; ++n) {
                    for (ComplexScalar r : {ComplexScalar{2.0, 0.0}, ComplexScalar{0.5, 0.0},
                                            ComplexScalar{0.0, 1.0}}) {
                        const DenseMatrix dense = densify(build_Wr(p, n, r));
                        const ComplexScalar brute = oracles::det_cofactor(dense);
                        const ComplexScalar lu = det_lu(dense);
                        expect(rel(brute, lu) <= kDetTripleTol,
                               "cofactor split at " + fmt_point(p, n, r));
                        ++cofactor_pts;
                    }
                }
            }
        }
    }

    // worked point: order-2 ordinary circulant of 0,1 has determinant -1
    const SeqParams fib = SeqParams::fibonacci(1, 1);
    const DenseMatrix worked = densify(build_Wr(fib, 2, {1.0, 0.0}));
    const ComplexScalar target{-1.0, 0.0};
    expect(rel(det_closed(fib, 2, {1.0, 0.0}, tol), target) <= kDetTripleTol,
           "worked point: closed route");
    expect(rel(det_product(eigenvalues_dft(build_Wr(fib, 2, {1.0, 0.0}))), target) <=
               kDetTripleTol,
           "worked point: eigenvalue product");
    expect(rel(det_lu(worked), target) <= kDetTripleTol, "worked point: lu");
    expect(rel(oracles::det_cofactor(worked), target) <= kDetTripleTol,
           "worked point: cofactor");

    std::ostringstream os;
    os << checked << " triple points, " << degenerate << " degenerate skips, " << cofactor_pts
       << " cofactor points, worked point -1";
    return os.str();
}

// 7: norm inequalities hold for every suite matrix and for random pairs
std::string crit_inequalities() {
    const Tolerances tol;
    std::size_t suite = 0;
    for (std::int64_t a : kAs) {
        for (std::int64_t b : kBs) {
            for (std::int64_t w0 : kW0s) {
                for (std::int64_t w1 : kW1s) {
                    const SeqParams p{a, b, w0, w1};
                    for (std::size_t n : {2, 4, 8, 12}) {
                        for (ComplexScalar r : float_ratios()) {
                            const DenseMatrix dense = densify(build_Wr(p, n, r));
                            check_zielke(dense, tol);    // throws on violation
                            check_mathias(dense, dense, tol);
                            ++suite;
                        }
                    }
                }
            }
        }
    }

    std::mt19937_64 rng(kDefaultSeed ^ 0xACCE97u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t t = 0; t < 500; ++t) {
        const std::size_t n = 2 + t % 9;
        DenseMatrix a(n, n), b(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = {dist(rng), dist(rng)};
                b(i, j) = {dist(rng), dist(rng)};
            }
        }
        check_zielke(a, tol);
        check_zielke(b, tol);
        check_mathias(a, b, tol);
    }
    return std::to_string(suite) + " suite matrices + 500 random pairs";
}

// 8: float closed form tracks the exact recurrence; series coefficients match
std::string crit_binet_genfn() {
    std::size_t params = 0;
    for (std::int64_t a = 1; a <= 5; ++a) {
        for (std::int64_t b = 1; b <= 5; ++b) {
            for (std::int64_t w0 = 0; w0 <= 3; ++w0) {
                for (std::int64_t w1 = 1; w1 <= 3; ++w1) {
                    const SeqParams p{a, b, w0, w1};
                    const SequenceTable t = generate(p, 40);
                    for (std::size_t n = 0; n <= 40; ++n) {
                        const double exact = to_double(ExactRational(t.at(n)));
                        const double closed = binet_eval(p, n);
                        const double err =
                            std::abs(closed - exact) / std::max(1.0, std::abs(exact));
                        expect(err <= kBinetTol, "binet drift at " + detail::seq_point(p, n));
                    }
                    const std::vector<BigInt> coeffs = genfn_coeffs(p, 19);
                    for (std::size_t k = 0; k < 20; ++k) {
                        expect(coeffs[k] == t.at(k),
                               "series coefficient " + std::to_string(k) + " at " +
                                   detail::seq_point(p, k));
                    }
                    ++params;
                }
            }
        }
    }
    return std::to_string(params) + " parameter tuples, n <= 40";
}

// 9: flipping one closed-form sign must surface as reported failures
std::string crit_self_test_break() {
    const std::string grid = "--a 1 --b 1,2 --w0 0,1 --w1 1 --n 3,4,5 --r 2,0.5";
    const CliResult clean = run_cli("verify " + grid);
    expect(clean.exit_code == 0, "clean run should pass, got exit " +
                                     std::to_string(clean.exit_code));
    const CliResult broken = run_cli("verify " + grid + " --self-test-break");
    expect(broken.exit_code == 2,
           "broken run should exit 2, got " + std::to_string(broken.exit_code));
    expect(broken.out.find("\"all_pass\": false") != std::string::npos,
           "broken run did not report failures");
    return "sign flip detected (exit 2)";
}

// 10: the verifier is bitwise deterministic for a fixed seed
std::string crit_determinism() {
    const CliResult first = run_cli("verify --seed 7");
    const CliResult second = run_cli("verify --seed 7");
    expect(first.exit_code == second.exit_code, "exit codes differ between runs");
    expect(first.exit_code == 0 || first.exit_code == 3,
           "verify run failed with exit " + std::to_string(first.exit_code));
    expect(!first.out.empty(), "verify produced no output");
    expect(first.out == second.out, "outputs differ between identically seeded runs");
    return std::to_string(first.out.size()) + " bytes, byte-identical";
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> body;
    };
    const std::vector<Criterion> criteria{
        {"exact scaled square-sum identities", crit_square_sums},
        {"seed-specialization product forms", crit_specializations},
        {"closed Frobenius form vs entrywise sum", crit_frobenius},
        {"spectral-norm sandwich bounds", crit_sandwich},
        {"closed eigenvalues vs DFT oracle", crit_eigenvalues},
        {"determinant routes agree", crit_determinants},
        {"norm inequalities on suite and random pairs", crit_inequalities},
        {"Binet and generating-function agreement", crit_binet_genfn},
        {"broken sign is detected by verify", crit_self_test_break},
        {"verify output is deterministic", crit_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = true;
        try {
            detail = criteria[i].body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        std::printf("[%s] %2zu. %s (%s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
