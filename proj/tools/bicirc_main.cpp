// bicirc: r-circulant matrices over bi-periodic Fibonacci numbers.
//
// Subcommands: seq | matrix | norms | bounds | eig | det | verify | sweep.
// JSON is the canonical machine format; sweep emits CSV; text is for humans.
//
// Exit codes: 0 all checks pass; 1 usage error; 2 verification failure;
// 3 a degenerate-formula fallback triggered but every check passed.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bicirc/bicirc.hpp"

namespace {

using namespace bicirc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitDegenerate = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// shared flag bundle
// ---------------------------------------------------------------------------

struct CommonFlags {
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t w0 = 0;
    std::int64_t w1 = 1;
    std::string preset;
    std::size_t n = 1;
    std::string r = "1";
    double tol_rel = 1e-9;
    double tol_abs = 1e-12;
    std::uint64_t seed = kDefaultSeed;
    std::string format;
    std::string out;

    CLI::Option* n_opt = nullptr;
    CLI::Option* r_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

void add_param_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--a", f.a, "even-index multiplier (>= 1)");
    cmd->add_option("--b", f.b, "odd-index multiplier (>= 1)");
    CLI::Option* w0 = cmd->add_option("--w0", f.w0, "seed w_0 (>= 0)");
    CLI::Option* w1 = cmd->add_option("--w1", f.w1, "seed w_1 (>= 1)");
    CLI::Option* preset =
        cmd->add_option("--preset", f.preset, "seed preset")
            ->check(CLI::IsMember({"fibonacci", "lucas"}));
    preset->excludes(w0);
    preset->excludes(w1);
}

void add_run_flags(CLI::App* cmd, CommonFlags& f, const std::string& default_format) {
    f.n_opt = cmd->add_option("--n", f.n, "matrix order")->check(CLI::PositiveNumber);
    f.r_opt = cmd->add_option("--r", f.r, "circulant ratio, complex literal");
    cmd->add_option("--tol-rel", f.tol_rel, "relative tolerance");
    cmd->add_option("--tol-abs", f.tol_abs, "absolute tolerance");
    f.seed_opt = cmd->add_option("--seed", f.seed, "power-iteration seed");
    f.format = default_format;
    cmd->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", f.out, "write output to a file instead of stdout");
}

SeqParams resolve_params(const CommonFlags& f) {
    SeqParams p{f.a, f.b, f.w0, f.w1};
    if (f.preset == "fibonacci") p = SeqParams::fibonacci(f.a, f.b);
    if (f.preset == "lucas") p = SeqParams::lucas(f.a, f.b);
    p.validate();
    return p;
}

Tolerances resolve_tol(const CommonFlags& f) {
    Tolerances tol;
    tol.rel_tol = f.tol_rel;
    tol.abs_tol = f.tol_abs;
    tol.validate();
    return tol;
}

// BICIRC_SEED overrides --seed when set.
std::uint64_t resolve_seed(const CommonFlags& f) {
    const char* env = std::getenv("BICIRC_SEED");
    if (env == nullptr) return f.seed;
    const std::string text(env);
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw UsageError("invalid BICIRC_SEED: '" + text + "'");
    }
    return value;
}

GaussianRational resolve_ratio(const CommonFlags& f) {
    GaussianRational r;
    try {
        r = parse_complex_exact(f.r);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid --r: ") + e.what());
    }
    if (r.is_zero()) throw UsageError("invalid --r: must be nonzero");
    return r;
}

void require_format(const CommonFlags& f, std::initializer_list<const char*> allowed,
                    const char* cmd_name) {
    for (const char* a : allowed) {
        if (f.format == a) return;
    }
    throw UsageError("--format " + f.format + " is not supported by " + cmd_name);
}

void emit(const CommonFlags& f, const std::string& payload) {
    if (f.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw UsageError("cannot open --out file: " + f.out);
    os << payload;
    if (!os) throw UsageError("write failed: " + f.out);
}

// sequence values beyond 2^53 lose precision in the floating-point paths
void warn_if_imprecise(const SeqParams& p, std::size_t n) {
    if (n == 0) return;
    const SequenceTable t = generate(p, n - 1);
    static const BigInt kDoubleExact = BigInt(1) << 53;
    for (const auto& v : t.values) {
        if (v > kDoubleExact) {
            std::cerr << "warning: sequence values exceed 2^53; floating-point "
                         "results may lose precision\n";
            return;
        }
    }
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// list parsing for sweep/verify grids
// ---------------------------------------------------------------------------

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) out.push_back(item);
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* flag) {
    std::vector<std::int64_t> out;
    for (const std::string& item : split_list(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string("invalid integer in ") + flag + ": '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string("empty range for ") + flag);
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    for (std::int64_t v : parse_int_list(text, flag)) {
        if (v < 1) throw UsageError(std::string("values for ") + flag + " must be >= 1");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<RatioPoint> parse_ratio_list(const std::string& text, const char* flag) {
    std::vector<RatioPoint> out;
    for (const std::string& item : split_list(text)) {
        try {
            out.push_back(RatioPoint::from_literal(item));
        } catch (const std::invalid_argument&) {
            throw UsageError(std::string("invalid complex literal in ") + flag + ": '" + item +
                             "'");
        }
        if (out.back().exact->is_zero()) {
            throw UsageError(std::string("invalid ") + flag + ": must be nonzero");
        }
    }
    if (out.empty()) throw UsageError(std::string("empty range for ") + flag);
    return out;
}

// ---------------------------------------------------------------------------
// subcommand implementations
// ---------------------------------------------------------------------------

int cmd_seq(const CommonFlags& f, std::optional<std::size_t> count, bool n_given) {
    require_format(f, {"json", "text"}, "seq");
    if (count && n_given) throw UsageError("--count and --n are mutually exclusive");
    if (!count && !n_given) throw UsageError("seq requires --count or --n");
    if (count && *count == 0) throw UsageError("--count must be >= 1");
    const std::size_t max_index = count ? *count - 1 : f.n;

    const SequenceTable t = generate(resolve_params(f), max_index);
    emit(f, f.format == "json" ? render_json(seq_json(t)) : seq_text(t));
    return kExitOk;
}

int cmd_matrix(const CommonFlags& f) {
    require_format(f, {"json", "text"}, "matrix");
    const SeqParams p = resolve_params(f);
    const GaussianRational r = resolve_ratio(f);
    warn_if_imprecise(p, f.n);
    const RCirculant c = build_Wr(p, f.n, r.to_complex());
    const DenseMatrix dense = densify(c);
    emit(f, f.format == "json" ? render_json(matrix_json(c, dense)) : matrix_text(c, dense));
    return kExitOk;
}

int cmd_norms(const CommonFlags& f) {
    require_format(f, {"json", "text"}, "norms/bounds");
    const SeqParams p = resolve_params(f);
    const GaussianRational r = resolve_ratio(f);
    warn_if_imprecise(p, f.n);
    const NormReport rep = analyze_norms(p, f.n, r, resolve_tol(f), resolve_seed(f));
    emit(f, f.format == "json" ? render_json(norms_json(rep)) : norms_text(rep));
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_spectral(const CommonFlags& f) {
    require_format(f, {"json", "text"}, "eig/det");
    const SeqParams p = resolve_params(f);
    const GaussianRational r = resolve_ratio(f);
    const Tolerances tol = resolve_tol(f);
    warn_if_imprecise(p, f.n);
    const SpectralReport rep = analyze_spectral(p, f.n, r.to_complex(), tol);
    emit(f, f.format == "json" ? render_json(spectral_json(rep)) : spectral_text(rep));

    bool ok = rep.residual <= kResidualTol && rep.det_max_rel_err <= kDetTripleTol;
    if (f.n >= 2 && !rep.eig_degenerate) ok = ok && rep.multiset_err <= kMultisetTol;
    if (!ok) return kExitCheckFailed;
    return rep.any_fallback() ? kExitDegenerate : kExitOk;
}

struct GridFlags {
    std::string a, b, w0, w1, n, r;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
    cmd->add_option("--a", g.a, "comma list of a values");
    cmd->add_option("--b", g.b, "comma list of b values");
    cmd->add_option("--w0", g.w0, "comma list of w0 values");
    cmd->add_option("--w1", g.w1, "comma list of w1 values");
    cmd->add_option("--n", g.n, "comma list of matrix orders");
    cmd->add_option("--r", g.r, "comma list of complex ratios");
}

VerifyGrid grid_from_flags(const GridFlags& gf, std::uint64_t seed) {
    VerifyGrid g = VerifyGrid::default_grid(seed);
    if (!gf.a.empty()) g.a = parse_int_list(gf.a, "--a");
    if (!gf.b.empty()) g.b = parse_int_list(gf.b, "--b");
    if (!gf.w0.empty()) g.w0 = parse_int_list(gf.w0, "--w0");
    if (!gf.w1.empty()) g.w1 = parse_int_list(gf.w1, "--w1");
    if (!gf.n.empty()) g.n = parse_size_list(gf.n, "--n");
    if (!gf.r.empty()) g.r = parse_ratio_list(gf.r, "--r");
    return g;
}

int cmd_verify(const CommonFlags& f, const GridFlags& gf, bool self_test_break) {
    require_format(f, {"json", "text"}, "verify");
    const std::uint64_t seed = resolve_seed(f);
    const VerifyGrid grid = grid_from_flags(gf, seed);

    VerifyOptions opt;
    opt.tol = resolve_tol(f);
    opt.seed = seed;
    opt.self_test_break = self_test_break;

    const VerifyResult res = run_verify(grid, opt);
    emit(f, f.format == "json" ? render_json(verify_json(res, seed)) : verify_text(res, seed));
    if (!res.all_pass()) {
        for (const auto& id : res.identities) {
            if (id.failures > 0) {
                std::cerr << "verify: " << id.name << " failed first at " << id.first_failure
                          << "\n";
                break;
            }
        }
        return kExitCheckFailed;
    }
    return res.degenerate_points > 0 ? kExitDegenerate : kExitOk;
}

int cmd_sweep(const CommonFlags& f, const GridFlags& gf, std::size_t cap) {
    if (f.format != "csv") throw UsageError("sweep emits CSV only; use --format csv");
    if (gf.a.empty() || gf.b.empty() || gf.w0.empty() || gf.w1.empty() || gf.n.empty() ||
        gf.r.empty()) {
        throw UsageError("sweep requires --a --b --w0 --w1 --n --r lists");
    }
    const auto as = parse_int_list(gf.a, "--a");
    const auto bs = parse_int_list(gf.b, "--b");
    const auto w0s = parse_int_list(gf.w0, "--w0");
    const auto w1s = parse_int_list(gf.w1, "--w1");
    const auto ns = parse_size_list(gf.n, "--n");
    const auto rs = parse_ratio_list(gf.r, "--r");

    const std::size_t total =
        as.size() * bs.size() * w0s.size() * w1s.size() * ns.size() * rs.size();
    if (total > cap) {
        throw UsageError("sweep grid has " + std::to_string(total) + " points, cap is " +
                         std::to_string(cap) + " (raise --cap to override)");
    }

    const Tolerances tol = resolve_tol(f);
    const std::uint64_t seed = resolve_seed(f);

    std::ostringstream os;
    os << "a,b,w0,w1,n,re_r,im_r,frobenius,spectral,lower,upper,gap_lower,gap_upper,"
          "det_re,det_im,degenerate,regime\n";
    for (std::int64_t a : as) {
        for (std::int64_t b : bs) {
            for (std::int64_t w0 : w0s) {
                for (std::int64_t w1 : w1s) {
                    const SeqParams p{a, b, w0, w1};
                    p.validate();
                    for (std::size_t n : ns) {
                        for (const RatioPoint& rp : rs) {
                            const ComplexScalar r = rp.value;
                            const DenseMatrix dense = densify(build_Wr(p, n, r));
                            const double fro = frobenius(dense);
                            const double s = spectral_norm(dense, tol, seed);
                            const SpectralBounds sb = spectral_bounds(p, n, r);
                            const SpectralReport rep = analyze_spectral(p, n, r, tol);
                            os << a << ',' << b << ',' << w0 << ',' << w1 << ',' << n << ','
                               << format_double(r.real()) << ',' << format_double(r.imag())
                               << ',' << format_double(fro) << ',' << format_double(s) << ','
                               << format_double(sb.lower) << ',' << format_double(sb.upper)
                               << ',' << format_double(s - sb.lower) << ','
                               << format_double(sb.upper - s) << ','
                               << format_double(rep.det_closed_value.real()) << ','
                               << format_double(rep.det_closed_value.imag()) << ','
                               << (rep.any_fallback() ? "true" : "false") << ','
                               << regime_name(sb.regime) << '\n';
                        }
                    }
                }
            }
        }
    }
    emit(f, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"r-circulant matrices of bi-periodic Fibonacci numbers"};
    app.require_subcommand(1);

    // seq
    CommonFlags seq_flags;
    std::size_t seq_count = 0;
    CLI::App* seq = app.add_subcommand("seq", "print w_0..w_N");
    add_param_flags(seq, seq_flags);
    add_run_flags(seq, seq_flags, "json");
    CLI::Option* count_opt = seq->add_option("--count", seq_count, "number of terms");

    // matrix
    CommonFlags matrix_flags;
    CLI::App* matrix = app.add_subcommand("matrix", "print W_r dense form");
    add_param_flags(matrix, matrix_flags);
    add_run_flags(matrix, matrix_flags, "json");

    // norms / bounds
    CommonFlags norms_flags;
    CLI::App* norms = app.add_subcommand("norms", "Frobenius/spectral norms and checks");
    add_param_flags(norms, norms_flags);
    add_run_flags(norms, norms_flags, "json");

    CommonFlags bounds_flags;
    CLI::App* bounds = app.add_subcommand("bounds", "spectral-norm sandwich report");
    add_param_flags(bounds, bounds_flags);
    add_run_flags(bounds, bounds_flags, "json");

    // eig / det
    CommonFlags eig_flags;
    CLI::App* eig = app.add_subcommand("eig", "eigenvalues by closed form and DFT");
    add_param_flags(eig, eig_flags);
    add_run_flags(eig, eig_flags, "json");

    CommonFlags det_flags;
    CLI::App* det = app.add_subcommand("det", "determinant by three routes");
    add_param_flags(det, det_flags);
    add_run_flags(det, det_flags, "json");

    // verify
    CommonFlags verify_flags;
    GridFlags verify_grid;
    bool self_test_break = false;
    CLI::App* verify = app.add_subcommand("verify", "run every identity over a grid");
    add_grid_flags(verify, verify_grid);
    verify->add_flag("--self-test-break", self_test_break,
                     "flip one closed-form sign; the suite must then fail");
    verify->add_option("--tol-rel", verify_flags.tol_rel, "relative tolerance");
    verify->add_option("--tol-abs", verify_flags.tol_abs, "absolute tolerance");
    verify->add_option("--seed", verify_flags.seed, "grid/power-iteration seed");
    verify_flags.format = "json";
    verify->add_option("--format", verify_flags.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    verify->add_option("--out", verify_flags.out, "write output to a file");

    // sweep
    CommonFlags sweep_flags;
    GridFlags sweep_grid;
    std::size_t sweep_cap = 100000;
    CLI::App* sweep = app.add_subcommand("sweep", "CSV over a parameter grid");
    add_grid_flags(sweep, sweep_grid);
    sweep->add_option("--cap", sweep_cap, "maximum grid size");
    sweep->add_option("--tol-rel", sweep_flags.tol_rel, "relative tolerance");
    sweep->add_option("--tol-abs", sweep_flags.tol_abs, "absolute tolerance");
    sweep->add_option("--seed", sweep_flags.seed, "power-iteration seed");
    sweep_flags.format = "csv";
    sweep->add_option("--format", sweep_flags.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sweep->add_option("--out", sweep_flags.out, "write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (seq->parsed()) {
            return cmd_seq(seq_flags,
                           count_opt->count() ? std::optional<std::size_t>(seq_count)
                                              : std::nullopt,
                           seq_flags.n_opt->count() > 0);
        }
        if (matrix->parsed()) return cmd_matrix(matrix_flags);
        if (norms->parsed()) return cmd_norms(norms_flags);
        if (bounds->parsed()) return cmd_norms(bounds_flags);
        if (eig->parsed()) return cmd_spectral(eig_flags);
        if (det->parsed()) return cmd_spectral(det_flags);
        if (verify->parsed()) return cmd_verify(verify_flags, verify_grid, self_test_break);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_grid, sweep_cap);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ZeroRatio& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
}
