#ifndef BICIRC_REPORT_HPP
#define BICIRC_REPORT_HPP

// JSON and text rendering for CLI reports.
//
// JSON is the canonical machine format.  Complex values are [re, im] pairs,
// exact integers are decimal strings, exact rationals are "num/den" strings.
// nlohmann::json keeps object keys sorted and prints doubles in shortest
// round-trip form, so identical inputs render byte-identically.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

#include "bicirc/circulant.hpp"
#include "bicirc/norms.hpp"
#include "bicirc/numeric.hpp"
#include "bicirc/sequences.hpp"
#include "bicirc/spectral.hpp"
#include "bicirc/verify.hpp"

namespace bicirc {

using Json = nlohmann::json;

inline Json complex_pair(ComplexScalar z) { return Json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------
// seq
// ---------------------------------------------------------------------------

inline Json seq_json(const SequenceTable& t) {
    Json arr = Json::array();
    for (const auto& v : t.values) arr.push_back(v.str());
    return arr;
}

inline std::string seq_text(const SequenceTable& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        if (i) os << ",";
        os << t.values[i].str();
    }
    os << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// matrix
// ---------------------------------------------------------------------------

inline Json matrix_json(const RCirculant& c, const DenseMatrix& dense) {
    Json row = Json::array();
    for (const auto& z : c.first_row) row.push_back(complex_pair(z));
    Json rows = Json::array();
    for (std::size_t i = 0; i < dense.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < dense.cols(); ++j) r.push_back(complex_pair(dense(i, j)));
        rows.push_back(std::move(r));
    }
    return Json{{"n", c.n},
                {"r", complex_pair(c.ratio)},
                {"first_row", std::move(row)},
                {"dense", std::move(rows)}};
}

inline std::string matrix_text(const RCirculant& c, const DenseMatrix& dense) {
    std::ostringstream os;
    os << "n = " << c.n << ", r = " << format_complex(c.ratio) << "\n";
    for (std::size_t i = 0; i < dense.rows(); ++i) {
        for (std::size_t j = 0; j < dense.cols(); ++j) {
            os << (j ? "  " : "") << format_complex(dense(i, j));
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// norms / bounds
// ---------------------------------------------------------------------------

inline Json norms_json(const NormReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}});
    }
    return Json{{"frobenius", rep.frobenius_direct},
                {"frobenius_closed_sq", format_rational(rep.frobenius_closed_sq)},
                {"spectral", rep.spectral},
                {"lower", rep.bounds.lower},
                {"upper", rep.bounds.upper},
                {"regime", regime_name(rep.bounds.regime)},
                {"checks", std::move(checks)}};
}

inline std::string norms_text(const NormReport& rep) {
    std::ostringstream os;
    os << "frobenius          " << format_double(rep.frobenius_direct) << "\n"
       << "frobenius_closed^2 " << format_rational(rep.frobenius_closed_sq) << "\n"
       << "spectral           " << format_double(rep.spectral) << "\n"
       << "lower              " << format_double(rep.bounds.lower) << "\n"
       << "upper              " << format_double(rep.bounds.upper) << "\n"
       << "regime             " << regime_name(rep.bounds.regime) << "\n";
    for (const auto& c : rep.checks) {
        os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " slack "
           << format_double(c.slack) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// eig / det
// ---------------------------------------------------------------------------

inline Json spectral_json(const SpectralReport& rep) {
    Json eigs = Json::array();
    for (const auto& v : rep.eigen.values) eigs.push_back(complex_pair(v));
    Json djs = Json::array();
    for (std::size_t j : rep.degenerate_js) djs.push_back(j);
    return Json{{"method", method_name(rep.eigen.method)},
                {"rho", complex_pair(rep.eigen.rho)},
                {"eigenvalues", std::move(eigs)},
                {"det_closed", complex_pair(rep.det_closed_value)},
                {"det_lu", complex_pair(rep.det_lu_value)},
                {"residual", rep.residual},
                {"degenerate_js", std::move(djs)}};
}

inline std::string spectral_text(const SpectralReport& rep) {
    std::ostringstream os;
    os << "method     " << method_name(rep.eigen.method) << "\n"
       << "rho        " << format_complex(rep.eigen.rho) << "\n";
    for (std::size_t j = 0; j < rep.eigen.values.size(); ++j) {
        os << "lambda_" << j << "  " << format_complex(rep.eigen.values[j]) << "\n";
    }
    os << "det_closed " << format_complex(rep.det_closed_value) << "\n"
       << "det_lu     " << format_complex(rep.det_lu_value) << "\n"
       << "residual   " << format_double(rep.residual) << "\n";
    if (!rep.degenerate_js.empty()) {
        os << "degenerate_js";
        for (std::size_t j : rep.degenerate_js) os << " " << j;
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

inline Json verify_json(const VerifyResult& res, std::uint64_t seed) {
    Json ids = Json::array();
    for (const auto& id : res.identities) {
        Json entry{{"name", id.name},
                   {"points", id.points},
                   {"passes", id.passes},
                   {"failures", id.failures},
                   {"skipped", id.skipped}};
        entry["first_failure"] = id.first_failure.empty() ? Json() : Json(id.first_failure);
        entry["skip_reason"] = id.skip_reason.empty() ? Json() : Json(id.skip_reason);
        ids.push_back(std::move(entry));
    }
    return Json{{"seed", seed},
                {"identities", std::move(ids)},
                {"degenerate_points", res.degenerate_points},
                {"all_pass", res.all_pass()}};
}

inline std::string verify_text(const VerifyResult& res, std::uint64_t seed) {
    std::ostringstream os;
    os << "seed " << seed << "\n";
    for (const auto& id : res.identities) {
        os << (id.failures == 0 ? "[ok]   " : "[FAIL] ") << id.name << "  points "
           << id.points << "  passes " << id.passes << "  failures " << id.failures
           << "  skipped " << id.skipped;
        if (!id.skip_reason.empty()) os << "  (skip: " << id.skip_reason << ")";
        os << "\n";
        if (!id.first_failure.empty()) os << "       first failure: " << id.first_failure << "\n";
    }
    os << "degenerate points " << res.degenerate_points << "\n"
       << (res.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace bicirc

#endif  // BICIRC_REPORT_HPP
