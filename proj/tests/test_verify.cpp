#include <catch2/catch_amalgamated.hpp>

#include "bicirc/verify.hpp"

using namespace bicirc;

namespace {

// compact grid: full identity coverage at a fraction of the default cost
VerifyGrid small_grid() {
    VerifyGrid g;
    g.a = {1, 2};
    g.b = {1, 3};
    g.w0 = {0, 2};
    g.w1 = {1};
    g.n = {1, 2, 3, 5};
    for (const char* lit : {"2", "0.5", "-1", "0.75+0.25i", "i"}) {
        g.r.push_back(RatioPoint::from_literal(lit));
    }
    g.seq_n_max = 12;
    g.binet_n_max = 20;
    g.exact_frob_n_max = 5;
    g.random_mathias_pairs = 10;
    return g;
}

std::string first_failures(const VerifyResult& res) {
    std::string out;
    for (const auto& id : res.identities) {
        if (id.failures > 0) out += id.name + " -> " + id.first_failure + "; ";
    }
    return out;
}

}  // namespace

TEST_CASE("small grid passes every identity", "[verify]") {
    const VerifyResult res = run_verify(small_grid(), VerifyOptions{});
    CAPTURE(first_failures(res));
    CHECK(res.all_pass());
    CHECK(res.degenerate_points == 0);

    // every identity slot saw work
    for (const auto& id : res.identities) {
        CAPTURE(id.name);
        CHECK(id.points > 0);
        CHECK(id.failures == 0);
    }
}

TEST_CASE("default grid covers both regimes and enough sandwich points", "[verify]") {
    const VerifyGrid g = VerifyGrid::default_grid(kDefaultSeed);
    CHECK(g.matrix_points() >= 2000);
    bool below = false, at = false, above = false;
    for (const auto& rp : g.r) {
        const double mag = std::abs(rp.value);
        below |= mag < 1.0;
        above |= mag > 1.0;
        at |= std::abs(mag - 1.0) < 1e-12;
    }
    CHECK(below);
    CHECK(at);
    CHECK(above);
    // exact ratios present for the entrywise Frobenius oracle
    bool exact = false;
    for (const auto& rp : g.r) exact |= rp.exact.has_value();
    CHECK(exact);
}

TEST_CASE("grid restricted to n = 1 skips closed-form identities", "[verify]") {
    VerifyGrid g = small_grid();
    g.n = {1};
    const VerifyResult res = run_verify(g, VerifyOptions{});
    CHECK(res.all_pass());

    const IdentitySummary* eig = res.find("eigen_multiset");
    REQUIRE(eig != nullptr);
    CHECK(eig->passes == 0);
    CHECK(eig->skipped == eig->points);
    CHECK(eig->skip_reason == "n >= 2 required");

    const IdentitySummary* det = res.find("det_triple");
    REQUIRE(det != nullptr);
    CHECK(det->skipped == det->points);
    CHECK(det->skip_reason == "n >= 2 required");

    // the rest still run
    const IdentitySummary* sandwich = res.find("spectral_sandwich");
    REQUIRE(sandwich != nullptr);
    CHECK(sandwich->passes == sandwich->points);
}

TEST_CASE("self-test break is caught by the determinant triple", "[verify]") {
    VerifyOptions opt;
    opt.self_test_break = true;
    const VerifyResult res = run_verify(small_grid(), opt);
    CHECK_FALSE(res.all_pass());

    const IdentitySummary* det = res.find("det_triple");
    REQUIRE(det != nullptr);
    CHECK(det->failures > 0);
    CHECK_FALSE(det->first_failure.empty());

    // the break must not leak into unrelated identities
    const IdentitySummary* sums = res.find("sum_squares");
    REQUIRE(sums != nullptr);
    CHECK(sums->failures == 0);
}

TEST_CASE("degenerate ratio is counted and skipped, not failed", "[verify]") {
    VerifyGrid g = small_grid();
    g.a = {1};
    g.b = {1};
    g.w0 = {0};
    g.w1 = {1};
    g.n = {2};
    g.r.clear();
    RatioPoint deg;
    deg.value = {(3.0 - std::sqrt(5.0)) / 2.0, 0.0};
    deg.label = "(3-sqrt5)/2";
    g.r.push_back(deg);

    const VerifyResult res = run_verify(g, VerifyOptions{});
    CHECK(res.all_pass());
    CHECK(res.degenerate_points == 1);
    const IdentitySummary* eig = res.find("eigen_multiset");
    REQUIRE(eig != nullptr);
    CHECK(eig->skipped == 1);
    CHECK(eig->skip_reason == "degenerate denominator");
}

TEST_CASE("verify result is deterministic for a fixed seed", "[verify]") {
    VerifyOptions opt;
    opt.seed = 777;
    const VerifyResult r1 = run_verify(small_grid(), opt);
    const VerifyResult r2 = run_verify(small_grid(), opt);
    REQUIRE(r1.identities.size() == r2.identities.size());
    for (std::size_t i = 0; i < r1.identities.size(); ++i) {
        CHECK(r1.identities[i].points == r2.identities[i].points);
        CHECK(r1.identities[i].passes == r2.identities[i].passes);
        CHECK(r1.identities[i].failures == r2.identities[i].failures);
    }
}

TEST_CASE("empty grid axes are rejected", "[verify]") {
    VerifyGrid g = small_grid();
    g.r.clear();
    CHECK_THROWS_AS(run_verify(g, VerifyOptions{}), std::invalid_argument);
}
