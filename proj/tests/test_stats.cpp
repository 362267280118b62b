#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "xlr/errors.hpp"
#include "xlr/fr_metric.hpp"
#include "xlr/stats.hpp"

using namespace xlr;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("fit_cubic recovers planted polynomials") {
    Eigen::VectorXd x(9);
    for (int i = 0; i < 9; ++i) x[i] = -2.0 + 0.5 * i;

    SUBCASE("y = 1 + 2x - x^3") {
        Eigen::VectorXd y = x.unaryExpr([](double v) { return 1.0 + 2.0 * v - v * v * v; });
        const CubicFit fit = fit_cubic(x, y);
        CHECK(fit.converged);
        CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(fit.coefficients[2] == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(fit.coefficients[3] == doctest::Approx(-1.0).epsilon(1e-6));
        CHECK(fit.residual_rmse == doctest::Approx(0.0).epsilon(1e-8));
    }

    SUBCASE("constant data") {
        Eigen::VectorXd y = Eigen::VectorXd::Constant(9, 3.5);
        const CubicFit fit = fit_cubic(x, y);
        CHECK(fit.coefficients[0] == doctest::Approx(3.5).epsilon(1e-6));
        for (int k = 1; k < 4; ++k) CHECK(fit.coefficients[k] == doctest::Approx(0.0).epsilon(1e-6));
    }

    SUBCASE("linear data y = x") {
        const CubicFit fit = fit_cubic(x, x);
        CHECK(fit.coefficients[0] == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(fit.coefficients[1] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(fit.coefficients[2] == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(fit.coefficients[3] == doctest::Approx(0.0).epsilon(1e-6));
    }

    SUBCASE("random planted cubics") {
        SplitMix64 rng(101);
        for (int trial = 0; trial < 50; ++trial) {
            const double c0 = rng.next_unit() * 4 - 2, c1 = rng.next_unit() * 4 - 2;
            const double c2 = rng.next_unit() * 2 - 1, c3 = rng.next_unit() * 2 - 1;
            Eigen::VectorXd grid(12);
            for (int i = 0; i < 12; ++i) grid[i] = rng.next_unit() * 3.0 - 1.5;
            if ((grid.array() == grid[0]).all()) continue;
            Eigen::VectorXd y =
                grid.unaryExpr([&](double v) { return c0 + c1 * v + c2 * v * v + c3 * v * v * v; });
            const CubicFit fit = fit_cubic(grid, y);
            CHECK(fit.coefficients[0] == doctest::Approx(c0).epsilon(1e-6));
            CHECK(fit.coefficients[1] == doctest::Approx(c1).epsilon(1e-6));
            CHECK(fit.coefficients[2] == doctest::Approx(c2).epsilon(1e-6));
            CHECK(fit.coefficients[3] == doctest::Approx(c3).epsilon(1e-6));
        }
    }
}

TEST_CASE("fit_cubic error paths") {
    CHECK_THROWS_AS(fit_cubic(vec({1, 2, 3}), vec({1, 2, 3})), ValidationError);  // too short
    CHECK_THROWS_AS(fit_cubic(vec({1, 2, 3, 4}), vec({1, 2, 3})), ValidationError);
    CHECK_THROWS_AS(fit_cubic(vec({2, 2, 2, 2}), vec({1, 2, 3, 4})), ValidationError);
}

TEST_CASE("pcc hand-computed and invariance") {
    CHECK(pcc(vec({1, 2, 3, 4}), vec({1, 2, 3, 4})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pcc(vec({1, 2, 3}), vec({-2 * 1 + 7, -2 * 2 + 7, -2 * 3 + 7})) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pcc(vec({1, 2, 3, 4}), vec({1, 2, 3, 5})) == doctest::Approx(6.5 / std::sqrt(43.75)).epsilon(1e-12));
    CHECK(pcc(vec({1, 2, 3, 4}), vec({1, 2, 3, 5})) == doctest::Approx(0.9827076298239908).epsilon(1e-9));

    CHECK_THROWS_AS(pcc(vec({1, 1, 1}), vec({1, 2, 3})), ValidationError);
    CHECK_THROWS_AS(pcc(vec({1, 2}), vec({1, 2, 3})), ValidationError);

    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd a(10), b(10);
        for (int i = 0; i < 10; ++i) {
            a[i] = rng.next_unit();
            b[i] = rng.next_unit();
        }
        const double base = pcc(a, b);
        // positive affine transforms leave pcc untouched
        CHECK(pcc((3.0 * a).eval(), b) == doctest::Approx(base).epsilon(1e-12));
        CHECK(pcc(a, (b.array() * 0.25 + 11.0).matrix().eval()) == doctest::Approx(base).epsilon(1e-12));
        // consistent permutation leaves it untouched
        Eigen::VectorXd pa(10), pb(10);
        std::vector<int> perm(10);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), std::mt19937(static_cast<unsigned>(trial)));
        for (int i = 0; i < 10; ++i) {
            pa[i] = a[perm[static_cast<std::size_t>(i)]];
            pb[i] = b[perm[static_cast<std::size_t>(i)]];
        }
        CHECK(pcc(pa, pb) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("srocc ranks with average ties") {
    CHECK(srocc(vec({1, 2, 2, 4}), vec({10, 20, 30, 40})) == doctest::Approx(4.5 / std::sqrt(22.5)).epsilon(1e-12));
    CHECK(srocc(vec({1, 2, 2, 4}), vec({10, 20, 30, 40})) == doctest::Approx(0.9486832980505138).epsilon(1e-9));
    CHECK(srocc(vec({1, 2, 3, 4}), vec({4, 3, 2, 1})) == doctest::Approx(-1.0).epsilon(1e-12));

    // invariant under any strictly increasing transform
    SplitMix64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd a(12), b(12);
        for (int i = 0; i < 12; ++i) {
            a[i] = rng.next_unit() * 10;
            b[i] = rng.next_unit() * 10;
        }
        const double base = srocc(a, b);
        const Eigen::VectorXd cubed = a.unaryExpr([](double v) { return v * v * v + 2 * v; });
        CHECK(srocc(cubed, b) == doctest::Approx(base).epsilon(1e-12));
        const Eigen::VectorXd exped = b.unaryExpr([](double v) { return std::exp(0.3 * v); });
        CHECK(srocc(a, exped) == doctest::Approx(base).epsilon(1e-12));
        CHECK(srocc(a, a) == doctest::Approx(1.0).epsilon(1e-12));

        Eigen::VectorXd pa(12), pb(12);
        std::vector<int> perm(12);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), std::mt19937(static_cast<unsigned>(trial + 100)));
        for (int i = 0; i < 12; ++i) {
            pa[i] = a[perm[static_cast<std::size_t>(i)]];
            pb[i] = b[perm[static_cast<std::size_t>(i)]];
        }
        CHECK(srocc(pa, pb) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("rmse and mae hand values") {
    CHECK(rmse(vec({1, 2, 3}), vec({1, 2, 3})) == 0.0);
    CHECK(rmse(vec({0, 0}), vec({3, 4})) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
    CHECK(rmse(vec({1}), vec({4})) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK(mae(vec({1, 2}), vec({1, 2})) == 0.0);
    CHECK(mae(vec({0, 0}), vec({3, -3})) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mae(vec({1, 2, 3}), vec({2, 4, 3})) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(rmse(vec({1}), vec({1, 2})), ValidationError);
    CHECK_THROWS_AS(mae(vec({1}), vec({1, 2})), ValidationError);
}

TEST_CASE("evaluate_pair") {
    std::vector<FrameXlr> frames;
    SplitMix64 rng(8);
    for (int i = 0; i < 40; ++i) frames.push_back({i, 0.9 * rng.next_unit()});
    const XlrSeries real = make_series(frames, Provenance::ORACLE);

    SUBCASE("identical series") {
        const PairReport r = evaluate_pair(real, real);
        CHECK(r.mae == 0.0);
        CHECK(r.pcc == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.srocc == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.real_mxlr == r.est_mxlr);
    }

    SUBCASE("constant shift: pcc 1, mae = shift") {
        std::vector<FrameXlr> shifted = frames;
        for (FrameXlr& f : shifted) f.xlr += 0.05;
        const PairReport r = evaluate_pair(real, make_series(shifted, Provenance::NR));
        CHECK(r.pcc == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.srocc == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.mae == doctest::Approx(0.05).epsilon(1e-12));
    }

    SUBCASE("shape and ordering mismatches") {
        std::vector<FrameXlr> shorter(frames.begin(), frames.end() - 1);
        CHECK_THROWS_AS(evaluate_pair(real, make_series(shorter, Provenance::NR)), ValidationError);
        std::vector<FrameXlr> reordered = frames;
        std::swap(reordered[0].decode_index, reordered[1].decode_index);
        CHECK_THROWS_AS(evaluate_pair(real, make_series(reordered, Provenance::NR)), ValidationError);
    }
}

TEST_CASE("report formatting") {
    PairReport r;
    r.mae = 0.0125;
    r.pcc = 0.988;
    r.srocc = 0.999;
    r.real_mxlr = 0.092;
    r.est_mxlr = 0.110;
    r.real_msxlr = 0.125;
    r.est_msxlr = 0.137;
    const std::string row = format_report_csv_row("seeking", "ipp", 0.001, r);
    CHECK(row == "seeking,ipp,0.001,0.092000,0.110000,0.125000,0.137000,0.012500,0.988000,0.999000");
    CHECK(report_csv_header().substr(0, 9) == "sequence,");
    CHECK(format_report_text(r).find("PCC") != std::string::npos);
}
