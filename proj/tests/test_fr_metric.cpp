#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "xlr/errors.hpp"
#include "xlr/fr_metric.hpp"

using namespace xlr;
using xlr::testing::random_plane;

namespace {

FramePlane plane_from(std::initializer_list<std::uint8_t> values, int width, int height) {
    FramePlane p(height, width);
    int i = 0;
    for (std::uint8_t v : values) p.data()[i++] = v;
    return p;
}

}  // namespace

TEST_CASE("xlr_frame exact mode") {
    const FramePlane same = FramePlane::Constant(4, 4, 50);
    CHECK(xlr_frame(same, same) == 0.0);

    const FramePlane other = FramePlane::Constant(4, 4, 51);
    CHECK(xlr_frame(same, other) == 1.0);

    const FramePlane o = plane_from({10, 10, 10, 10}, 2, 2);
    const FramePlane d = plane_from({10, 10, 200, 200}, 2, 2);
    CHECK(xlr_frame(o, d) == 0.5);
}

TEST_CASE("xlr_frame threshold mode ignores sub-Q differences") {
    const FramePlane o = plane_from({10, 10, 10, 10}, 2, 2);
    const FramePlane d = plane_from({10, 20, 200, 200}, 2, 2);
    FrComparisonConfig config{FrMode::THRESHOLD, 16};
    CHECK(xlr_frame(o, d, config) == 0.5);  // |10-20| = 10 < 16 not counted
    config.threshold_q = 10;
    CHECK(xlr_frame(o, d, config) == 0.75);
}

TEST_CASE("xlr_frame error paths") {
    const FramePlane a = FramePlane::Constant(4, 4, 0);
    const FramePlane b = FramePlane::Constant(4, 8, 0);
    CHECK_THROWS_WITH_AS(xlr_frame(a, b), doctest::Contains("4x4 vs 8x4"), ValidationError);
    CHECK_THROWS_AS(xlr_frame(a, a, FrComparisonConfig{FrMode::THRESHOLD, 0}), ValidationError);
    CHECK_THROWS_AS(xlr_frame(a, a, FrComparisonConfig{FrMode::THRESHOLD, 256}), ValidationError);
    CHECK_NOTHROW(xlr_frame(a, a, FrComparisonConfig{FrMode::EXACT, 999}));  // EXACT ignores q
}

TEST_CASE("xlr_frame properties") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int w = 2 + static_cast<int>(rng.next_below(30));
        const int h = 2 + static_cast<int>(rng.next_below(30));
        const FramePlane a = random_plane(rng, w, h);
        FramePlane b = a;
        for (int k = 0; k < w; ++k)
            b(static_cast<Eigen::Index>(rng.next_below(h)), static_cast<Eigen::Index>(rng.next_below(w))) =
                static_cast<std::uint8_t>(rng.next_below(256));

        // symmetry, both modes
        CHECK(xlr_frame(a, b) == xlr_frame(b, a));
        const FrComparisonConfig q16{FrMode::THRESHOLD, 16};
        CHECK(xlr_frame(a, b, q16) == xlr_frame(b, a, q16));

        // EXACT equals THRESHOLD at Q=1
        CHECK(xlr_frame(a, b) == xlr_frame(a, b, FrComparisonConfig{FrMode::THRESHOLD, 1}));

        // impaired fraction never grows with Q
        double prev = 1.1;
        for (int q : {1, 4, 16, 64, 255}) {
            const double v = xlr_frame(a, b, FrComparisonConfig{FrMode::THRESHOLD, q});
            CHECK(v <= prev);
            prev = v;
        }

        // exact integer counting against the naive double loop
        CHECK(xlr_frame(a, b) ==
              static_cast<double>(xlr::testing::naive_diff_count(a, b)) / static_cast<double>(a.size()));
    }
}

TEST_CASE("psnr_frame") {
    const FramePlane zeros = FramePlane::Constant(8, 8, 0);
    CHECK(std::isinf(psnr_frame(zeros, zeros)));

    const FramePlane full = FramePlane::Constant(8, 8, 255);
    CHECK(psnr_frame(zeros, full) == doctest::Approx(0.0).epsilon(1e-12));

    const FramePlane sixteen = FramePlane::Constant(8, 8, 16);
    CHECK(psnr_frame(zeros, sixteen) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 256.0)).epsilon(1e-12));

    const FramePlane wide = FramePlane::Constant(8, 4, 0);
    CHECK_THROWS_AS(psnr_frame(zeros, wide), ValidationError);
}

TEST_CASE("pooling operators") {
    CHECK(pool_mxlr({0, 0, 0}) == 0.0);
    CHECK(pool_mxlr({1}) == 1.0);
    CHECK(pool_mxlr({0, 0.25, 1.0}) == doctest::Approx(0.4166666666666667).epsilon(1e-12));

    CHECK(pool_msxlr({0, 0, 0}) == 0.0);
    CHECK(pool_msxlr({1, 1}) == 1.0);
    CHECK(pool_msxlr({0, 0.25, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(pool_mxlr({}), ValidationError);
    CHECK_THROWS_AS(pool_msxlr({}), ValidationError);
    CHECK_THROWS_AS(pool_msxlr({0.5, -0.1}), ValidationError);
}

TEST_CASE("msxlr dominates mxlr on [0,1] series") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> series(1 + rng.next_below(50));
        for (double& v : series) v = rng.next_unit();
        CHECK(pool_msxlr(series) >= pool_mxlr(series));
    }
}

TEST_CASE("xlr_sequence") {
    std::vector<FramePlane> orig(10, FramePlane::Constant(6, 6, 80));
    std::vector<FramePlane> dist = orig;

    SUBCASE("identical sequences are all zero") {
        const XlrSeries s = xlr_sequence(orig, dist);
        CHECK(s.provenance == Provenance::FR);
        CHECK(s.mxlr == 0.0);
        CHECK(s.msxlr == 0.0);
        for (const FrameXlr& f : s.per_frame) CHECK(f.xlr == 0.0);
    }

    SUBCASE("one fully replaced frame pools to 0.1") {
        dist[5] = FramePlane::Constant(6, 6, 81);
        const XlrSeries s = xlr_sequence(orig, dist);
        for (int i = 0; i < 10; ++i) CHECK(s.per_frame[static_cast<std::size_t>(i)].xlr == (i == 5 ? 1.0 : 0.0));
        CHECK(s.mxlr == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(s.msxlr == doctest::Approx(0.1).epsilon(1e-12));
    }

    SUBCASE("count mismatch") {
        dist.pop_back();
        CHECK_THROWS_AS(xlr_sequence(orig, dist), ValidationError);
    }

    SUBCASE("random pairs keep msxlr >= mxlr") {
        SplitMix64 rng(3);
        std::vector<FramePlane> a, b;
        for (int i = 0; i < 8; ++i) {
            a.push_back(random_plane(rng, 12, 9));
            b.push_back(random_plane(rng, 12, 9));
        }
        const XlrSeries s = xlr_sequence(a, b);
        CHECK(s.msxlr >= s.mxlr);
        for (const FrameXlr& f : s.per_frame) {
            CHECK(f.xlr >= 0.0);
            CHECK(f.xlr <= 1.0);
        }
    }
}
