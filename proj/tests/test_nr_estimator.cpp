#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "test_support.hpp"
#include "xlr/errors.hpp"
#include "xlr/nr_estimator.hpp"

using namespace xlr;

namespace {

std::vector<PacketRecord> packets_with_sizes(int frame, std::initializer_list<std::uint64_t> sizes) {
    std::vector<PacketRecord> out;
    int index = 1;
    for (std::uint64_t s : sizes) out.push_back({index - 1, frame, index, s, false});
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index_in_frame = static_cast<int>(i) + 1;
    return out;
}

/// IPP trace with chosen per-frame packet sizes, no losses yet.
StreamTrace ipp_trace(int frames, int period, std::initializer_list<std::uint64_t> sizes) {
    StreamTrace trace;
    trace.frames = make_frames(make_structure(StructureKind::IPP, period), frames);
    std::int64_t global = 0;
    for (const FrameMeta& f : trace.frames) {
        int index = 1;
        for (std::uint64_t s : sizes) trace.packets.push_back({global++, f.decode_index, index++, s, false});
    }
    return trace;
}

void lose(StreamTrace& trace, int frame, int index_in_frame) {
    for (PacketRecord& p : trace.packets)
        if (p.frame_decode_index == frame && p.index_in_frame == index_in_frame) p.lost = true;
}

std::map<int, double> estimates_by_frame(const XlrSeries& s) {
    std::map<int, double> out;
    for (const FrameXlr& f : s.per_frame) out[f.decode_index] = f.xlr;
    return out;
}

}  // namespace

TEST_CASE("xi_for_loss is the size suffix over the frame total") {
    const auto packets = packets_with_sizes(0, {100, 200, 300, 400});
    CHECK(xi_for_loss(packets, 1) == 1.0);
    CHECK(xi_for_loss(packets, 4) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(xi_for_loss(packets, 2) == doctest::Approx(0.9).epsilon(1e-15));

    CHECK_THROWS_AS(xi_for_loss({}, 1), ValidationError);
    CHECK_THROWS_AS(xi_for_loss(packets, 0), ValidationError);
    CHECK_THROWS_AS(xi_for_loss(packets, 5), ValidationError);
}

TEST_CASE("xi never grows with the loss position") {
    // A frame's first loss always has the largest xi, so shadowed later
    // losses can never matter in the max.
    SplitMix64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(12));
        std::vector<PacketRecord> packets;
        for (int p = 1; p <= n; ++p)
            packets.push_back({p - 1, 0, p, 1 + rng.next_below(2000), false});
        double prev = 1.0;
        for (int p = 1; p <= n; ++p) {
            const double xi = xi_for_loss(packets, p);
            CHECK(xi <= prev);
            prev = xi;
        }
        CHECK(xi_for_loss(packets, 1) == 1.0);
    }
}

TEST_CASE("effective_losses applies the desync rule") {
    StreamTrace trace = ipp_trace(4, 4, {100, 200, 300, 400});

    SUBCASE("second and third losses of a frame are ineffective") {
        lose(trace, 1, 2);
        lose(trace, 1, 3);
        const auto impacts = effective_losses(trace);
        REQUIRE(impacts.size() == 2);
        CHECK(impacts[0].packet.index_in_frame == 2);
        CHECK(impacts[0].effective);
        CHECK(impacts[0].xi == doctest::Approx(0.9).epsilon(1e-15));
        CHECK(impacts[1].packet.index_in_frame == 3);
        CHECK(!impacts[1].effective);
        CHECK(impacts[1].xi == 0.0);
    }

    SUBCASE("no losses, no impacts") { CHECK(effective_losses(trace).empty()); }

    SUBCASE("first-packet losses kill whole frames") {
        lose(trace, 1, 1);
        lose(trace, 2, 1);
        const auto impacts = effective_losses(trace);
        REQUIRE(impacts.size() == 2);
        for (const LossImpact& impact : impacts) {
            CHECK(impact.effective);
            CHECK(impact.xi == 1.0);
        }
    }
}

TEST_CASE("dependency_closure over IPP windows") {
    const auto frames = make_frames(make_structure(StructureKind::IPP, 4), 8);
    const DependencyClosure closure = dependency_closure(frames);
    CHECK(closure.of(0).empty());
    CHECK(closure.of(3) == std::vector<int>{0, 1, 2});
    CHECK(closure.of(4).empty());             // next window's IDR
    CHECK(closure.of(5) == std::vector<int>{4});  // never crosses the IDR boundary
}

TEST_CASE("dependency_closure for IBBP B frames") {
    // display I B B P -> decode I P B B; closure(B) = {I, P}
    const auto frames = make_frames(make_structure(StructureKind::IBBP, 25), 4);
    const DependencyClosure closure = dependency_closure(frames);
    CHECK(closure.of(2) == std::vector<int>{0, 1});
    CHECK(closure.of(3) == std::vector<int>{0, 1});
    CHECK(closure.of(1) == std::vector<int>{0});
}

TEST_CASE("dependency_closure detects cycles") {
    std::vector<FrameMeta> frames = make_frames(make_structure(StructureKind::IPP, 4), 4);
    frames[1].direct_refs = {2};
    frames[2].direct_refs = {1};
    CHECK_THROWS_AS(dependency_closure(frames), ValidationError);
}

TEST_CASE("estimate_xlr propagates constant xi through the window") {
    StreamTrace trace = ipp_trace(8, 4, {300, 300, 200, 200});
    // xi = (200+200)/1000 = 0.4... choose p=3 -> 0.4; use p such that xi=0.6: sizes suffix from 2: 700/1000
    lose(trace, 1, 2);  // xi = 0.7
    const XlrSeries s = estimate_xlr(trace);
    const auto est = estimates_by_frame(s);
    CHECK(est.at(0) == 0.0);
    CHECK(est.at(1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(est.at(2) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(est.at(3) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(est.at(4) == 0.0);  // next IDR window unaffected
    CHECK(est.at(5) == 0.0);
    CHECK(s.provenance == Provenance::NR);
}

TEST_CASE("estimate_xlr takes the max over own and ancestor losses") {
    StreamTrace trace = ipp_trace(4, 4, {300, 300, 200, 200});
    lose(trace, 1, 4);  // xi = 0.2 in frame 1
    lose(trace, 2, 2);  // xi = 0.7 in frame 2
    const auto est = estimates_by_frame(estimate_xlr(trace));
    CHECK(est.at(1) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(est.at(2) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(est.at(3) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("loss in a non-reference B impairs only that frame") {
    StreamTrace trace;
    trace.frames = make_frames(make_structure(StructureKind::IBBP, 25), 25);
    std::int64_t global = 0;
    for (const FrameMeta& f : trace.frames)
        for (int p = 1; p <= 2; ++p) trace.packets.push_back({global++, f.decode_index, p, 500, false});
    lose(trace, 2, 1);  // decode 2 is the first B_nonref
    const auto est = estimates_by_frame(estimate_xlr(trace));
    for (const auto& [decode, value] : est) CHECK(value == (decode == 2 ? 1.0 : 0.0));
}

TEST_CASE("frames with no packets count as whole-frame losses") {
    StreamTrace trace = ipp_trace(4, 4, {500, 500});
    trace.packets.erase(std::remove_if(trace.packets.begin(), trace.packets.end(),
                                       [](const PacketRecord& p) { return p.frame_decode_index == 1; }),
                        trace.packets.end());
    const auto est = estimates_by_frame(estimate_xlr(trace));
    CHECK(est.at(0) == 0.0);
    CHECK(est.at(1) == 1.0);
    CHECK(est.at(2) == 1.0);
    CHECK(est.at(3) == 1.0);
}

TEST_CASE("estimate is zero exactly on frames with no lost ancestors") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        StreamTrace trace = xlr::testing::random_trace(rng);
        xlr::testing::drop_random_packets(trace, rng, 0.01);
        const DependencyClosure closure = dependency_closure(trace.frames);
        const std::map<int, double> xi = effective_xi_by_frame(trace);
        const auto est = estimates_by_frame(estimate_xlr(trace));
        for (const FrameMeta& f : trace.frames) {
            bool has_lossy_ancestor = xi.count(f.decode_index) > 0;
            for (int a : closure.of(f.decode_index)) has_lossy_ancestor |= xi.count(a) > 0;
            CHECK((est.at(f.decode_index) == 0.0) == !has_lossy_ancestor);
        }
    }
}

TEST_CASE("masking: extra non-first losses never change the estimate") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        StreamTrace trace = xlr::testing::random_trace(rng);
        xlr::testing::drop_random_packets(trace, rng, 0.05);
        const XlrSeries base = estimate_xlr(trace);

        std::map<int, int> first_lost;
        for (const PacketRecord& p : trace.packets)
            if (p.lost) {
                auto [it, inserted] = first_lost.emplace(p.frame_decode_index, p.index_in_frame);
                if (!inserted) it->second = std::min(it->second, p.index_in_frame);
            }

        int flipped = 0;
        for (PacketRecord& p : trace.packets) {
            auto it = first_lost.find(p.frame_decode_index);
            if (p.lost || it == first_lost.end() || p.index_in_frame <= it->second) continue;
            p.lost = true;
            const XlrSeries augmented = estimate_xlr(trace);
            for (std::size_t i = 0; i < base.per_frame.size(); ++i)
                CHECK(augmented.per_frame[i].xlr == base.per_frame[i].xlr);
            p.lost = false;
            if (++flipped >= 12) break;  // the acceptance suite does the exhaustive version
        }
    }
}

TEST_CASE("estimates depend only on which packets are lost, not how they burst") {
    SplitMix64 rng(47);
    StreamTrace via_bursts = xlr::testing::random_trace(rng);
    // Mark a burst pattern: pairs of consecutive packets.
    for (std::size_t i = 0; i + 1 < via_bursts.packets.size(); i += 37) {
        via_bursts.packets[i].lost = true;
        via_bursts.packets[i + 1].lost = true;
    }
    // Same lost set flagged one by one in reverse order on a fresh copy.
    StreamTrace singly = via_bursts;
    for (PacketRecord& p : singly.packets) p.lost = false;
    for (std::size_t i = via_bursts.packets.size(); i-- > 0;)
        if (via_bursts.packets[i].lost) singly.packets[i].lost = true;

    const XlrSeries a = estimate_xlr(via_bursts);
    const XlrSeries b = estimate_xlr(singly);
    REQUIRE(a.per_frame.size() == b.per_frame.size());
    for (std::size_t i = 0; i < a.per_frame.size(); ++i) CHECK(a.per_frame[i].xlr == b.per_frame[i].xlr);
}

TEST_CASE("estimate_xlr propagates validation failures") {
    StreamTrace trace = ipp_trace(4, 4, {100});
    trace.frames[2].direct_refs = {3};
    CHECK_THROWS_AS(estimate_xlr(trace), ValidationError);
}
