#include "xlr/channel.hpp"

#include <string>

#include "xlr/errors.hpp"
#include "xlr/rng.hpp"

namespace xlr {

GilbertTransitions derive_transitions(const GilbertParams& params) {
    if (!(params.plr > 0.0 && params.plr < 1.0))
        throw ValidationError("plr must be in (0,1), got " + std::to_string(params.plr));
    if (params.mean_burst_len < 1.0)
        throw ValidationError("mean burst length must be >= 1, got " + std::to_string(params.mean_burst_len));
    GilbertTransitions t;
    t.p_bad_to_good = 1.0 / params.mean_burst_len;
    t.p_good_to_bad = params.plr / (params.mean_burst_len * (1.0 - params.plr));
    if (t.p_good_to_bad > 1.0)
        throw ValidationError("parameters give p_gb = " + std::to_string(t.p_good_to_bad) +
                              " > 1; lower plr or raise burst length");
    return t;
}

StreamTrace apply_channel(const StreamTrace& trace, const GilbertParams& params, bool compose) {
    const GilbertTransitions t = derive_transitions(params);
    if (!compose)
        for (const PacketRecord& p : trace.packets)
            if (p.lost)
                throw ValidationError("trace already carries losses (packet " + std::to_string(p.global_index) +
                                      "); pass compose to stack channels");

    StreamTrace out = trace;
    SplitMix64 rng(params.rng_seed);
    bool bad = false;  // chain starts in Good
    for (PacketRecord& p : out.packets) {
        bad = bad ? (rng.next_unit() >= t.p_bad_to_good) : (rng.next_unit() < t.p_good_to_bad);
        p.lost = (compose && p.lost) || bad;
    }
    return out;
}

}  // namespace xlr
