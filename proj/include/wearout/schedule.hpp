#pragma once

// A transmission schedule: blocks of n_i channel uses carrying weight_i ones
// each, decoded independently.  A block pays off its log code size only if
// the device is still alive after the cumulative weight sent so far.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wearout/code_size.hpp"
#include "wearout/prob.hpp"

namespace wearout {

struct kahan_sum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double get() const { return s; }
};

struct BlockPlan {
    int n = 0;
    int weight = 0;      // ones per codeword (h), or weight budget (k) on the
                         // converse side
    double log_m = 0.0;  // bits
    double alive_prob = 0.0;
};

struct Schedule {
    std::vector<BlockPlan> blocks;
    int total_length = 0;
    int total_weight = 0;
    double expected_log_volume = 0.0;  // sum alive_prob * log_m, bits
};

// Expected decodable log volume of a constant-composition block schedule:
// block j survives iff Bin(h_1+...+h_j, gamma) <= threshold.
inline Schedule evaluate_schedule(const std::vector<std::pair<int, int>>& blocks,
                                  const DamageParams& dp, double eta,
                                  const AliveChannel& ch, double third_order = 0.0) {
    Schedule s;
    kahan_sum vol;
    int cum = 0;
    for (const auto& [n, h] : blocks) {
        if (n < 1) throw std::domain_error("evaluate_schedule: block length < 1");
        if (h < 0 || h > n)
            throw std::domain_error("evaluate_schedule: block weight outside [0,n]");
        cum += h;
        BlockPlan b;
        b.n = n;
        b.weight = h;
        b.log_m = log_m_ccc(n, h, eta, ch, third_order);
        b.alive_prob = binom_cdf(dp.threshold, cum, dp.gamma);
        vol.add(b.alive_prob * b.log_m);
        s.total_length += n;
        s.blocks.push_back(b);
    }
    s.total_weight = cum;
    s.expected_log_volume = vol.get();
    return s;
}

// Do lengths and weights both decay front-to-back?  Reported, not required.
inline bool is_block_monotone(const Schedule& s) {
    for (std::size_t i = 1; i < s.blocks.size(); ++i) {
        if (s.blocks[i].n > s.blocks[i - 1].n) return false;
        if (s.blocks[i].weight > s.blocks[i - 1].weight) return false;
    }
    return true;
}

}  // namespace wearout
