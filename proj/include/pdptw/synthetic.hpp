#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"

namespace pdptw {

struct SyntheticOptions {
    int vehicles = 2;
    int capacity = 20;
};

namespace detail {

inline double euclid(double x1, double y1, double x2, double y2) { return std::hypot(x1 - x2, y1 - y2); }

} // namespace detail

/// Small random instance on integer coordinates in [0, 100]^2 with the depot at (50, 50).
/// Every couple can be served alone by one empty vehicle without lateness. Smaller
/// `window_tightness` means narrower windows.
inline Instance generate_synthetic(int n_couples, double window_tightness, std::uint64_t seed,
                                   SyntheticOptions opt = {}) {
    if (n_couples < 1) throw ContractViolation("need at least one couple");
    if (!(window_tightness > 0)) throw ContractViolation("window tightness must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, 100);
    std::uniform_int_distribution<int> demand(1, std::max(1, opt.capacity / 2));
    std::uniform_int_distribution<int> service(0, 5);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    const double scale = 200.0 * window_tightness;

    std::vector<Node> nodes{{0, 50, 50, 0, 0, 0, 0}};
    std::vector<Couple> couples;
    double horizon = 0;
    for (int c = 0; c < n_couples; ++c) {
        Node p;
        Node d;
        do {
            p.x = coord(rng);
            p.y = coord(rng);
            d.x = coord(rng);
            d.y = coord(rng);
        } while (detail::euclid(p.x, p.y, d.x, d.y) < 1.0 || detail::euclid(p.x, p.y, 50, 50) < 1.0 ||
                 detail::euclid(d.x, d.y, 50, 50) < 1.0);
        p.q = demand(rng);
        d.q = -p.q;
        p.s = service(rng);
        d.s = service(rng);

        p.e = std::uniform_int_distribution<int>(0, 100)(rng);
        const double dep_p = std::max(detail::euclid(50, 50, p.x, p.y), p.e) + p.s;
        p.l = std::ceil(dep_p + scale * unit(rng));

        const double arr_d = dep_p + detail::euclid(p.x, p.y, d.x, d.y);
        d.e = std::max(0.0, std::floor(arr_d - std::uniform_int_distribution<int>(0, 60)(rng)));
        const double dep_d = arr_d + d.s;
        d.l = std::ceil(dep_d + scale * unit(rng));

        p.id = static_cast<NodeId>(nodes.size());
        d.id = p.id + 1;
        nodes.push_back(p);
        nodes.push_back(d);
        couples.push_back({p.id, d.id});
        horizon = std::max(horizon, dep_d + detail::euclid(d.x, d.y, 50, 50));
    }
    nodes[0].l = std::ceil(horizon) + 50;
    return Instance(std::move(nodes), std::move(couples), Fleet::homogeneous(opt.vehicles, opt.capacity),
                    "synthetic-" + std::to_string(n_couples) + "-" + std::to_string(seed));
}

/// Stand-in for one of the eight LRC1 files (variant 1..8): 53 couples, 25 vehicles of capacity
/// 200, depot (40, 50), horizon 240, service 10, half of the locations clustered. Variants 1-4
/// use 30-unit windows with 0/25/50/75 % of nodes unconstrained; variants 5-8 widen the windows.
/// Every couple is individually routable without lateness.
inline Instance generate_lrc1_like(int variant, std::uint64_t seed) {
    if (variant < 1 || variant > 8) throw ContractViolation("LRC1 variant must be 1..8");
    constexpr int kCouples = 53;
    constexpr double kHorizon = 240;
    constexpr double kService = 10;
    constexpr double dx = 40;
    constexpr double dy = 50;
    std::mt19937_64 rng(seed * 1000 + static_cast<std::uint64_t>(variant));

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::array<std::pair<double, double>, 8> centers{};
    for (auto& c : centers) c = {10 + 80 * u01(rng), 10 + 80 * u01(rng)};
    std::normal_distribution<double> spread(0.0, 5.0);
    auto location = [&](double& x, double& y) {
        if (u01(rng) < 0.5) {
            const auto& c = centers[std::uniform_int_distribution<std::size_t>(0, centers.size() - 1)(rng)];
            x = std::clamp(std::round(c.first + spread(rng)), 0.0, 100.0);
            y = std::clamp(std::round(c.second + spread(rng)), 0.0, 100.0);
        } else {
            x = std::uniform_int_distribution<int>(0, 100)(rng);
            y = std::uniform_int_distribution<int>(0, 100)(rng);
        }
    };

    static constexpr std::array<double, 8> kRelaxed{0.0, 0.25, 0.5, 0.75, 0.0, 0.0, 0.0, 0.0};
    auto width = [&]() -> double {
        switch (variant) {
        case 5: return 30 + 60 * u01(rng);
        case 6: return 60;
        case 7: return 90;
        case 8: return 120;
        default: return 30;
        }
    };
    auto window = [&](Node& n, double start) {
        if (u01(rng) < kRelaxed[static_cast<std::size_t>(variant - 1)]) {
            n.e = 0;
            n.l = kHorizon;
            return;
        }
        const double w = width();
        n.e = std::max(0.0, std::floor(start - w / 2));
        n.l = std::min(kHorizon, std::ceil(start + kService + w / 2));
    };

    std::vector<Node> nodes{{0, dx, dy, 0, 0, kHorizon, 0}};
    std::vector<Couple> couples;
    static constexpr std::array<int, 4> kDemands{10, 20, 30, 40};
    while (static_cast<int>(couples.size()) < kCouples) {
        Node p;
        Node d;
        location(p.x, p.y);
        location(d.x, d.y);
        const double pd = detail::euclid(p.x, p.y, d.x, d.y);
        const double a_p = detail::euclid(dx, dy, p.x, p.y);
        const double back = detail::euclid(d.x, d.y, dx, dy);
        const double latest_p = kHorizon - (kService + pd + kService + back);
        if (pd < 1.0 || a_p < 1.0 || back < 1.0 || latest_p < a_p) continue;

        const double start_p = a_p + (latest_p - a_p) * u01(rng);
        const double earliest_d = start_p + kService + pd;
        const double latest_d = kHorizon - kService - back;
        const double start_d = earliest_d + (latest_d - earliest_d) * u01(rng) * 0.5;

        p.q = kDemands[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
        d.q = -p.q;
        p.s = d.s = kService;
        window(p, start_p);
        window(d, start_d);
        p.id = static_cast<NodeId>(nodes.size());
        d.id = p.id + 1;
        nodes.push_back(p);
        nodes.push_back(d);
        couples.push_back({p.id, d.id});
    }
    return Instance(std::move(nodes), std::move(couples), Fleet::homogeneous(25, 200, 1.0),
                    "LRC10" + std::to_string(variant));
}

} // namespace pdptw
