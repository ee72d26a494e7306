#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pdptw/errors.hpp"

namespace pdptw {

using NodeId = int;
using Route = std::vector<NodeId>;

inline constexpr NodeId kDepot = 0;

/// A vertex of the problem. q > 0 marks a supplier (pickup), q < 0 a customer (delivery).
struct Node {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;
    int q = 0;
    double e = 0.0;  ///< window open
    double l = 0.0;  ///< window close
    double s = 0.0;  ///< service duration

    bool operator==(const Node&) const = default;
};

struct Couple {
    NodeId pickup = 0;
    NodeId delivery = 0;

    bool operator==(const Couple&) const = default;
};

/// Per-vehicle capacity, cost rate and speed. All vectors have `count` entries.
struct Fleet {
    int count = 1;
    std::vector<int> capacity;
    std::vector<double> unit_cost;
    std::vector<double> speed;

    static Fleet homogeneous(int count, int capacity, double speed = 1.0, double unit_cost = 1.0) {
        Fleet f;
        f.count = count;
        f.capacity.assign(static_cast<std::size_t>(std::max(count, 0)), capacity);
        f.unit_cost.assign(static_cast<std::size_t>(std::max(count, 0)), unit_cost);
        f.speed.assign(static_cast<std::size_t>(std::max(count, 0)), speed);
        return f;
    }

    bool operator==(const Fleet&) const = default;
};

/// Immutable problem data. Node ids are dense, node 0 is the depot.
/// Construction does not validate; see validate_instance().
class Instance {
public:
    Instance() = default;

    Instance(std::vector<Node> nodes, std::vector<Couple> couples, Fleet fleet, std::string name = {})
        : nodes_(std::move(nodes)), couples_(std::move(couples)), fleet_(std::move(fleet)),
          name_(std::move(name)) {
        const auto n = nodes_.size();
        couple_of_.assign(n, -1);
        partner_.assign(n, -1);
        for (std::size_t c = 0; c < couples_.size(); ++c) {
            const auto [p, d] = couples_[c];
            if (in_range(p) && in_range(d)) {
                couple_of_[static_cast<std::size_t>(p)] = static_cast<int>(c);
                couple_of_[static_cast<std::size_t>(d)] = static_cast<int>(c);
                partner_[static_cast<std::size_t>(p)] = d;
                partner_[static_cast<std::size_t>(d)] = p;
            }
        }
        dist_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double dx = nodes_[i].x - nodes_[j].x;
                const double dy = nodes_[i].y - nodes_[j].y;
                dist_[i * n + j] = std::sqrt(dx * dx + dy * dy);
            }
        }
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Couple>& couples() const noexcept { return couples_; }
    const Fleet& fleet() const noexcept { return fleet_; }

    const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    int vehicles() const noexcept { return fleet_.count; }

    /// Time-window close of the depot.
    double horizon() const { return nodes_.empty() ? 0.0 : nodes_.front().l; }

    bool is_pickup(NodeId id) const { return id != kDepot && node(id).q > 0; }
    bool is_delivery(NodeId id) const { return id != kDepot && node(id).q < 0; }

    /// Index into couples(), or -1 for the depot and unpaired nodes.
    int couple_of(NodeId id) const { return couple_of_[static_cast<std::size_t>(id)]; }
    NodeId partner(NodeId id) const { return partner_[static_cast<std::size_t>(id)]; }

    double distance(NodeId i, NodeId j) const {
        return dist_[static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j)];
    }

    double travel_time(int vehicle, NodeId i, NodeId j) const {
        return distance(i, j) / fleet_.speed[static_cast<std::size_t>(vehicle)];
    }

private:
    bool in_range(NodeId id) const { return id >= 0 && static_cast<std::size_t>(id) < nodes_.size(); }

    std::vector<Node> nodes_;
    std::vector<Couple> couples_;
    Fleet fleet_;
    std::string name_;
    std::vector<int> couple_of_;
    std::vector<NodeId> partner_;
    std::vector<double> dist_;
};

/// Euclidean distance between two nodes.
inline double distance(const Instance& inst, NodeId i, NodeId j) { return inst.distance(i, j); }

/// Travel duration of `vehicle` over arc (i, j): distance / speed.
inline double travel_time(const Instance& inst, int vehicle, NodeId i, NodeId j) {
    return inst.travel_time(vehicle, i, j);
}

struct InstanceViolation {
    std::string rule;
    int subject = -1;  ///< node id or couple index, depending on rule
    std::string message;
};

/// Empty iff every Instance invariant holds.
inline std::vector<InstanceViolation> validate_instance(const Instance& inst) {
    std::vector<InstanceViolation> out;
    auto add = [&](std::string rule, int subject, std::string msg) {
        out.push_back({std::move(rule), subject, std::move(msg)});
    };

    const auto& nodes = inst.nodes();
    if (nodes.empty()) {
        add("missing-depot", 0, "instance has no nodes");
        return out;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        const int id = static_cast<int>(i);
        if (n.id != id) add("id-not-dense", id, "node at index " + std::to_string(i) + " carries id " + std::to_string(n.id));
        if (n.e > n.l) add("window-inverted", id, "node " + std::to_string(id) + " has e > l");
        if (n.s < 0) add("negative-service", id, "node " + std::to_string(id) + " has negative service time");
    }
    if (nodes[0].q != 0) add("depot-demand", 0, "depot must have q = 0");

    const int n = static_cast<int>(nodes.size());
    std::vector<int> seen(nodes.size(), 0);
    for (std::size_t c = 0; c < inst.couples().size(); ++c) {
        const auto [p, d] = inst.couples()[c];
        const int ci = static_cast<int>(c);
        if (p < 0 || p >= n || d < 0 || d >= n) {
            add("dangling-couple", ci, "couple " + std::to_string(c) + " references an unknown node");
            continue;
        }
        if (p == d) add("couple-self", ci, "couple " + std::to_string(c) + " pairs a node with itself");
        if (p == kDepot || d == kDepot) add("couple-depot", ci, "couple " + std::to_string(c) + " contains the depot");
        if (nodes[static_cast<std::size_t>(p)].q <= 0)
            add("pickup-sign", ci, "couple " + std::to_string(c) + " pickup has q <= 0");
        if (nodes[static_cast<std::size_t>(p)].q != -nodes[static_cast<std::size_t>(d)].q)
            add("quantity-mismatch", ci, "couple " + std::to_string(c) + " quantities do not balance");
        ++seen[static_cast<std::size_t>(p)];
        if (d != p) ++seen[static_cast<std::size_t>(d)];
    }
    for (int i = 1; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)] == 0) add("unpaired-node", i, "node " + std::to_string(i) + " belongs to no couple");
        if (seen[static_cast<std::size_t>(i)] > 1) add("multiply-paired", i, "node " + std::to_string(i) + " belongs to several couples");
    }

    const Fleet& f = inst.fleet();
    const auto k = static_cast<std::size_t>(std::max(f.count, 0));
    if (f.count < 1) add("fleet-empty", 0, "fleet needs at least one vehicle");
    if (f.capacity.size() != k || f.unit_cost.size() != k || f.speed.size() != k) {
        add("fleet-shape", 0, "fleet vectors must have one entry per vehicle");
    } else {
        for (std::size_t v = 0; v < k; ++v) {
            if (f.capacity[v] <= 0) add("fleet-capacity", static_cast<int>(v), "vehicle capacity must be positive");
            if (!(f.unit_cost[v] > 0)) add("fleet-cost", static_cast<int>(v), "vehicle cost rate must be positive");
            if (!(f.speed[v] > 0)) add("fleet-speed", static_cast<int>(v), "vehicle speed must be positive");
        }
    }
    return out;
}

/// Rebuilds an instance from the listed couples only, renumbering node ids densely
/// in couple order (pickup then delivery). The depot and fleet are kept.
inline Instance restrict_to_couples(const Instance& inst, const std::vector<int>& couple_indices,
                                    std::string name = {}) {
    std::vector<Node> nodes{inst.node(kDepot)};
    std::vector<Couple> couples;
    for (int c : couple_indices) {
        const auto [p, d] = inst.couples().at(static_cast<std::size_t>(c));
        Node pn = inst.node(p);
        Node dn = inst.node(d);
        pn.id = static_cast<NodeId>(nodes.size());
        dn.id = pn.id + 1;
        nodes.push_back(pn);
        nodes.push_back(dn);
        couples.push_back({pn.id, dn.id});
    }
    return Instance(std::move(nodes), std::move(couples), inst.fleet(),
                    name.empty() ? inst.name() : std::move(name));
}

} // namespace pdptw
