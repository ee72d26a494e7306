#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"

namespace pdptw {

namespace detail {

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return std::to_string(v);
    return std::string(buf, end);
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

template <typename T>
bool parse_field(const std::string& tok, T& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if constexpr (std::is_floating_point_v<T>) {
        if (first != last && *first == '+') ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace detail

/// Reads the Li & Lim PDPTW text layout:
///   K Q speed
///   id x y q e l s pickup_sibling delivery_sibling
///   ...
/// Pickup rows carry pickup_sibling = 0, delivery rows carry delivery_sibling = 0.
inline Instance parse_lilim(std::istream& in, std::string name = {}) {
    std::string line;
    std::size_t lineno = 0;

    auto next_content_line = [&](std::vector<std::string>& toks) {
        while (std::getline(in, line)) {
            ++lineno;
            toks = detail::split_ws(line);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_content_line(toks)) throw ParseError(1, "empty input, expected fleet header \"K Q speed\"");
    if (toks.size() != 3) throw ParseError(lineno, "fleet header needs 3 fields, got " + std::to_string(toks.size()));
    int k = 0;
    int cap = 0;
    double speed = 0;
    if (!detail::parse_field(toks[0], k) || !detail::parse_field(toks[1], cap) || !detail::parse_field(toks[2], speed))
        throw ParseError(lineno, "fleet header is not numeric");
    if (k < 1 || cap <= 0 || !(speed > 0)) throw ParseError(lineno, "fleet header values must be positive");

    struct Row {
        Node node;
        NodeId pickup_sibling;
        NodeId delivery_sibling;
        std::size_t line;
    };
    std::map<NodeId, Row> rows;
    while (next_content_line(toks)) {
        if (toks.size() != 9) throw ParseError(lineno, "node row needs 9 fields, got " + std::to_string(toks.size()));
        Row r{};
        r.line = lineno;
        if (!detail::parse_field(toks[0], r.node.id) || !detail::parse_field(toks[1], r.node.x) ||
            !detail::parse_field(toks[2], r.node.y) || !detail::parse_field(toks[3], r.node.q) ||
            !detail::parse_field(toks[4], r.node.e) || !detail::parse_field(toks[5], r.node.l) ||
            !detail::parse_field(toks[6], r.node.s) || !detail::parse_field(toks[7], r.pickup_sibling) ||
            !detail::parse_field(toks[8], r.delivery_sibling))
            throw ParseError(lineno, "malformed node row");
        if (r.node.id < 0) throw ParseError(lineno, "negative node id");
        if (!rows.emplace(r.node.id, r).second)
            throw ParseError(lineno, "duplicate node id " + std::to_string(r.node.id));
    }
    if (rows.empty()) throw ParseError(lineno + 1, "no node rows");

    std::vector<Node> nodes;
    nodes.reserve(rows.size());
    for (const auto& [id, r] : rows) {
        if (id != static_cast<NodeId>(nodes.size()))
            throw ParseError(r.line, "node ids are not contiguous from 0 (missing " + std::to_string(nodes.size()) + ")");
        nodes.push_back(r.node);
    }

    std::vector<Couple> couples;
    for (const auto& [id, r] : rows) {
        if (id == kDepot) {
            if (r.node.q != 0) throw ParseError(r.line, "depot row must have zero demand");
            continue;
        }
        const bool is_pick = r.pickup_sibling == 0 && r.delivery_sibling != 0;
        const bool is_drop = r.pickup_sibling != 0 && r.delivery_sibling == 0;
        if (!is_pick && !is_drop) throw ParseError(r.line, "node " + std::to_string(id) + " must have exactly one sibling");
        const NodeId other = is_pick ? r.delivery_sibling : r.pickup_sibling;
        auto it = rows.find(other);
        if (it == rows.end() || other == kDepot)
            throw ParseError(r.line, "dangling sibling reference " + std::to_string(other));
        const Row& o = it->second;
        const NodeId back = is_pick ? o.pickup_sibling : o.delivery_sibling;
        const NodeId other_fwd = is_pick ? o.delivery_sibling : o.pickup_sibling;
        if (back != id || other_fwd != 0)
            throw ParseError(r.line, "sibling " + std::to_string(other) + " does not point back to " + std::to_string(id));
        if (r.node.q != -o.node.q)
            throw ParseError(r.line, "pickup/delivery quantities do not match for node " + std::to_string(id));
        if (is_pick) {
            if (r.node.q <= 0) throw ParseError(r.line, "pickup row " + std::to_string(id) + " has non-positive demand");
            couples.push_back({id, other});
        }
    }

    Instance inst(std::move(nodes), std::move(couples), Fleet::homogeneous(k, cap, speed), std::move(name));
    const auto violations = validate_instance(inst);
    if (!violations.empty()) {
        const auto& v = violations.front();
        std::size_t at = 1;
        if (auto it = rows.find(v.subject); it != rows.end()) at = it->second.line;
        throw ParseError(at, v.message);
    }
    return inst;
}

inline Instance parse_lilim(const std::string& text, std::string name = {}) {
    std::istringstream is(text);
    return parse_lilim(is, std::move(name));
}

/// Writes the Li & Lim layout back. Only homogeneous fleets are representable.
inline std::string serialize_lilim(const Instance& inst) {
    const Fleet& f = inst.fleet();
    std::ostringstream os;
    os << f.count << '\t' << f.capacity.at(0) << '\t' << detail::format_number(f.speed.at(0)) << '\n';
    for (const Node& n : inst.nodes()) {
        NodeId ps = 0;
        NodeId ds = 0;
        if (n.id != kDepot && inst.partner(n.id) >= 0) {
            if (n.q > 0) ds = inst.partner(n.id);
            else ps = inst.partner(n.id);
        }
        os << n.id << '\t' << detail::format_number(n.x) << '\t' << detail::format_number(n.y) << '\t' << n.q << '\t'
           << detail::format_number(n.e) << '\t' << detail::format_number(n.l) << '\t'
           << detail::format_number(n.s) << '\t' << ps << '\t' << ds << '\n';
    }
    return os.str();
}

} // namespace pdptw
