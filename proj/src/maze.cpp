// maze.cpp — star-maze construction, naming, oracle queries, JSON round trip.
#include "qwmaze/maze.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace qwmaze {

namespace {

// Sort key for neighbor lists: terminals first, then centers by star, then
// external vertices by (star, label). Depends only on public names.
struct NameKey {
    int cls;
    int a;
    int b;

    friend bool operator<(const NameKey& x, const NameKey& y) {
        return std::tie(x.cls, x.a, x.b) < std::tie(y.cls, y.a, y.b);
    }
};

NameKey key_of(const std::string& name) {
    if (name == "S") return {0, 0, 0};
    if (name == "E") return {0, 1, 0};
    if (!name.empty() && name[0] == 'A') {
        return {1, std::stoi(name.substr(1)), 0};
    }
    auto colon = name.find(':');
    return {2, std::stoi(name.substr(1, colon - 1)),
            std::stoi(name.substr(colon + 1))};
}

}  // namespace

Maze Maze::build(Topology topology, int stars, int spokes, std::uint64_t seed) {
    if (spokes < 3) {
        throw std::invalid_argument("maze: need at least 3 spokes per star, got " +
                                    std::to_string(spokes));
    }
    const int min_stars = topology == Topology::chain ? 1 : 2;
    if (stars < min_stars) {
        throw std::invalid_argument("maze: need at least " + std::to_string(min_stars) +
                                    " stars for this topology, got " + std::to_string(stars));
    }
    Maze m;
    m.topology_ = topology;
    m.stars_ = stars;
    m.spokes_ = spokes;
    m.seed_ = seed;
    m.label_maps_.resize(stars);
    for (int j0 = 0; j0 < stars; ++j0) {
        std::vector<int> labels(spokes - 1);
        for (int i = 0; i < spokes - 1; ++i) labels[i] = i + 1;
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(j0));
        rng.shuffle(labels);
        m.label_maps_[j0] = std::move(labels);
    }
    m.label_inverse_.assign(stars, std::vector<int>(spokes, 0));
    for (int j0 = 0; j0 < stars; ++j0) {
        for (int k = 1; k < spokes; ++k) {
            m.label_inverse_[j0][m.label_maps_[j0][k - 1]] = k;
        }
    }
    return m;
}

int Maze::external_label(int star1, int internal_spoke) const {
    return label_maps_[star1 - 1][internal_spoke - 1];
}

int Maze::internal_spoke(int star1, int label) const {
    if (label < 1 || label >= spokes_) {
        throw std::out_of_range("maze: label out of range");
    }
    return label_inverse_[star1 - 1][label];
}

int Maze::edge_index(const DirectedEdge& e) const {
    const bool outgoing = e.tail.kind == Vertex::Kind::center;
    const Vertex& center = outgoing ? e.tail : e.head;
    const Vertex& external = outgoing ? e.head : e.tail;
    if (center.kind != Vertex::Kind::center || external.kind == Vertex::Kind::center) {
        throw std::invalid_argument("maze: edge must join a hub and an external vertex");
    }
    const int j = center.star;
    if (j < 1 || j > stars_) throw std::invalid_argument("maze: star index out of range");

    int slot = -1;
    if (external.kind == Vertex::Kind::spoke) {
        if (external.star != j || external.index < 2 || external.index >= spokes_) {
            throw std::invalid_argument("maze: spoke not adjacent to this hub");
        }
        slot = external.index;
    } else {
        const int k = external.index;
        if (k < junction_min() || k > junction_max()) {
            throw std::invalid_argument("maze: junction index out of range");
        }
        // Junction k joins star k (slot 1) and star k+1 (slot 0); on a ring,
        // junction M joins star M and star 1.
        const int upper = topology_ == Topology::ring ? k % stars_ + 1 : k + 1;
        if (j == k) {
            slot = 1;
        } else if (j == upper) {
            slot = 0;
        } else {
            throw std::invalid_argument("maze: junction not adjacent to this hub");
        }
    }
    return outgoing ? out_state(j, slot) : in_state(j, slot);
}

DirectedEdge Maze::index_edge(int index) const {
    if (index < 0 || index >= state_count()) {
        throw std::out_of_range("maze: state index out of range");
    }
    const int d = index & 1;
    const int j0 = index / 2 / spokes_;
    const int s = index / 2 % spokes_;
    const Vertex center = Vertex::center(j0 + 1);
    Vertex external;
    if (s >= 2) {
        external = Vertex::spoke(j0 + 1, s);
    } else if (s == 1) {
        external = Vertex::junction(j0 + 1);
    } else {
        external = Vertex::junction(j0 == 0 ? (topology_ == Topology::ring ? stars_ : 0) : j0);
    }
    return d == 0 ? DirectedEdge{center, external} : DirectedEdge{external, center};
}

std::string Maze::vertex_name(const Vertex& v) const {
    switch (v.kind) {
        case Vertex::Kind::center:
            return "A" + std::to_string(v.star);
        case Vertex::Kind::spoke:
            return "B" + std::to_string(v.star) + ":" +
                   std::to_string(external_label(v.star, v.index));
        case Vertex::Kind::junction:
            if (topology_ == Topology::chain) {
                if (v.index == 0) return "S";
                if (v.index == stars_) return "E";
            }
            // Junction k is internal spoke 1 of star k.
            return "B" + std::to_string(v.index) + ":" +
                   std::to_string(external_label(v.index, 1));
    }
    throw std::logic_error("maze: bad vertex kind");
}

Vertex Maze::parse_name(const std::string& name) const {
    const auto bad = [&] { return std::out_of_range("maze: unknown vertex name '" + name + "'"); };
    if (name == "S") {
        if (topology_ != Topology::chain) throw bad();
        return Vertex::junction(0);
    }
    if (name == "E") {
        if (topology_ != Topology::chain) throw bad();
        return Vertex::junction(stars_);
    }
    if (name.size() < 2) throw bad();
    if (name[0] == 'A') {
        int star = 0;
        auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), star);
        if (ec != std::errc{} || p != name.data() + name.size()) throw bad();
        if (star < 1 || star > stars_) throw bad();
        return Vertex::center(star);
    }
    if (name[0] == 'B') {
        const auto colon = name.find(':');
        if (colon == std::string::npos) throw bad();
        int star = 0, label = 0;
        auto [p1, e1] = std::from_chars(name.data() + 1, name.data() + colon, star);
        auto [p2, e2] = std::from_chars(name.data() + colon + 1, name.data() + name.size(), label);
        if (e1 != std::errc{} || e2 != std::errc{} || p1 != name.data() + colon ||
            p2 != name.data() + name.size()) {
            throw bad();
        }
        if (star < 1 || star > stars_ || label < 1 || label >= spokes_) throw bad();
        const int internal = internal_spoke(star, label);
        if (internal == 1) {
            // The connection spoke; on a chain, star M's spoke 1 is named "E".
            if (topology_ == Topology::chain && star == stars_) throw bad();
            return Vertex::junction(star);
        }
        return Vertex::spoke(star, internal);
    }
    throw bad();
}

NeighborQuery Maze::neighbors(const std::string& name) const {
    const Vertex v = parse_name(name);
    NeighborQuery q;
    switch (v.kind) {
        case Vertex::Kind::center: {
            const int j = v.star;
            // Left junction: j-1 on a chain, wrapping to M for star 1 on a ring.
            const int left = topology_ == Topology::ring ? (j + stars_ - 2) % stars_ + 1 : j - 1;
            q.neighbors.push_back(vertex_name(Vertex::junction(left)));
            q.neighbors.push_back(vertex_name(Vertex::junction(j)));
            for (int k = 2; k < spokes_; ++k) {
                q.neighbors.push_back(vertex_name(Vertex::spoke(j, k)));
            }
            break;
        }
        case Vertex::Kind::spoke:
            q.neighbors.push_back(vertex_name(Vertex::center(v.star)));
            break;
        case Vertex::Kind::junction: {
            const int k = v.index;
            if (topology_ == Topology::chain && k == 0) {
                q.neighbors.push_back(vertex_name(Vertex::center(1)));
                q.is_start = true;
            } else if (topology_ == Topology::chain && k == stars_) {
                q.neighbors.push_back(vertex_name(Vertex::center(stars_)));
                q.is_end = true;
            } else {
                const int upper = topology_ == Topology::ring ? k % stars_ + 1 : k + 1;
                q.neighbors.push_back(vertex_name(Vertex::center(k)));
                q.neighbors.push_back(vertex_name(Vertex::center(upper)));
            }
            break;
        }
    }
    std::sort(q.neighbors.begin(), q.neighbors.end(),
              [](const std::string& a, const std::string& b) { return key_of(a) < key_of(b); });
    return q;
}

std::vector<std::string> Maze::reveal_path() const {
    std::vector<std::string> path;
    if (topology_ == Topology::chain) {
        path.push_back("S");
        for (int k = 1; k < stars_; ++k) path.push_back(vertex_name(Vertex::junction(k)));
        path.push_back("E");
    } else {
        for (int k = 1; k <= stars_; ++k) path.push_back(vertex_name(Vertex::junction(k)));
    }
    return path;
}

std::string Maze::to_json() const {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["topology"] = topology_ == Topology::chain ? "chain" : "ring";
    doc["M"] = stars_;
    doc["N"] = spokes_;
    doc["seed"] = seed_;
    doc["label_maps"] = label_maps_;
    return doc.dump() + "\n";
}

Maze Maze::from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.at("version").get<int>() != 1) {
        throw std::invalid_argument("maze: unsupported document version");
    }
    const std::string topo = doc.at("topology").get<std::string>();
    if (topo != "chain" && topo != "ring") {
        throw std::invalid_argument("maze: unknown topology '" + topo + "'");
    }
    Maze m = build(topo == "chain" ? Topology::chain : Topology::ring,
                   doc.at("M").get<int>(), doc.at("N").get<int>(),
                   doc.at("seed").get<std::uint64_t>());
    // Stored label maps are authoritative; validate they are bijections.
    auto maps = doc.at("label_maps").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(maps.size()) != m.stars_) {
        throw std::invalid_argument("maze: label_maps size mismatch");
    }
    for (int j0 = 0; j0 < m.stars_; ++j0) {
        if (static_cast<int>(maps[j0].size()) != m.spokes_ - 1) {
            throw std::invalid_argument("maze: label map arity mismatch");
        }
        std::vector<bool> seen(m.spokes_, false);
        for (int label : maps[j0]) {
            if (label < 1 || label >= m.spokes_ || seen[label]) {
                throw std::invalid_argument("maze: label map is not a bijection");
            }
            seen[label] = true;
        }
    }
    m.label_maps_ = std::move(maps);
    m.label_inverse_.assign(m.stars_, std::vector<int>(m.spokes_, 0));
    for (int j0 = 0; j0 < m.stars_; ++j0) {
        for (int k = 1; k < m.spokes_; ++k) {
            m.label_inverse_[j0][m.label_maps_[j0][k - 1]] = k;
        }
    }
    return m;
}

}  // namespace qwmaze
