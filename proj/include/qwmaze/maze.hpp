// maze.hpp — chains and rings of star graphs with hidden connections.
//
// A maze is M stars of N spokes each.  Star j (1-based) has hub A_j and
// external vertices B_{j,1}..B_{j,N-1} plus the left junction it shares with
// star j-1.  B_{j,1} is the junction to star j+1; on a chain, junction 0 is
// START and junction M is END.  Which external label hides internal spoke 1
// (the connection) is a per-star secret drawn from the seed; the walk unitary
// is blind to labels, so hiding is implemented purely as a label permutation.
//
// Canonical directed-edge index: star j0 in [0,M), slot s in [0,N) where
// slot 0 is the left junction and slot k>=1 is B_{j,k}, direction d in {0,1}
// (0: hub -> external, 1: external -> hub); index = (j0*N + s)*2 + d.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwmaze/rng.hpp"

namespace qwmaze {

enum class Topology { chain, ring };

struct Vertex {
    enum class Kind { center, spoke, junction };

    Kind kind = Kind::center;
    int star = 0;   // center/spoke: star index 1..M
    int index = 0;  // spoke: internal spoke 2..N-1; junction: junction index

    static Vertex center(int star) { return {Kind::center, star, 0}; }
    static Vertex spoke(int star, int internal) { return {Kind::spoke, star, internal}; }
    static Vertex junction(int k) { return {Kind::junction, 0, k}; }

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct DirectedEdge {
    Vertex tail;
    Vertex head;

    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Result of an oracle query: neighbor names plus terminal marking.
struct NeighborQuery {
    std::vector<std::string> neighbors;
    bool is_start = false;
    bool is_end = false;

    int degree() const { return static_cast<int>(neighbors.size()); }
};

class Maze {
  public:
    // Throws std::invalid_argument if N < 3 or M below the topology minimum
    // (1 for a chain, 2 for a ring).
    static Maze build(Topology topology, int stars, int spokes, std::uint64_t seed);

    Topology topology() const { return topology_; }
    int stars() const { return stars_; }
    int spokes() const { return spokes_; }
    std::uint64_t seed() const { return seed_; }

    // Number of directed edge states, 2*M*N.
    int state_count() const { return 2 * stars_ * spokes_; }

    double transmission() const { return 2.0 / spokes_; }             // t = 2/N
    double reflection() const { return 1.0 - 2.0 / spokes_; }         // r = 1 - t

    // Junction indices: 0..M on a chain (0 = START, M = END), 1..M on a ring.
    int junction_min() const { return topology_ == Topology::chain ? 0 : 1; }
    int junction_max() const { return stars_; }
    bool is_terminal_junction(int k) const {
        return topology_ == Topology::chain && (k == 0 || k == stars_);
    }

    // Canonical indexing. star1 is 1-based; slot as described above.
    int out_state(int star1, int slot) const { return ((star1 - 1) * spokes_ + slot) * 2; }
    int in_state(int star1, int slot) const { return ((star1 - 1) * spokes_ + slot) * 2 + 1; }

    // Structured edge <-> canonical index (mutually inverse bijections).
    int edge_index(const DirectedEdge& e) const;
    DirectedEdge index_edge(int index) const;

    // External naming: "S", "E", "A{j}", "B{j}:{label}".
    std::string vertex_name(const Vertex& v) const;

    // The oracle: neighbor names of an externally named vertex, sorted
    // deterministically, with START/END flags. Throws std::out_of_range on an
    // unknown name. Never exposes internal spoke indices.
    NeighborQuery neighbors(const std::string& name) const;

    // Privileged ground truth: START, the interior junction names in order,
    // END (chain); the junction names 1..M (ring). Test/verification only.
    std::vector<std::string> reveal_path() const;

    // Label plumbing. internal_spoke/external_label are bijections on 1..N-1.
    int external_label(int star1, int internal_spoke) const;
    int internal_spoke(int star1, int label) const;

    // Versioned single-line JSON document; parse is the exact inverse.
    std::string to_json() const;
    static Maze from_json(const std::string& text);

  private:
    Maze() = default;

    Vertex parse_name(const std::string& name) const;

    Topology topology_ = Topology::chain;
    int stars_ = 0;
    int spokes_ = 0;
    std::uint64_t seed_ = 0;
    // label_maps_[j0][k-1] = external label of internal spoke k of star j0+1
    std::vector<std::vector<int>> label_maps_;
    // inverse maps, label -> internal spoke
    std::vector<std::vector<int>> label_inverse_;
};

}  // namespace qwmaze
