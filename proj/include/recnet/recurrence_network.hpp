// recurrence_network.hpp: epsilon-recurrence networks over delay vectors and the
// topological indicators computed on them.
//
// Nodes are delay vectors; i != j are linked iff ||x_i - x_j|| <= epsilon (a distance equal
// to epsilon counts as a link). Adjacency is held as sorted neighbour lists (CSR).
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "recnet/embedding.hpp"

namespace recnet {

class RecurrenceNetwork {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    RecurrenceNetwork() = default;

    // Undirected simple graph; self-loops and duplicate edges are dropped.
    static RecurrenceNetwork from_edges(std::size_t n_nodes, std::span<const Edge> edges, double epsilon = 0.0);

    std::size_t size() const noexcept { return degrees_.size(); }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
    double epsilon() const noexcept { return epsilon_; }

    std::span<const std::uint32_t> neighbors(std::size_t i) const {
        return std::span<const std::uint32_t>(neighbors_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
    }
    std::size_t degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
    bool has_edge(std::size_t i, std::size_t j) const;

    // Edges with i < j in lexicographic order.
    std::vector<Edge> edge_list() const;

    RecurrenceNetwork induced_subgraph(std::span<const std::size_t> nodes) const;

private:
    friend RecurrenceNetwork recurrence_matrix(const DelayVectors& vectors, double epsilon);

    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint32_t> neighbors_;
    std::vector<std::size_t> degrees_;
    double epsilon_{0.0};
};

RecurrenceNetwork recurrence_matrix(const DelayVectors& vectors, double epsilon);

struct CriticalEpsilon {
    double epsilon{0.0};
    bool duplicate_collapse{false};  // more than half of the points coincide with another point
};

// Smallest epsilon for which the network is connected (the Laplacian's second eigenvalue
// turns positive): the longest edge of the Euclidean minimum spanning tree.
CriticalEpsilon epsilon_critical(const DelayVectors& vectors);

// Component label per node (labels ordered by lowest member); returns the component count.
std::size_t connected_components(const RecurrenceNetwork& net, std::vector<std::size_t>* labels = nullptr);

// Largest component (ties: the one containing the lowest node), node order preserved.
RecurrenceNetwork largest_component(const RecurrenceNetwork& net, std::vector<std::size_t>* kept = nullptr);

// Mean BFS distance over ordered pairs; throws DisconnectedGraphError.
double average_path_length(const RecurrenceNetwork& net);

double link_density(const RecurrenceNetwork& net);

struct Clustering {
    std::vector<double> local;  // 0 for nodes of degree < 2
    double global{0.0};         // mean over all nodes
};

Clustering clustering(const RecurrenceNetwork& net);

// Closed over connected triples; throws UndefinedTransitivityError without any 2-path.
double transitivity(const RecurrenceNetwork& net);

// Pearson correlation of remaining degrees across edge ends; throws
// DegenerateVarianceError for empty or degree-regular edge sets.
double assortativity(const RecurrenceNetwork& net);

std::map<std::size_t, std::size_t> degree_distribution(const RecurrenceNetwork& net);

// `i j` per line, 0-based, i < j.
void write_edge_list(const std::filesystem::path& path, const RecurrenceNetwork& net);
RecurrenceNetwork read_edge_list(const std::filesystem::path& path, std::size_t n_nodes = 0);

// `degree,count` CSV.
void write_degree_histogram(const std::filesystem::path& path, const std::map<std::size_t, std::size_t>& hist);

}  // namespace recnet
