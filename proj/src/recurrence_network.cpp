#include "recnet/recurrence_network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "recnet/errors.hpp"
#include "recnet/neighbor_search.hpp"
#include "recnet/time_series.hpp"

namespace recnet {

namespace {

// Builds symmetric CSR from an upper-triangular (i < j) adjacency given as per-row lists.
void assemble(std::size_t n, const std::vector<std::size_t>& upper_offsets, const std::vector<std::uint32_t>& upper,
              std::vector<std::size_t>& offsets, std::vector<std::uint32_t>& neighbors, std::vector<std::size_t>& degrees) {
    degrees.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = upper_offsets[i]; e < upper_offsets[i + 1]; ++e) {
            ++degrees[i];
            ++degrees[upper[e]];
        }
    }
    offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + degrees[i];
    neighbors.assign(offsets[n], 0);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    // Rows are visited in increasing i, so every list receives its lower neighbours in order
    // before its own (already sorted) upper neighbours.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = upper_offsets[i]; e < upper_offsets[i + 1]; ++e) {
            const std::uint32_t j = upper[e];
            neighbors[fill[j]++] = static_cast<std::uint32_t>(i);
        }
        for (std::size_t e = upper_offsets[i]; e < upper_offsets[i + 1]; ++e) neighbors[fill[i]++] = upper[e];
    }
}

std::vector<std::size_t> triangle_pairs(const RecurrenceNetwork& net) {
    // count[i] = number of ordered neighbour pairs (j, l) of i with j ~ l, i.e. 2 x triangles at i.
    const std::size_t n = net.size();
    std::vector<std::size_t> count(n, 0);
    std::vector<std::uint8_t> mark(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = net.neighbors(i);
        if (nb.size() < 2) continue;
        for (auto j : nb) mark[j] = 1;
        std::size_t c = 0;
        for (auto j : nb) {
            for (auto l : net.neighbors(j)) c += mark[l];
        }
        for (auto j : nb) mark[j] = 0;
        count[i] = c;
    }
    return count;
}

}  // namespace

RecurrenceNetwork RecurrenceNetwork::from_edges(std::size_t n_nodes, std::span<const Edge> edges, double epsilon) {
    if (n_nodes >= std::numeric_limits<std::uint32_t>::max()) throw PreconditionError("network too large");
    std::vector<Edge> upper;
    upper.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a >= n_nodes || b >= n_nodes) throw PreconditionError("edge endpoint out of range");
        if (a == b) continue;
        upper.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(upper.begin(), upper.end());
    upper.erase(std::unique(upper.begin(), upper.end()), upper.end());
    std::vector<std::size_t> uoff(n_nodes + 1, 0);
    std::vector<std::uint32_t> uadj;
    uadj.reserve(upper.size());
    for (auto [a, b] : upper) {
        ++uoff[a + 1];
        uadj.push_back(static_cast<std::uint32_t>(b));
    }
    for (std::size_t i = 0; i < n_nodes; ++i) uoff[i + 1] += uoff[i];
    RecurrenceNetwork net;
    assemble(n_nodes, uoff, uadj, net.offsets_, net.neighbors_, net.degrees_);
    net.epsilon_ = epsilon;
    return net;
}

bool RecurrenceNetwork::has_edge(std::size_t i, std::size_t j) const {
    const auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(j));
}

std::vector<RecurrenceNetwork::Edge> RecurrenceNetwork::edge_list() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < size(); ++i) {
        for (auto j : neighbors(i)) {
            if (j > i) out.emplace_back(i, j);
        }
    }
    return out;
}

RecurrenceNetwork RecurrenceNetwork::induced_subgraph(std::span<const std::size_t> nodes) const {
    std::vector<std::size_t> remap(size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k] >= size()) throw PreconditionError("induced_subgraph: node out of range");
        remap[nodes[k]] = k;
    }
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (auto j : neighbors(nodes[k])) {
            const std::size_t mj = remap[j];
            if (mj != std::numeric_limits<std::size_t>::max() && mj > k) edges.emplace_back(k, mj);
        }
    }
    return from_edges(nodes.size(), edges, epsilon_);
}

RecurrenceNetwork recurrence_matrix(const DelayVectors& vectors, double epsilon) {
    if (!(epsilon >= 0.0)) throw PreconditionError("recurrence_matrix: epsilon must be non-negative");
    const std::size_t n = vectors.size();
    if (n < 2) throw PreconditionError("recurrence_matrix: need at least 2 vectors");
    if (n >= std::numeric_limits<std::uint32_t>::max()) throw PreconditionError("network too large");
    // sqrt(d2) <= epsilon decides a link; the squared bounds only skip the sqrt far from the edge.
    const double eps2 = epsilon * epsilon;
    const double lo = eps2 * (1.0 - 1e-12);
    const double hi = std::isinf(eps2) ? eps2 : eps2 * (1.0 + 1e-12);
    std::vector<std::size_t> uoff(n + 1, 0);
    std::vector<std::uint32_t> uadj;
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = vectors[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = squared_distance(xi, vectors[j]);
            if (d2 < lo || (d2 <= hi && std::sqrt(d2) <= epsilon)) uadj.push_back(static_cast<std::uint32_t>(j));
        }
        uoff[i + 1] = uadj.size();
    }
    RecurrenceNetwork net;
    assemble(n, uoff, uadj, net.offsets_, net.neighbors_, net.degrees_);
    net.epsilon_ = epsilon;
    return net;
}

CriticalEpsilon epsilon_critical(const DelayVectors& vectors) {
    const std::size_t n = vectors.size();
    if (n < 2) throw PreconditionError("epsilon_critical: need at least 2 vectors");
    const std::size_t dim = vectors.dim();

    // Coincidence census via lexicographic sort.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto data = vectors.data();
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(data.begin() + a * dim, data.begin() + (a + 1) * dim,
                                            data.begin() + b * dim, data.begin() + (b + 1) * dim);
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t duplicated = 0;
    std::size_t distinct = 1;
    for (std::size_t k = 0; k < n;) {
        std::size_t e = k + 1;
        while (e < n && !less(order[k], order[e])) ++e;
        if (e - k > 1) duplicated += e - k;
        if (k > 0) ++distinct;
        k = e;
    }
    if (distinct == 1) throw PreconditionError("epsilon_critical: all points coincide");

    // Prim on the complete Euclidean graph; ties go to the lowest index.
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> in_tree(n, 0);
    double longest2 = 0.0;
    std::size_t current = 0;
    in_tree[0] = 1;
    for (std::size_t added = 1; added < n; ++added) {
        const auto xc = vectors[current];
        std::size_t next = n;
        double next_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (in_tree[j]) continue;
            const double d2 = squared_distance(xc, vectors[j]);
            if (d2 < best[j]) best[j] = d2;
            if (best[j] < next_d2 || next == n) {
                next_d2 = best[j];
                next = j;
            }
        }
        in_tree[next] = 1;
        longest2 = std::max(longest2, next_d2);
        current = next;
    }
    return {std::sqrt(longest2), 2 * duplicated > n};
}

std::size_t connected_components(const RecurrenceNetwork& net, std::vector<std::size_t>* labels) {
    const std::size_t n = net.size();
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(n, unset);
    std::vector<std::uint32_t> stack;
    std::size_t count = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != unset) continue;
        label[s] = count;
        stack.push_back(static_cast<std::uint32_t>(s));
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (auto v : net.neighbors(u)) {
                if (label[v] == unset) {
                    label[v] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    if (labels != nullptr) *labels = std::move(label);
    return count;
}

RecurrenceNetwork largest_component(const RecurrenceNetwork& net, std::vector<std::size_t>* kept) {
    std::vector<std::size_t> labels;
    const std::size_t count = connected_components(net, &labels);
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : labels) ++sizes[l];
    const auto biggest = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == biggest) nodes.push_back(i);
    }
    auto sub = net.induced_subgraph(nodes);
    if (kept != nullptr) *kept = std::move(nodes);
    return sub;
}

double average_path_length(const RecurrenceNetwork& net) {
    const std::size_t n = net.size();
    if (n < 2) throw PreconditionError("average_path_length: need at least 2 nodes");
    const std::size_t comps = connected_components(net);
    if (comps > 1) throw DisconnectedGraphError(comps);

    std::vector<std::uint32_t> dist(n);
    std::vector<std::uint32_t> queue(n);
    constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
    unsigned long long total = 0;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        std::size_t head = 0;
        std::size_t tail = 0;
        dist[s] = 0;
        queue[tail++] = static_cast<std::uint32_t>(s);
        while (head < tail) {
            const auto u = queue[head++];
            const auto du = dist[u] + 1;
            for (auto v : net.neighbors(u)) {
                if (dist[v] == unseen) {
                    dist[v] = du;
                    total += du;
                    queue[tail++] = v;
                }
            }
        }
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double link_density(const RecurrenceNetwork& net) {
    const std::size_t n = net.size();
    if (n < 2) throw PreconditionError("link_density: need at least 2 nodes");
    return 2.0 * static_cast<double>(net.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

Clustering clustering(const RecurrenceNetwork& net) {
    const auto pairs = triangle_pairs(net);
    Clustering c;
    c.local.assign(net.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double k = static_cast<double>(net.degree(i));
        if (net.degree(i) >= 2) c.local[i] = static_cast<double>(pairs[i]) / (k * (k - 1.0));
        sum += c.local[i];
    }
    c.global = net.size() > 0 ? sum / static_cast<double>(net.size()) : 0.0;
    return c;
}

double transitivity(const RecurrenceNetwork& net) {
    const auto pairs = triangle_pairs(net);
    double closed = 0.0;
    double triples = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double k = static_cast<double>(net.degree(i));
        closed += static_cast<double>(pairs[i]);
        triples += k * (k - 1.0);
    }
    if (triples == 0.0) throw UndefinedTransitivityError("transitivity undefined: network has no path of length 2");
    return closed / triples;
}

double assortativity(const RecurrenceNetwork& net) {
    if (net.edge_count() == 0) throw DegenerateVarianceError("assortativity undefined: no edges");
    // Each undirected edge contributes both orientations, so both ends share one distribution.
    double ends = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double k = static_cast<double>(net.degree(i));
        ends += k;
        mean += k * (k - 1.0);
    }
    mean /= ends;
    double var = 0.0;
    double cov = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double xi = static_cast<double>(net.degree(i)) - 1.0 - mean;
        var += static_cast<double>(net.degree(i)) * xi * xi;
        for (auto j : net.neighbors(i)) cov += xi * (static_cast<double>(net.degree(j)) - 1.0 - mean);
    }
    var /= ends;
    cov /= ends;
    if (!(var > 1e-14 * std::max(1.0, mean * mean))) {
        throw DegenerateVarianceError("assortativity undefined: all edge ends have the same degree");
    }
    return cov / var;
}

std::map<std::size_t, std::size_t> degree_distribution(const RecurrenceNetwork& net) {
    std::map<std::size_t, std::size_t> hist;
    for (auto k : net.degrees()) ++hist[k];
    return hist;
}

void write_edge_list(const std::filesystem::path& path, const RecurrenceNetwork& net) {
    std::string out;
    for (auto [i, j] : net.edge_list()) {
        out += std::to_string(i);
        out += ' ';
        out += std::to_string(j);
        out += '\n';
    }
    write_text_file(path, out);
}

RecurrenceNetwork read_edge_list(const std::filesystem::path& path, std::size_t n_nodes) {
    std::istringstream is(read_text_file(path));
    std::vector<RecurrenceNetwork::Edge> edges;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t max_node = 0;
    bool any = false;
    while (is >> a >> b) {
        edges.emplace_back(a, b);
        max_node = std::max({max_node, a, b});
        any = true;
    }
    if (!is.eof()) throw IoError(path.string() + ": malformed edge list");
    if (n_nodes == 0) n_nodes = any ? max_node + 1 : 0;
    return RecurrenceNetwork::from_edges(n_nodes, edges);
}

void write_degree_histogram(const std::filesystem::path& path, const std::map<std::size_t, std::size_t>& hist) {
    std::string out = "degree,count\n";
    for (auto [k, c] : hist) out += std::to_string(k) + "," + std::to_string(c) + "\n";
    write_text_file(path, out);
}

}  // namespace recnet
