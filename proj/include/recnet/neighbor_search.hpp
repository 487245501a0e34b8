// neighbor_search.hpp: exact nearest-neighbour queries over row-major point sets.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace recnet {

// Squared Euclidean distance; every module that compares distances goes through this
// function so that thresholds derived from one pass reproduce exactly in another.
inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

// Static k-d tree. Does not own the points; the caller keeps them alive and unchanged.
class KdTree {
public:
    struct Hit {
        std::size_t index;
        double dist2;
    };

    KdTree(std::span<const double> points, std::size_t dim, std::size_t leaf_size = 12);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }

    // Nearest point to `query` among indices i with |i - center| > exclusion.
    // Equidistant candidates resolve to the lowest index. Empty if no index qualifies.
    std::optional<Hit> nearest(std::span<const double> query, std::size_t center, std::size_t exclusion) const;

private:
    struct Node {
        std::uint32_t begin;
        std::uint32_t end;
        std::int32_t left{-1};
        std::int32_t right{-1};
        std::uint32_t axis{0};
        double split{0.0};
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end);
    void search(std::int32_t node, std::span<const double> query, std::size_t center, std::size_t exclusion,
                Hit& best, bool& found) const;
    std::span<const double> point(std::size_t i) const { return points_.subspan(i * dim_, dim_); }

    std::span<const double> points_;
    std::size_t dim_;
    std::size_t n_;
    std::size_t leaf_size_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace recnet
