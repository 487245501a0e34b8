#include "recnet/neighbor_search.hpp"

#include <algorithm>
#include <numeric>

#include "recnet/errors.hpp"

namespace recnet {

KdTree::KdTree(std::span<const double> points, std::size_t dim, std::size_t leaf_size)
    : points_(points), dim_(dim), n_(dim == 0 ? 0 : points.size() / dim), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
    if (dim == 0 || points.size() % dim != 0) throw PreconditionError("KdTree: bad point layout");
    if (n_ >= (std::size_t{1} << 31)) throw PreconditionError("KdTree: too many points");
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0u);
    if (n_ > 0) {
        nodes_.reserve(2 * (n_ / leaf_size_ + 1));
        build(0, static_cast<std::uint32_t>(n_));
    }
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{begin, end});
    if (end - begin <= leaf_size_) return id;

    // Split along the axis of largest spread.
    std::uint32_t axis = 0;
    double widest = -1.0;
    for (std::size_t a = 0; a < dim_; ++a) {
        double lo = point(order_[begin])[a];
        double hi = lo;
        for (std::uint32_t i = begin + 1; i < end; ++i) {
            const double v = point(order_[i])[a];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > widest) {
            widest = hi - lo;
            axis = static_cast<std::uint32_t>(a);
        }
    }
    if (widest <= 0.0) return id;  // all coincide: keep as a leaf

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) { return point(a)[axis] < point(b)[axis]; });
    const double split = point(order_[mid])[axis];
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
}

std::optional<KdTree::Hit> KdTree::nearest(std::span<const double> query, std::size_t center,
                                           std::size_t exclusion) const {
    if (n_ == 0) return std::nullopt;
    Hit best{0, 0.0};
    bool found = false;
    search(0, query, center, exclusion, best, found);
    if (!found) return std::nullopt;
    return best;
}

void KdTree::search(std::int32_t id, std::span<const double> query, std::size_t center, std::size_t exclusion,
                    Hit& best, bool& found) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const std::size_t idx = order_[i];
            const std::size_t gap = idx > center ? idx - center : center - idx;
            if (gap <= exclusion) continue;
            const double d2 = squared_distance(query, point(idx));
            if (!found || d2 < best.dist2 || (d2 == best.dist2 && idx < best.index)) {
                best = {idx, d2};
                found = true;
            }
        }
        return;
    }
    const double diff = query[node.axis] - node.split;
    const std::int32_t near = diff < 0.0 ? node.left : node.right;
    const std::int32_t far = diff < 0.0 ? node.right : node.left;
    search(near, query, center, exclusion, best, found);
    // Equality is not pruned: an equidistant point with a lower index may live there.
    if (!found || diff * diff <= best.dist2) search(far, query, center, exclusion, best, found);
}

}  // namespace recnet
