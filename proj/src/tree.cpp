#include "sisp/tree.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace sisp {

namespace {

constexpr std::array<std::string_view, 8> kTagNames{"root",        "burn_in",     "uniform",  "pc_positive",
                                                    "pc_negative", "gaussian",    "bridge",   "obstacle"};

double squared_distance(const Config& a, const Config& b) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

std::string_view tag_name(NodeTag tag) noexcept { return kTagNames[static_cast<std::size_t>(tag)]; }

NodeTag tag_from_name(std::string_view name) {
    const auto it = std::find(kTagNames.begin(), kTagNames.end(), name);
    require(it != kTagNames.end(), "unknown node tag \"" + std::string(name) + "\"");
    return static_cast<NodeTag>(it - kTagNames.begin());
}

void KdTree::insert(const std::vector<Config>& points, std::size_t index) {
    if (dim_ == 0) dim_ = points[index].size();
    const Config& p = points[index];
    if (nodes_.empty()) {
        nodes_.push_back({index});
        return;
    }
    std::size_t cur = 0;
    int depth = 0;
    for (;;) {
        Node& node = nodes_[cur];
        const bool go_left = p[node.axis] < points[node.point][node.axis];
        std::size_t& next = go_left ? node.left : node.right;
        ++depth;
        if (next == kNone) {
            next = nodes_.size();
            nodes_.push_back({index, kNone, kNone, static_cast<int>(depth % dim_)});
            return;
        }
        cur = next;
    }
}

void KdTree::search(const std::vector<Config>& points, std::size_t node_index, const Config& q,
                    Best& best) const {
    // Iterative descent with an explicit stack of deferred far branches.
    struct Pending {
        std::size_t node;
        double plane_dist2;
    };
    std::vector<Pending> stack;
    stack.push_back({node_index, 0.0});
    while (!stack.empty()) {
        const Pending item = stack.back();
        stack.pop_back();
        if (item.node == kNone || item.plane_dist2 > best.dist2) continue;
        const Node& node = nodes_[item.node];
        const Config& p = points[node.point];
        const double d2 = squared_distance(p, q);
        if (d2 < best.dist2 || (d2 == best.dist2 && node.point < best.index)) best = {d2, node.point};
        const double diff = q[node.axis] - p[node.axis];
        const std::size_t near = diff < 0.0 ? node.left : node.right;
        const std::size_t far = diff < 0.0 ? node.right : node.left;
        stack.push_back({far, diff * diff});
        stack.push_back({near, 0.0});
    }
}

std::size_t KdTree::nearest(const std::vector<Config>& points, const Config& q) const {
    require(!nodes_.empty(), "nearest: empty tree");
    require(q.size() == dim_, "nearest: dimension mismatch");
    Best best{std::numeric_limits<double>::infinity(), kNone};
    search(points, 0, q, best);
    return best.index;
}

Tree::Tree(const Config& root) : index_(root.size()) {
    nodes_.push_back(root);
    parents_.push_back(0);
    tags_.push_back(NodeTag::Root);
    index_.insert(nodes_, 0);
}

std::size_t Tree::add(const Config& q, std::size_t parent, NodeTag tag) {
    require(parent < nodes_.size(), "tree: parent index out of range");
    require(q.size() == nodes_.front().size(), "tree: dimension mismatch");
    nodes_.push_back(q);
    parents_.push_back(parent);
    tags_.push_back(tag);
    index_.insert(nodes_, nodes_.size() - 1);
    return nodes_.size() - 1;
}

std::vector<Config> extract_path(const Tree& tree, std::size_t leaf) {
    require(leaf < tree.size(), "extract_path: leaf out of range");
    std::vector<Config> path;
    for (std::size_t i = leaf;; i = tree.parent(i)) {
        path.push_back(tree.node(i));
        if (i == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Config steer(const Config& from, const Config& to, double eta) {
    require(eta > 0.0, "steer: eta must be positive");
    require(from.size() == to.size(), "steer: dimension mismatch");
    const Config delta = to - from;
    const double len = delta.norm();
    if (len <= eta) return to;
    return from + (eta / len) * delta;
}

}  // namespace sisp
