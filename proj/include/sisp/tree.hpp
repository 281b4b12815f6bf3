#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sisp/types.hpp"

namespace sisp {

/// Which sampler produced a tree node.
enum class NodeTag : std::uint8_t { Root, BurnIn, Uniform, PCPositive, PCNegative, Gaussian, Bridge, Obstacle };

[[nodiscard]] std::string_view tag_name(NodeTag tag) noexcept;
[[nodiscard]] NodeTag tag_from_name(std::string_view name);

/// Insert-only kd-tree over an external point array. Points are split on
/// axis depth % N; queries return the lowest index among equidistant points.
class KdTree {
public:
    explicit KdTree(Eigen::Index dimension = 0) : dim_(dimension) {}

    void insert(const std::vector<Config>& points, std::size_t index);
    [[nodiscard]] std::size_t nearest(const std::vector<Config>& points, const Config& q) const;
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    struct Node {
        std::size_t point;
        std::size_t left = kNone;
        std::size_t right = kNone;
        int axis = 0;
    };
    struct Best {
        double dist2;
        std::size_t index;
    };
    void search(const std::vector<Config>& points, std::size_t node, const Config& q, Best& best) const;

    Eigen::Index dim_;
    std::vector<Node> nodes_;
};

/// Planning tree rooted at node 0. Each node's parent is stored by index;
/// the root is its own parent.
class Tree {
public:
    explicit Tree(const Config& root);

    std::size_t add(const Config& q, std::size_t parent, NodeTag tag);
    [[nodiscard]] std::size_t nearest(const Config& q) const { return index_.nearest(nodes_, q); }

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] const Config& node(std::size_t i) const { return nodes_.at(i); }
    [[nodiscard]] std::size_t parent(std::size_t i) const { return parents_.at(i); }
    [[nodiscard]] NodeTag tag(std::size_t i) const { return tags_.at(i); }
    [[nodiscard]] const std::vector<Config>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<std::size_t>& parents() const noexcept { return parents_; }
    [[nodiscard]] const std::vector<NodeTag>& tags() const noexcept { return tags_; }

private:
    std::vector<Config> nodes_;
    std::vector<std::size_t> parents_;
    std::vector<NodeTag> tags_;
    KdTree index_;
};

/// Root-to-leaf configurations along parent links.
[[nodiscard]] std::vector<Config> extract_path(const Tree& tree, std::size_t leaf);

/// `to` if within `eta` of `from`, else the point `eta` along the segment.
[[nodiscard]] Config steer(const Config& from, const Config& to, double eta);

}  // namespace sisp
