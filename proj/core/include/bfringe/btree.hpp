#ifndef BFRINGE_BTREE_HPP
#define BFRINGE_BTREE_HPP

#include <bfringe/replacement.hpp>
#include <bfringe/rng.hpp>

#include <cstdint>
#include <memory>
#include <vector>

namespace bfringe {

/// A real B-tree over a totally ordered key space, with both insertion
/// algorithms. Keys live in a 128-bit fixed-point interval so that a key
/// can always be synthesized strictly inside any gap; this is what lets the
/// tree consume the same uniform gap-index stream as the urn chain.
///
/// Single writer per instance; independent trees may run in parallel.
class BTree {
public:
    using Key = unsigned __int128;

    BTree(int m, Algorithm algorithm);
    ~BTree();
    BTree(BTree&&) noexcept;
    BTree& operator=(BTree&&) noexcept;
    BTree(const BTree&) = delete;
    BTree& operator=(const BTree&) = delete;

    int m() const { return m_; }
    Algorithm algorithm() const { return algorithm_; }
    int type_count() const { return dim_; }
    std::size_t key_count() const { return key_count_; }
    std::uint64_t gap_total() const { return key_count_ + 1; }

    /// True once every fringe node carries a type, i.e. key_count >= m-1.
    bool typed() const;

    /// Inserts a fresh uniform random key (random permutation model);
    /// duplicate draws are re-drawn.
    void insert_random(Xoshiro256pp& rng);

    /// Inserts into the gap of the given rank, where gaps are ordered
    /// type-major (all type-1 gaps first, then type-2, ...) exactly like the
    /// urn's cumulative color scan. Requires a typed tree.
    void insert_at_gap(std::uint64_t gap_rank);

    /// Inserts an explicit key; returns false when already present.
    bool insert_key(Key key);

    /// Number of fringe nodes of each type (type k holds m+k-2 keys).
    /// Throws std::logic_error for an empty or still-untyped tree.
    CompositionVector fringe_composition() const;

    /// Gap counts per type: G_k = (m+k-1) * L_k.
    CompositionVector gap_composition() const;

    /// Number of node levels (0 for the empty tree).
    int height() const;

    /// Verifies every structural invariant (uniform leaf depth, key-count
    /// ranges, search ordering, interval bookkeeping, bucket consistency).
    /// Throws std::logic_error naming the first violation.
    void check_structure() const;

private:
    struct Node;

    int capacity() const;
    void set_type(Node* x);
    struct SplitOutcome;
    SplitOutcome split(Node* x);
    void split_child(Node* x, std::size_t i);
    bool contains(Key key) const;
    void insert_optimistic(Key key);
    void insert_prudent(Key key);

    int m_;
    Algorithm algorithm_;
    int dim_;
    std::unique_ptr<Node> root_;
    std::size_t key_count_ = 0;
    std::vector<std::vector<Node*>> buckets_;  // buckets_[k], k = 1..dim
};

} // namespace bfringe

#endif
