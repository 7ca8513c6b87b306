#include <bfringe/btree.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bfringe {

namespace {
constexpr BTree::Key kKeyMin = 0;
constexpr BTree::Key kKeyMax = ~static_cast<BTree::Key>(0);
} // namespace

struct BTree::Node {
    std::vector<Key> keys;
    std::vector<std::unique_ptr<Node>> children;  // empty iff fringe node
    Key lo = kKeyMin;  // open key-space interval owned by this subtree
    Key hi = kKeyMax;
    int type = 0;  // 1..dim when a typed fringe node, else 0
    std::size_t bucket_pos = 0;

    bool fringe() const { return children.empty(); }
};

struct BTree::SplitOutcome {
    Key median;
    std::unique_ptr<Node> right;
};

BTree::BTree(int m, Algorithm algorithm)
    : m_(m), algorithm_(algorithm), dim_(algorithm == Algorithm::optimistic ? m : m + 1) {
    if (m < 2) throw std::invalid_argument("BTree: m must be >= 2");
    buckets_.resize(static_cast<std::size_t>(dim_) + 1);
}

BTree::~BTree() = default;
BTree::BTree(BTree&&) noexcept = default;
BTree& BTree::operator=(BTree&&) noexcept = default;

int BTree::capacity() const {
    return algorithm_ == Algorithm::optimistic ? 2 * m_ - 2 : 2 * m_ - 1;
}

bool BTree::typed() const {
    return key_count_ >= static_cast<std::size_t>(m_ - 1);
}

void BTree::set_type(Node* x) {
    int new_type = 0;
    if (x->fringe()) {
        const int k = static_cast<int>(x->keys.size()) - m_ + 2;
        if (k >= 1 && k <= dim_) new_type = k;
    }
    if (new_type == x->type) return;
    if (x->type != 0) {
        auto& b = buckets_[static_cast<std::size_t>(x->type)];
        Node* last = b.back();
        b[x->bucket_pos] = last;
        last->bucket_pos = x->bucket_pos;
        b.pop_back();
    }
    if (new_type != 0) {
        auto& b = buckets_[static_cast<std::size_t>(new_type)];
        x->bucket_pos = b.size();
        b.push_back(x);
    }
    x->type = new_type;
}

// Splits a node holding 2m-1 keys around its median. The original node is
// reused as the left half.
BTree::SplitOutcome BTree::split(Node* x) {
    const std::size_t mid = x->keys.size() / 2;
    SplitOutcome out;
    out.median = x->keys[mid];
    out.right = std::make_unique<Node>();
    out.right->keys.assign(x->keys.begin() + static_cast<std::ptrdiff_t>(mid) + 1, x->keys.end());
    out.right->lo = out.median;
    out.right->hi = x->hi;
    if (!x->children.empty()) {
        for (std::size_t j = mid + 1; j < x->children.size(); ++j) {
            out.right->children.push_back(std::move(x->children[j]));
        }
        x->children.resize(mid + 1);
    }
    x->keys.resize(mid);
    x->hi = out.median;
    set_type(x);
    set_type(out.right.get());
    return out;
}

void BTree::split_child(Node* x, std::size_t i) {
    auto outcome = split(x->children[i].get());
    x->keys.insert(x->keys.begin() + static_cast<std::ptrdiff_t>(i), outcome.median);
    x->children.insert(x->children.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                       std::move(outcome.right));
}

bool BTree::contains(Key key) const {
    const Node* x = root_.get();
    while (x != nullptr) {
        auto it = std::lower_bound(x->keys.begin(), x->keys.end(), key);
        if (it != x->keys.end() && *it == key) return true;
        if (x->fringe()) return false;
        x = x->children[static_cast<std::size_t>(it - x->keys.begin())].get();
    }
    return false;
}

void BTree::insert_optimistic(Key key) {
    // Recursive descent; a node that outgrows its capacity splits on the
    // way back up, pushing the median into its parent.
    struct Rec {
        BTree* t;
        Key key;
        std::unique_ptr<SplitOutcome> operator()(Node* x) {
            auto it = std::upper_bound(x->keys.begin(), x->keys.end(), key);
            if (x->fringe()) {
                x->keys.insert(it, key);
            } else {
                auto i = static_cast<std::size_t>(it - x->keys.begin());
                auto up = (*this)(x->children[i].get());
                if (!up) return nullptr;
                x->keys.insert(x->keys.begin() + static_cast<std::ptrdiff_t>(i), up->median);
                x->children.insert(x->children.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                   std::move(up->right));
            }
            if (static_cast<int>(x->keys.size()) > t->capacity()) {
                return std::make_unique<SplitOutcome>(t->split(x));
            }
            t->set_type(x);
            return nullptr;
        }
    };
    auto up = Rec{this, key}(root_.get());
    if (up) {
        auto new_root = std::make_unique<Node>();
        new_root->lo = kKeyMin;
        new_root->hi = kKeyMax;
        new_root->keys.push_back(up->median);
        new_root->children.push_back(std::move(root_));
        new_root->children.push_back(std::move(up->right));
        root_ = std::move(new_root);
    }
}

void BTree::insert_prudent(Key key) {
    // Top-down: every saturated node met on the path is split before
    // descending into it, so the final fringe node is never saturated.
    if (static_cast<int>(root_->keys.size()) == capacity()) {
        auto outcome = split(root_.get());
        auto new_root = std::make_unique<Node>();
        new_root->lo = kKeyMin;
        new_root->hi = kKeyMax;
        new_root->keys.push_back(outcome.median);
        new_root->children.push_back(std::move(root_));
        new_root->children.push_back(std::move(outcome.right));
        root_ = std::move(new_root);
    }
    Node* x = root_.get();
    for (;;) {
        auto it = std::upper_bound(x->keys.begin(), x->keys.end(), key);
        if (x->fringe()) {
            x->keys.insert(it, key);
            set_type(x);
            return;
        }
        auto i = static_cast<std::size_t>(it - x->keys.begin());
        if (static_cast<int>(x->children[i]->keys.size()) == capacity()) {
            split_child(x, i);
            if (key > x->keys[i]) ++i;
        }
        x = x->children[i].get();
    }
}

bool BTree::insert_key(Key key) {
    if (key == kKeyMin || key == kKeyMax) {
        throw std::invalid_argument("BTree: key collides with a sentinel bound");
    }
    if (!root_) {
        root_ = std::make_unique<Node>();
        root_->lo = kKeyMin;
        root_->hi = kKeyMax;
    }
    if (contains(key)) return false;
    if (algorithm_ == Algorithm::optimistic) {
        insert_optimistic(key);
    } else {
        insert_prudent(key);
    }
    ++key_count_;
    return true;
}

void BTree::insert_random(Xoshiro256pp& rng) {
    for (;;) {
        Key key = (static_cast<Key>(rng.next()) << 64) | rng.next();
        if (key == kKeyMin || key == kKeyMax) continue;
        if (insert_key(key)) return;
    }
}

void BTree::insert_at_gap(std::uint64_t gap_rank) {
    if (!typed() || !root_) {
        throw std::logic_error("BTree: gap addressing requires a typed tree");
    }
    if (gap_rank >= gap_total()) {
        throw std::invalid_argument("BTree: gap rank out of range");
    }
    // Locate the target type with the same cumulative scan as the urn.
    std::uint64_t cum = 0;
    for (int k = 1; k <= dim_; ++k) {
        const auto per_node = static_cast<std::uint64_t>(m_ + k - 1);
        const std::uint64_t in_type = per_node * buckets_[static_cast<std::size_t>(k)].size();
        if (gap_rank < cum + in_type) {
            const std::uint64_t r = gap_rank - cum;
            Node* node = buckets_[static_cast<std::size_t>(k)][r / per_node];
            const auto slot = static_cast<std::size_t>(r % per_node);
            const Key lo = slot == 0 ? node->lo : node->keys[slot - 1];
            const Key hi = slot == node->keys.size() ? node->hi : node->keys[slot];
            if (hi - lo < 2) {
                throw std::logic_error("BTree: gap interval exhausted (128-bit key space)");
            }
            const Key key = lo + (hi - lo) / 2;
            if (!insert_key(key)) {
                throw std::logic_error("BTree: synthesized key already present");
            }
            return;
        }
        cum += in_type;
    }
    throw std::logic_error("BTree: gap rank not covered by buckets");
}

CompositionVector BTree::fringe_composition() const {
    if (key_count_ == 0) throw std::logic_error("BTree: empty tree has no composition");
    if (!typed()) throw std::logic_error("BTree: tree is still untyped (key_count < m-1)");
    CompositionVector out(static_cast<std::size_t>(dim_), 0);
    for (int k = 1; k <= dim_; ++k) {
        out[static_cast<std::size_t>(k - 1)] =
            static_cast<std::int64_t>(buckets_[static_cast<std::size_t>(k)].size());
    }
    return out;
}

CompositionVector BTree::gap_composition() const {
    CompositionVector out = fringe_composition();
    for (int k = 0; k < dim_; ++k) out[static_cast<std::size_t>(k)] *= m_ + k;
    return out;
}

int BTree::height() const {
    int h = 0;
    const Node* x = root_.get();
    while (x != nullptr) {
        ++h;
        x = x->children.empty() ? nullptr : x->children.front().get();
    }
    return h;
}

void BTree::check_structure() const {
    if (!root_) {
        if (key_count_ != 0) throw std::logic_error("btree invariant: lost root");
        return;
    }
    struct Walker {
        const BTree* t;
        int fringe_depth = -1;
        std::size_t keys_seen = 0;
        std::uint64_t gaps_seen = 0;

        void walk(const Node* x, Key lo, Key hi, int depth, bool is_root) {
            if (x->lo != lo || x->hi != hi) {
                throw std::logic_error("btree invariant: stale interval bounds");
            }
            const int cap = t->capacity();
            const auto nk = static_cast<int>(x->keys.size());
            if (is_root) {
                if (nk < 1 || nk > cap) throw std::logic_error("btree invariant: root key count");
            } else {
                if (nk < t->m_ - 1 || nk > cap) {
                    throw std::logic_error("btree invariant: node key count out of range");
                }
            }
            for (std::size_t i = 0; i < x->keys.size(); ++i) {
                const Key k = x->keys[i];
                if (k <= lo || k >= hi) throw std::logic_error("btree invariant: key outside bounds");
                if (i > 0 && k <= x->keys[i - 1]) {
                    throw std::logic_error("btree invariant: key order");
                }
            }
            keys_seen += x->keys.size();
            if (x->fringe()) {
                if (fringe_depth < 0) fringe_depth = depth;
                if (fringe_depth != depth) {
                    throw std::logic_error("btree invariant: leaves at different depths");
                }
                gaps_seen += x->keys.size() + 1;
                const int type = nk - t->m_ + 2;
                if (type >= 1 && type <= t->dim_) {
                    if (x->type != type) throw std::logic_error("btree invariant: bad bucket type");
                    const auto& b = t->buckets_[static_cast<std::size_t>(type)];
                    if (x->bucket_pos >= b.size() || b[x->bucket_pos] != x) {
                        throw std::logic_error("btree invariant: bucket position");
                    }
                } else if (x->type != 0) {
                    throw std::logic_error("btree invariant: untyped node in bucket");
                }
            } else {
                if (x->type != 0) throw std::logic_error("btree invariant: internal node in bucket");
                if (x->children.size() != x->keys.size() + 1) {
                    throw std::logic_error("btree invariant: children count");
                }
                for (std::size_t i = 0; i < x->children.size(); ++i) {
                    const Key clo = i == 0 ? lo : x->keys[i - 1];
                    const Key chi = i == x->keys.size() ? hi : x->keys[i];
                    walk(x->children[i].get(), clo, chi, depth + 1, false);
                }
            }
        }
    };
    Walker w{this};
    w.walk(root_.get(), kKeyMin, kKeyMax, 0, true);
    if (w.keys_seen != key_count_) throw std::logic_error("btree invariant: key count drift");
    if (w.gaps_seen != gap_total()) throw std::logic_error("btree invariant: gap total");
    if (typed() && key_count_ > 0) {
        // every fringe node must be typed once the tree is typed
        CompositionVector comp = fringe_composition();
        std::uint64_t g = 0;
        for (int k = 0; k < dim_; ++k) {
            g += static_cast<std::uint64_t>(comp[static_cast<std::size_t>(k)]) *
                 static_cast<std::uint64_t>(m_ + k);
        }
        if (g != gap_total()) throw std::logic_error("btree invariant: typed gap total");
    }
}

} // namespace bfringe
