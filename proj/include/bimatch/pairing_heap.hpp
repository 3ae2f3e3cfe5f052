// SPDX-License-Identifier: Apache-2.0
//
// Addressable min-priority queue (pairing heap) with decrease-key and
// arbitrary deletion. Nodes live in a pool indexed by 32-bit slots; handles
// carry a generation so that use after removal is detected.
//
// Amortized costs: insert and decrease_key O(1) (conjectured o(log n) in the
// worst analyses), extract_min and erase O(log n).

#ifndef BIMATCH_PAIRING_HEAP_HPP
#define BIMATCH_PAIRING_HEAP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bimatch {

class HeapError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct HeapHandle {
    static constexpr std::uint32_t npos = 0xffffffffu;
    std::uint32_t slot = npos;
    std::uint32_t generation = 0;

    bool empty() const noexcept { return slot == npos; }
    friend bool operator==(const HeapHandle&, const HeapHandle&) = default;
};

template <class Item, class Key, class Compare = std::less<Key>>
class PairingHeap {
public:
    explicit PairingHeap(Compare cmp = Compare{}) : less_(std::move(cmp)) {}

    bool empty() const noexcept { return size_ == 0; }
    std::size_t size() const noexcept { return size_; }

    HeapHandle insert(Item item, Key key) {
        std::uint32_t s;
        if (!free_.empty()) {
            s = free_.back();
            free_.pop_back();
        } else {
            s = static_cast<std::uint32_t>(nodes_.size());
            nodes_.emplace_back();
        }
        Node& n = nodes_[s];
        n.key = std::move(key);
        n.item = std::move(item);
        n.child = n.sibling = n.prev = npos;
        n.live = true;
        root_ = root_ == npos ? s : link(root_, s);
        ++size_;
        return {s, n.generation};
    }

    /// Minimum item and its key, without removal.
    std::pair<Item, Key> top() const {
        if (empty()) throw HeapError("bimatch: top() on empty heap");
        return {nodes_[root_].item, nodes_[root_].key};
    }

    const Key& min_key() const {
        if (empty()) throw HeapError("bimatch: min_key() on empty heap");
        return nodes_[root_].key;
    }

    std::pair<Item, Key> extract_min() {
        if (empty()) throw HeapError("bimatch: extract_min() on empty heap");
        const std::uint32_t old = root_;
        std::pair<Item, Key> out{nodes_[old].item, nodes_[old].key};
        root_ = merge_children(old);
        if (root_ != npos) nodes_[root_].prev = npos;
        release(old);
        return out;
    }

    void decrease_key(HeapHandle h, Key key) {
        check(h);
        Node& n = nodes_[h.slot];
        if (less_(n.key, key)) throw HeapError("bimatch: decrease_key() would increase the key");
        n.key = std::move(key);
        if (h.slot == root_) return;
        detach(h.slot);
        root_ = link(root_, h.slot);
    }

    void erase(HeapHandle h) {
        check(h);
        if (h.slot == root_) {
            extract_min();
            return;
        }
        detach(h.slot);
        const std::uint32_t sub = merge_children(h.slot);
        if (sub != npos) {
            nodes_[sub].prev = npos;
            root_ = link(root_, sub);
        }
        release(h.slot);
    }

    bool contains(HeapHandle h) const noexcept {
        return !h.empty() && h.slot < nodes_.size() && nodes_[h.slot].live &&
               nodes_[h.slot].generation == h.generation;
    }

    const Key& key(HeapHandle h) const {
        check(h);
        return nodes_[h.slot].key;
    }

    /// Drops every item; outstanding handles become stale.
    void clear() {
        for (std::uint32_t s = 0; s < nodes_.size(); ++s) {
            if (nodes_[s].live) release(s);
        }
        root_ = npos;
    }

private:
    static constexpr std::uint32_t npos = HeapHandle::npos;

    struct Node {
        Key key{};
        Item item{};
        std::uint32_t child = npos;
        std::uint32_t sibling = npos;
        std::uint32_t prev = npos;  // parent if leftmost child, else left sibling
        std::uint32_t generation = 0;
        bool live = false;
    };

    void check(HeapHandle h) const {
        if (!contains(h)) throw HeapError("bimatch: stale or invalid heap handle");
    }

    void release(std::uint32_t s) {
        Node& n = nodes_[s];
        n.live = false;
        ++n.generation;
        n.child = n.sibling = n.prev = npos;
        free_.push_back(s);
        --size_;
    }

    // Both arguments are roots of detached trees.
    std::uint32_t link(std::uint32_t a, std::uint32_t b) {
        if (less_(nodes_[b].key, nodes_[a].key)) std::swap(a, b);
        Node& parent = nodes_[a];
        Node& kid = nodes_[b];
        kid.sibling = parent.child;
        if (parent.child != npos) nodes_[parent.child].prev = b;
        kid.prev = a;
        parent.child = b;
        parent.sibling = npos;
        return a;
    }

    void detach(std::uint32_t s) {
        Node& n = nodes_[s];
        Node& p = nodes_[n.prev];
        if (p.child == s) {
            p.child = n.sibling;
        } else {
            p.sibling = n.sibling;
        }
        if (n.sibling != npos) nodes_[n.sibling].prev = n.prev;
        n.sibling = n.prev = npos;
    }

    // Standard two-pass combine of the children of s, iteratively.
    std::uint32_t merge_children(std::uint32_t s) {
        std::uint32_t c = nodes_[s].child;
        nodes_[s].child = npos;
        if (c == npos) return npos;
        scratch_.clear();
        while (c != npos) {
            const std::uint32_t next = nodes_[c].sibling;
            nodes_[c].sibling = nodes_[c].prev = npos;
            scratch_.push_back(c);
            c = next;
        }
        std::size_t paired = 0;
        for (std::size_t i = 0; i + 1 < scratch_.size(); i += 2) {
            scratch_[paired++] = link(scratch_[i], scratch_[i + 1]);
        }
        if (scratch_.size() % 2 == 1) scratch_[paired++] = scratch_.back();
        std::uint32_t acc = scratch_[paired - 1];
        for (std::size_t i = paired - 1; i-- > 0;) acc = link(scratch_[i], acc);
        return acc;
    }

    Compare less_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
    std::vector<std::uint32_t> scratch_;
    std::uint32_t root_ = npos;
    std::size_t size_ = 0;
};

}  // namespace bimatch

#endif  // BIMATCH_PAIRING_HEAP_HPP
