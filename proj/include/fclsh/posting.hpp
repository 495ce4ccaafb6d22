#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fclsh {

/// One hash table's postings: (bucket value, point id) pairs, sorted once
/// after the build so lookups are a binary search. Compared to a node-based
/// map this is a third of the memory, which is what bounds the large
/// replicated configurations.
class PostingTable {
public:
    struct Entry {
        uint64_t hash;
        uint32_t id;

        friend bool operator<(const Entry& a, const Entry& b) {
            return a.hash != b.hash ? a.hash < b.hash : a.id < b.id;
        }
    };

    void reserve(size_t n) { entries_.reserve(n); }

    void add(uint64_t hash, uint32_t id) { entries_.push_back(Entry{hash, id}); }

    /// Sort by (hash, id). Must run before the first bucket() call.
    void finalize();

    /// Entries sharing the bucket value, ids ascending. Empty if absent.
    std::span<const Entry> bucket(uint64_t hash) const;

    size_t entry_count() const { return entries_.size(); }
    bool finalized() const { return finalized_; }

private:
    std::vector<Entry> entries_;
    bool finalized_ = false;
};

} // namespace fclsh
