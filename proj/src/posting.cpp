#include "fclsh/posting.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>

namespace fclsh {

void PostingTable::finalize() {
    std::sort(entries_.begin(), entries_.end());
    finalized_ = true;
}

std::span<const PostingTable::Entry> PostingTable::bucket(uint64_t hash) const {
    if (!finalized_) throw UsageError("posting table: bucket lookup before finalize");
    auto lo = std::lower_bound(entries_.begin(), entries_.end(), hash,
                               [](const Entry& e, uint64_t h) { return e.hash < h; });
    auto hi = std::upper_bound(lo, entries_.end(), hash,
                               [](uint64_t h, const Entry& e) { return h < e.hash; });
    return {entries_.data() + (lo - entries_.begin()), static_cast<size_t>(hi - lo)};
}

} // namespace fclsh
