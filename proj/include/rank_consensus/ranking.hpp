// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rank_consensus {

/// Opaque candidate identifier. Equality is exact, case-sensitive token equality.
class ItemId {
public:
    explicit ItemId(std::string token);
    ItemId(const char* token) : ItemId(std::string(token)) {}

    [[nodiscard]] const std::string& token() const noexcept { return token_; }

    friend bool operator==(const ItemId&, const ItemId&) = default;
    friend auto operator<=>(const ItemId&, const ItemId&) = default;

private:
    std::string token_;
};

struct ItemIdHash {
    std::size_t operator()(const ItemId& id) const noexcept { return std::hash<std::string>{}(id.token()); }
};

using TieBlock = std::vector<ItemId>;

/**
 * An ordered list of tie blocks. Every item in block p is preferred to every
 * item in block p+1. A strict ranking has only singleton blocks.
 *
 * Items keep the order they were given in, so `items()` is the flattened
 * sequence r_1..r_m used to index support matrices.
 */
class Ranking {
public:
    /// Throws ParseError on an empty ranking, an empty block or a repeated item.
    explicit Ranking(std::vector<TieBlock> blocks);

    /// Strict ranking from an item sequence.
    static Ranking strict(std::vector<ItemId> items);
    static Ranking strict(std::initializer_list<const char*> items);

    [[nodiscard]] const std::vector<TieBlock>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::span<const ItemId> items() const noexcept { return items_; }
    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
    [[nodiscard]] bool is_strict() const noexcept { return blocks_.size() == items_.size(); }

    /// 1-based block index of `item`, or 0 when it is not ranked.
    [[nodiscard]] int position(const ItemId& item) const;
    [[nodiscard]] bool contains(const ItemId& item) const { return position(item) != 0; }

    /// Block index of the i-th flattened item (1-based).
    [[nodiscard]] int position_at(std::size_t i) const { return block_of_[i]; }

    /// Keeps the first `k` flattened items; tie blocks cut by the boundary are truncated.
    [[nodiscard]] Ranking prefix(std::size_t k) const;

    friend bool operator==(const Ranking& a, const Ranking& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<TieBlock> blocks_;
    std::vector<ItemId> items_;
    std::vector<int> block_of_;
    std::unordered_map<ItemId, int, ItemIdHash> position_;
};

/// Immutable collection of N >= 1 rankings and the universe of items they mention.
class RankingSet {
public:
    explicit RankingSet(std::vector<Ranking> rankings);

    [[nodiscard]] std::size_t size() const noexcept { return rankings_.size(); }
    [[nodiscard]] const Ranking& operator[](std::size_t l) const { return rankings_[l]; }
    [[nodiscard]] const Ranking& at(std::size_t l) const { return rankings_.at(l); }
    [[nodiscard]] std::span<const Ranking> rankings() const noexcept { return rankings_; }

    /// Sorted, duplicate-free union of all ranked items.
    [[nodiscard]] std::span<const ItemId> universe() const noexcept { return universe_; }

    /// Dense index of `item` in `universe()`, or -1.
    [[nodiscard]] int index_of(const ItemId& item) const;

    /// Rankings whose index is not in `drop` (a per-ranking mask of size N).
    [[nodiscard]] RankingSet subset(const std::vector<bool>& drop) const;

    friend bool operator==(const RankingSet& a, const RankingSet& b) { return a.rankings_ == b.rankings_; }

private:
    std::vector<Ranking> rankings_;
    std::vector<ItemId> universe_;
    std::unordered_map<ItemId, int, ItemIdHash> index_;
};

/// 1-based block position of `item` in `ranking`; 0 when absent.
[[nodiscard]] int position(const ItemId& item, const Ranking& ranking);

/**
 * True when x is ranked no lower than y in `ranking`, i.e. the pattern xy is
 * contained in it. Tied items contain both orders; x == y tests membership.
 */
[[nodiscard]] bool contains_pattern(const ItemId& x, const ItemId& y, const Ranking& ranking);

}  // namespace rank_consensus
