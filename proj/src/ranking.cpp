// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/ranking.hpp"

#include <algorithm>
#include <utility>

#include "rank_consensus/errors.hpp"

namespace rank_consensus {

ItemId::ItemId(std::string token) : token_(std::move(token))
{
    if (token_.empty()) {
        throw ParseError("item identifier must not be empty");
    }
}

Ranking::Ranking(std::vector<TieBlock> blocks) : blocks_(std::move(blocks))
{
    if (blocks_.empty()) {
        throw ParseError("a ranking needs at least one item");
    }
    int block_index = 0;
    for (const auto& block : blocks_) {
        ++block_index;
        if (block.empty()) {
            throw ParseError("empty tie block at position " + std::to_string(block_index));
        }
        for (const auto& item : block) {
            if (!position_.emplace(item, block_index).second) {
                throw ParseError("item '" + item.token() + "' appears twice in one ranking");
            }
            items_.push_back(item);
            block_of_.push_back(block_index);
        }
    }
}

Ranking Ranking::strict(std::vector<ItemId> items)
{
    std::vector<TieBlock> blocks;
    blocks.reserve(items.size());
    for (auto& item : items) {
        blocks.push_back(TieBlock{std::move(item)});
    }
    return Ranking(std::move(blocks));
}

Ranking Ranking::strict(std::initializer_list<const char*> items)
{
    std::vector<ItemId> ids;
    ids.reserve(items.size());
    for (const char* token : items) {
        ids.emplace_back(token);
    }
    return strict(std::move(ids));
}

int Ranking::position(const ItemId& item) const
{
    const auto it = position_.find(item);
    return it == position_.end() ? 0 : it->second;
}

Ranking Ranking::prefix(std::size_t k) const
{
    std::vector<TieBlock> kept;
    std::size_t taken = 0;
    for (const auto& block : blocks_) {
        if (taken == k) {
            break;
        }
        TieBlock part;
        for (const auto& item : block) {
            if (taken == k) {
                break;
            }
            part.push_back(item);
            ++taken;
        }
        kept.push_back(std::move(part));
    }
    return Ranking(std::move(kept));
}

RankingSet::RankingSet(std::vector<Ranking> rankings) : rankings_(std::move(rankings))
{
    if (rankings_.empty()) {
        throw ParseError("a ranking set needs at least one ranking");
    }
    for (const auto& ranking : rankings_) {
        universe_.insert(universe_.end(), ranking.items().begin(), ranking.items().end());
    }
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    index_.reserve(universe_.size());
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        index_.emplace(universe_[i], static_cast<int>(i));
    }
}

int RankingSet::index_of(const ItemId& item) const
{
    const auto it = index_.find(item);
    return it == index_.end() ? -1 : it->second;
}

RankingSet RankingSet::subset(const std::vector<bool>& drop) const
{
    std::vector<Ranking> kept;
    for (std::size_t l = 0; l < rankings_.size(); ++l) {
        if (l >= drop.size() || !drop[l]) {
            kept.push_back(rankings_[l]);
        }
    }
    return RankingSet(std::move(kept));
}

int position(const ItemId& item, const Ranking& ranking) { return ranking.position(item); }

bool contains_pattern(const ItemId& x, const ItemId& y, const Ranking& ranking)
{
    const int px = ranking.position(x);
    const int py = ranking.position(y);
    return px >= 1 && py >= 1 && px <= py;
}

}  // namespace rank_consensus
