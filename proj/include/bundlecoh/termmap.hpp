#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bundlecoh/rational.hpp"
#include "bundlecoh/ring.hpp"

namespace bundlecoh {

// Accumulation map from Monomial to Rational: open addressing over a dense
// entry vector. Entries are never moved by the probe table, so iteration is
// contiguous; zero coefficients are dropped lazily by compact().
class FlatTermMap {
  public:
    using Entry = std::pair<Monomial, Rational>;
    using const_iterator = std::vector<Entry>::const_iterator;

    FlatTermMap() = default;

    std::size_t size() const { return entries_.size() - zeros_; }
    bool empty() const { return size() == 0; }
    void clear() {
        table_.clear();
        entries_.clear();
        zeros_ = 0;
        mask_ = 0;
    }

    void reserve(std::size_t n) {
        if (n * 2 > table_.size()) rehash(n * 2);
        entries_.reserve(n);
    }

    const Rational* find(const Monomial& m) const {
        if (table_.empty()) return nullptr;
        std::size_t pos = MonomialHash{}(m)&mask_;
        while (true) {
            std::uint32_t idx = table_[pos];
            if (idx == 0) return nullptr;
            const Entry& e = entries_[idx - 1];
            if (e.first == m) return e.second == 0 ? nullptr : &e.second;
            pos = (pos + 1) & mask_;
        }
    }

    // Returns the accumulator cell for m, inserting a zero entry if absent.
    Rational& slot(const Monomial& m) {
        if (entries_.size() + 1 > capacity_threshold()) rehash(entries_.size() * 2 + 16);
        std::size_t pos = MonomialHash{}(m)&mask_;
        while (true) {
            std::uint32_t idx = table_[pos];
            if (idx == 0) {
                entries_.emplace_back(m, Rational());
                table_[pos] = static_cast<std::uint32_t>(entries_.size());
                ++zeros_;  // fresh entries start at zero
                return entries_.back().second;
            }
            Entry& e = entries_[idx - 1];
            if (e.first == m) return e.second;
            pos = (pos + 1) & mask_;
        }
    }

    // Call after mutating slots: updates the zero count (and compacts when
    // zeros pile up). `was_zero`/`is_zero` describe the mutated cell.
    void note_update(bool was_zero, bool now_zero) {
        if (was_zero && !now_zero)
            --zeros_;
        else if (!was_zero && now_zero)
            ++zeros_;
    }

    void add(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        Rational& cell = slot(m);
        bool was_zero = cell == 0;
        cell += c;
        note_update(was_zero, cell == 0);
    }

    // Drops zero entries and rebuilds the table.
    void compact() {
        if (zeros_ == 0) return;
        std::vector<Entry> keep;
        keep.reserve(size());
        for (auto& e : entries_)
            if (e.second != 0) keep.push_back(std::move(e));
        entries_ = std::move(keep);
        zeros_ = 0;
        rebuild_table();
    }

    // Iteration over possibly-zero entries; callers skip zeros (compact()
    // first when exposing externally).
    const_iterator begin() const { return entries_.begin(); }
    const_iterator end() const { return entries_.end(); }
    bool has_zeros() const { return zeros_ != 0; }

  private:
    std::size_t capacity_threshold() const { return table_.size() / 2; }

    void rehash(std::size_t want) {
        std::size_t cap = 16;
        while (cap < want * 2) cap <<= 1;
        table_.assign(cap, 0);
        mask_ = cap - 1;
        for (std::size_t i = 0; i < entries_.size(); ++i) place(i);
    }

    void rebuild_table() {
        if (table_.empty()) return;
        std::fill(table_.begin(), table_.end(), 0);
        for (std::size_t i = 0; i < entries_.size(); ++i) place(i);
    }

    void place(std::size_t i) {
        std::size_t pos = MonomialHash{}(entries_[i].first) & mask_;
        while (table_[pos] != 0) pos = (pos + 1) & mask_;
        table_[pos] = static_cast<std::uint32_t>(i + 1);
    }

    std::vector<std::uint32_t> table_;
    std::vector<Entry> entries_;
    std::size_t zeros_ = 0;
    std::size_t mask_ = 0;
};

}  // namespace bundlecoh
