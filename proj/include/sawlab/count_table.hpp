#pragma once

#include "sawlab/bigint.hpp"
#include "sawlab/errors.hpp"

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sawlab {

// Index -> arbitrary-precision count, defined for 0 <= n <= max_n.
class CountTable {
public:
    CountTable() = default;
    explicit CountTable(std::size_t max_n) : counts_(max_n + 1, BigInt(0)) {}
    explicit CountTable(std::vector<BigInt> counts) : counts_(std::move(counts)) {}

    std::size_t max_n() const { return counts_.empty() ? 0 : counts_.size() - 1; }
    const BigInt& at(std::size_t n) const { return counts_.at(n); }
    BigInt& at(std::size_t n) { return counts_.at(n); }
    const std::vector<BigInt>& counts() const { return counts_; }

    BigInt total() const {
        BigInt t = 0;
        for (const auto& c : counts_) t += c;
        return t;
    }

private:
    std::vector<BigInt> counts_;
};

// (i, j) -> arbitrary-precision count, with semantic axis labels.
class JointCountTable {
public:
    using Key = std::pair<long, long>;

    JointCountTable() = default;
    JointCountTable(std::string axis1, std::string axis2)
        : axis1_(std::move(axis1)), axis2_(std::move(axis2)) {}

    const std::string& axis1() const { return axis1_; }
    const std::string& axis2() const { return axis2_; }

    BigInt& at(long i, long j) { return counts_[{i, j}]; }
    BigInt get(long i, long j) const {
        auto it = counts_.find({i, j});
        return it == counts_.end() ? BigInt(0) : it->second;
    }
    const std::map<Key, BigInt>& entries() const { return counts_; }
    bool empty() const { return counts_.empty(); }

    // Sum over the second axis at fixed first index.
    BigInt marginal_first(long i) const {
        BigInt t = 0;
        for (auto it = counts_.lower_bound({i, std::numeric_limits<long>::min()});
             it != counts_.end() && it->first.first == i; ++it)
            t += it->second;
        return t;
    }

    // Sum over the first axis at fixed second index.
    BigInt marginal_second(long j) const {
        BigInt t = 0;
        for (const auto& [k, v] : counts_)
            if (k.second == j) t += v;
        return t;
    }

    BigInt total() const {
        BigInt t = 0;
        for (const auto& [k, v] : counts_) t += v;
        return t;
    }

private:
    std::string axis1_;
    std::string axis2_;
    std::map<Key, BigInt> counts_;
};

} // namespace sawlab
