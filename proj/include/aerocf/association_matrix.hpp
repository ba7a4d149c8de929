// SPDX-License-Identifier: Apache-2.0
//
// aerocf - uplink resource management for cell-free aerial networks
// Copyright (C) 2026 The aerocf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aerocf {

/// Binary K x L UAV/O-RU association. Entry (k, l) = 1 when O-RU l serves UAV k.
class AssociationMatrix
{
public:
    AssociationMatrix() = default;
    AssociationMatrix(int num_uavs, int num_orus)
        : k_(num_uavs), l_(num_orus), cells_(static_cast<std::size_t>(num_uavs) * num_orus, 0),
          row_sums_(static_cast<std::size_t>(num_uavs), 0), col_sums_(static_cast<std::size_t>(num_orus), 0)
    {
        if (num_uavs < 0 || num_orus < 0)
            throw std::invalid_argument("Association dimensions cannot be negative.");
    }

    int num_uavs() const noexcept { return k_; }
    int num_orus() const noexcept { return l_; }

    bool operator()(int k, int l) const { return cells_[index(k, l)] != 0; }

    /// Sets entry (k, l); returns false if it was already set.
    bool set(int k, int l)
    {
        auto &cell = cells_[index(k, l)];
        if (cell)
            return false;
        cell = 1;
        ++row_sums_[k];
        ++col_sums_[l];
        return true;
    }

    int row_sum(int k) const { return row_sums_.at(static_cast<std::size_t>(k)); }
    int col_sum(int l) const { return col_sums_.at(static_cast<std::size_t>(l)); }

    std::vector<int> serving_orus(int k) const
    {
        std::vector<int> out;
        for (int l = 0; l < l_; ++l)
            if ((*this)(k, l))
                out.push_back(l);
        return out;
    }

    /// Every UAV served by at least one O-RU and no O-RU above capacity.
    bool satisfies_constraints(int capacity) const
    {
        for (int k = 0; k < k_; ++k)
            if (row_sums_[k] < 1)
                return false;
        for (int l = 0; l < l_; ++l)
            if (col_sums_[l] > capacity)
                return false;
        return true;
    }

    int total() const
    {
        int n = 0;
        for (int s : row_sums_)
            n += s;
        return n;
    }

    bool operator==(const AssociationMatrix &) const = default;

private:
    std::size_t index(int k, int l) const
    {
        if (k < 0 || k >= k_ || l < 0 || l >= l_)
            throw std::out_of_range("Association index out of range.");
        return static_cast<std::size_t>(k) * l_ + l;
    }

    int k_ = 0;
    int l_ = 0;
    std::vector<std::uint8_t> cells_;
    std::vector<int> row_sums_;
    std::vector<int> col_sums_;
};

} // namespace aerocf
