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

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace aerocf {

// Dense row-major K x L table, indexed (uav, oru) throughout the library.
template <typename T>
class Grid
{
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, const T &fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    T &at(std::size_t r, std::size_t c)
    {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("Grid index out of range.");
        return data_[r * cols_ + c];
    }
    const T &at(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("Grid index out of range.");
        return data_[r * cols_ + c];
    }

    const std::vector<T> &data() const noexcept { return data_; }

    bool operator==(const Grid &other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

} // namespace aerocf
