// Copyright 2026 The driftmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace driftmit {

/// A packed, fixed-width vector of bits.
///
/// Used for measurement outcomes, XOR flip masks and physical qubit states.
/// Bit k of a width-n string refers to qubit k; when a string is converted to
/// an outcome index, qubit 0 is the least significant bit. The textual form
/// lists bit 0 first, so "1001" has bits 0 and 3 set (index 9).
class BitString {
   public:
    BitString() = default;
    explicit BitString(std::size_t width);

    /// Parses a string of '0'/'1' characters; character k becomes bit k.
    static BitString from_string(std::string_view bits);
    /// Width must be at most 64.
    static BitString from_index(std::uint64_t index, std::size_t width);

    std::size_t width() const noexcept { return width_; }
    bool get(std::size_t k) const;
    void set(std::size_t k, bool value);
    void flip(std::size_t k);
    bool operator[](std::size_t k) const { return get(k); }

    BitString& operator^=(const BitString& other);
    friend BitString operator^(BitString a, const BitString& b) {
        a ^= b;
        return a;
    }

    std::size_t popcount() const noexcept;
    bool none() const noexcept;
    /// XOR of all bits.
    bool parity() const noexcept { return popcount() & 1; }

    /// Outcome index with qubit 0 as least significant bit. Requires width <= 64.
    std::uint64_t to_index() const;
    std::string str() const;

    std::span<const std::uint64_t> words() const noexcept { return {words_.data(), words_.size()}; }
    std::size_t hash() const noexcept;

    friend bool operator==(const BitString& a, const BitString& b) = default;
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

   private:
    std::size_t width_ = 0;
    // One inline word covers registers up to 64 qubits without allocating.
    boost::container::small_vector<std::uint64_t, 1> words_;
};

struct BitStringHash {
    std::size_t operator()(const BitString& b) const noexcept { return b.hash(); }
};

/// XOR-fold of a sequence of equal-width strings. An empty sequence is an error
/// because the result width would be unknown.
BitString fold_xor(std::span<const BitString> sequence);

}  // namespace driftmit
