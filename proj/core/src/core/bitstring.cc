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

#include "driftmit/core/bitstring.h"

#include <bit>
#include <stdexcept>

namespace driftmit {

namespace {
constexpr std::size_t kWordBits = 64;
}

BitString::BitString(std::size_t width) : width_(width), words_((width + kWordBits - 1) / kWordBits, 0) {
}

BitString BitString::from_string(std::string_view bits) {
    BitString result(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') {
            result.set(k, true);
        } else if (bits[k] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(bits));
        }
    }
    return result;
}

BitString BitString::from_index(std::uint64_t index, std::size_t width) {
    if (width > kWordBits) {
        throw std::invalid_argument("from_index supports widths up to 64");
    }
    if (width < kWordBits && (index >> width) != 0) {
        throw std::invalid_argument("index does not fit in the requested width");
    }
    BitString result(width);
    if (width > 0) {
        result.words_[0] = index;
    }
    return result;
}

bool BitString::get(std::size_t k) const {
    if (k >= width_) {
        throw std::out_of_range("bit index out of range");
    }
    return (words_[k / kWordBits] >> (k % kWordBits)) & 1;
}

void BitString::set(std::size_t k, bool value) {
    if (k >= width_) {
        throw std::out_of_range("bit index out of range");
    }
    std::uint64_t bit = std::uint64_t{1} << (k % kWordBits);
    if (value) {
        words_[k / kWordBits] |= bit;
    } else {
        words_[k / kWordBits] &= ~bit;
    }
}

void BitString::flip(std::size_t k) {
    if (k >= width_) {
        throw std::out_of_range("bit index out of range");
    }
    words_[k / kWordBits] ^= std::uint64_t{1} << (k % kWordBits);
}

BitString& BitString::operator^=(const BitString& other) {
    if (other.width_ != width_) {
        throw std::invalid_argument("xor of bit strings with different widths");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

std::size_t BitString::popcount() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

bool BitString::none() const noexcept {
    for (auto w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t BitString::to_index() const {
    if (width_ > kWordBits) {
        throw std::invalid_argument("to_index supports widths up to 64");
    }
    return words_.empty() ? 0 : words_[0];
}

std::string BitString::str() const {
    std::string out(width_, '0');
    for (std::size_t k = 0; k < width_; ++k) {
        if (get(k)) {
            out[k] = '1';
        }
    }
    return out;
}

std::size_t BitString::hash() const noexcept {
    // FNV-1a over the words, mixed with the width.
    std::uint64_t h = 1469598103934665603ULL ^ width_;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) {
        return c;
    }
    // Compare as integers, most significant word first.
    for (std::size_t w = a.words_.size(); w-- > 0;) {
        if (auto c = a.words_[w] <=> b.words_[w]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

BitString fold_xor(std::span<const BitString> sequence) {
    if (sequence.empty()) {
        throw std::invalid_argument("fold_xor of an empty sequence");
    }
    BitString acc = sequence.front();
    for (std::size_t k = 1; k < sequence.size(); ++k) {
        acc ^= sequence[k];
    }
    return acc;
}

}  // namespace driftmit
