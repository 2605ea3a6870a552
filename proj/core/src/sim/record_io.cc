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

#include "driftmit/sim/record_io.h"

#include <unistd.h>

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace driftmit {

namespace {

constexpr std::array<char, 4> kMagic = {'D', 'M', 'R', 'B'};
constexpr std::uint8_t kBinVersion = 1;
constexpr std::uint8_t kFlagFeedforward = 1;
constexpr std::uint8_t kFlagSeparate = 2;

template <typename T>
void put_le(std::string& buf, T value) {
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        buf.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xFF));
    }
}

template <typename T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw std::runtime_error("truncated binary record file");
    }
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    }
    return static_cast<T>(v);
}

// Little-endian, LSB-first bit packer.
class BitWriter {
   public:
    void push(bool bit) {
        if (count_ % 8 == 0) {
            bytes_.push_back(0);
        }
        if (bit) {
            bytes_.back() = static_cast<char>(bytes_.back() | (1 << (count_ % 8)));
        }
        ++count_;
    }
    const std::string& bytes() const { return bytes_; }

   private:
    std::string bytes_;
    std::size_t count_ = 0;
};

class BitReader {
   public:
    explicit BitReader(std::string bytes) : bytes_(std::move(bytes)) {}
    bool next() {
        bool bit = (static_cast<unsigned char>(bytes_.at(count_ / 8)) >> (count_ % 8)) & 1;
        ++count_;
        return bit;
    }

   private:
    std::string bytes_;
    std::size_t count_ = 0;
};

nlohmann::json bits_json(const BitString& b) {
    auto arr = nlohmann::json::array();
    for (std::size_t k = 0; k < b.width(); ++k) {
        arr.push_back(b.get(k) ? 1 : 0);
    }
    return arr;
}

nlohmann::json qubit_major(const std::vector<BitString>& slots, std::size_t n) {
    auto out = nlohmann::json::array();
    for (std::size_t q = 0; q < n; ++q) {
        auto row = nlohmann::json::array();
        for (const auto& s : slots) {
            row.push_back(s.get(q) ? 1 : 0);
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<BitString> from_qubit_major(const nlohmann::json& rows, std::size_t n) {
    if (!rows.is_array() || rows.size() != n) {
        throw std::runtime_error("record needs one bit array per qubit");
    }
    std::size_t length = rows[0].size();
    std::vector<BitString> slots(length, BitString(n));
    for (std::size_t q = 0; q < n; ++q) {
        if (rows[q].size() != length) {
            throw std::runtime_error("per-qubit bit arrays have different lengths");
        }
        for (std::size_t i = 0; i < length; ++i) {
            int v = rows[q][i].get<int>();
            if (v != 0 && v != 1) {
                throw std::runtime_error("record bits must be 0 or 1");
            }
            slots[i].set(q, v == 1);
        }
    }
    return slots;
}

std::string slot_string(const std::vector<BitString>& slots, std::size_t q) {
    std::string s;
    for (const auto& b : slots) {
        s.push_back(b.get(q) ? '1' : '0');
    }
    return s;
}

}  // namespace

std::string_view to_string(RecordFormat f) {
    switch (f) {
        case RecordFormat::jsonl:
            return "jsonl";
        case RecordFormat::bin:
            return "bin";
        case RecordFormat::csv:
            return "csv";
    }
    return "jsonl";
}

RecordFormat record_format_from_string(std::string_view name) {
    if (name == "jsonl") {
        return RecordFormat::jsonl;
    }
    if (name == "bin") {
        return RecordFormat::bin;
    }
    if (name == "csv") {
        return RecordFormat::csv;
    }
    throw std::invalid_argument("unknown record format: " + std::string(name));
}

nlohmann::json record_metadata(const RecordSetInfo& info, std::size_t n_shots) {
    return {
        {"format", "driftmit-records"},
        {"version", kArtifactVersion},
        {"num_qubits", info.num_qubits},
        {"scheme", to_string(info.plan.scheme)},
        {"j_max", info.plan.j_max},
        {"layout", to_string(info.plan.layout)},
        {"order", to_string(info.plan.order)},
        {"postselect_k", info.postselect_k},
        {"n_shots", n_shots},
        {"seed", info.seed},
        {"config_hash", hex64(info.config_hash)},
    };
}

RecordSetInfo info_from_metadata(const nlohmann::json& meta) {
    if (meta.value("format", "") != "driftmit-records") {
        throw std::runtime_error("not a driftmit record file");
    }
    RecordSetInfo info;
    info.num_qubits = meta.at("num_qubits").get<std::size_t>();
    info.plan.scheme = scheme_from_string(meta.at("scheme").get<std::string>());
    info.plan.j_max = meta.at("j_max").get<int>();
    info.plan.layout = layout_from_string(meta.at("layout").get<std::string>());
    info.plan.order = order_from_string(meta.at("order").get<std::string>());
    info.postselect_k = meta.at("postselect_k").get<int>();
    info.seed = meta.at("seed").get<std::uint64_t>();
    info.config_hash = std::stoull(meta.at("config_hash").get<std::string>(), nullptr, 16);
    return info;
}

void write_records_jsonl(std::ostream& out, const RecordSet& set) {
    std::size_t n = set.info.num_qubits;
    out << record_metadata(set.info, set.records.size()).dump() << '\n';
    for (const auto& r : set.records) {
        nlohmann::json j = {
            {"shot", r.shot},
            {"level", r.level},
            {"qubits", qubit_major(r.slots, n)},
            {"prep", bits_json(r.prep)},
            {"postselect", qubit_major(r.postselect, n)},
            {"ff_value", r.ff_value ? nlohmann::json(*r.ff_value) : nlohmann::json(nullptr)},
        };
        out << j.dump() << '\n';
    }
}

RecordSet read_records_jsonl(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty record file");
    }
    RecordSet set;
    auto meta = nlohmann::json::parse(line);
    set.info = info_from_metadata(meta);
    std::size_t n = set.info.num_qubits;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto j = nlohmann::json::parse(line);
        ShotRecord r;
        r.shot = j.at("shot").get<std::uint64_t>();
        r.level = j.at("level").get<int>();
        r.slots = from_qubit_major(j.at("qubits"), n);
        r.prep = BitString(n);
        const auto& prep = j.at("prep");
        if (prep.size() != n) {
            throw std::runtime_error("prep needs one bit per qubit");
        }
        for (std::size_t q = 0; q < n; ++q) {
            r.prep.set(q, prep[q].get<int>() == 1);
        }
        r.postselect = from_qubit_major(j.at("postselect"), n);
        if (!j.at("ff_value").is_null()) {
            r.ff_value = j.at("ff_value").get<double>();
        }
        set.records.push_back(std::move(r));
    }
    if (meta.at("n_shots").get<std::size_t>() != set.records.size()) {
        throw std::runtime_error("record count does not match the header");
    }
    return set;
}

void write_records_bin(std::ostream& out, const RecordSet& set) {
    const auto& info = set.info;
    std::size_t n = info.num_qubits;
    bool has_ff = false;
    std::size_t max_slots = 0;
    for (const auto& r : set.records) {
        has_ff = has_ff || r.ff_value.has_value();
        max_slots = std::max(max_slots, r.slots.size());
    }
    if (n > 0xFFFF || max_slots > 0xFFFF || set.records.size() > 0xFFFFFFFFu || info.postselect_k > 0xFF) {
        throw std::invalid_argument("record set exceeds binary format limits");
    }
    std::string buf(kMagic.begin(), kMagic.end());
    put_le<std::uint8_t>(buf, kBinVersion);
    std::uint8_t flags = (has_ff ? kFlagFeedforward : 0) | (info.plan.layout == Layout::separate ? kFlagSeparate : 0);
    put_le<std::uint8_t>(buf, flags);
    put_le<std::uint8_t>(buf, static_cast<std::uint8_t>(info.postselect_k));
    put_le<std::uint8_t>(buf, 0);
    put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(n));
    put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(max_slots));
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(set.records.size()));
    std::string meta = record_metadata(info, set.records.size()).dump();
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(meta.size()));
    buf += meta;
    for (const auto& r : set.records) {
        if (r.postselect.size() != static_cast<std::size_t>(info.postselect_k)) {
            throw std::invalid_argument("record post-selection count does not match the header");
        }
        put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(r.shot));
        put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(r.slots.size()));
        put_le<std::uint8_t>(buf, static_cast<std::uint8_t>(static_cast<std::int8_t>(r.level)));
        put_le<std::uint8_t>(buf, r.ff_value ? 1 : 0);
        if (r.ff_value) {
            std::uint64_t raw;
            std::memcpy(&raw, &*r.ff_value, sizeof raw);
            put_le<std::uint64_t>(buf, raw);
        }
        BitWriter bits;
        for (std::size_t q = 0; q < n; ++q) {
            bits.push(r.prep.get(q));
        }
        for (std::size_t q = 0; q < n; ++q) {
            for (const auto& s : r.postselect) {
                bits.push(s.get(q));
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            for (const auto& s : r.slots) {
                bits.push(s.get(q));
            }
        }
        buf += bits.bytes();
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

RecordSet read_records_bin(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || magic != kMagic) {
        throw std::runtime_error("binary record file has a bad magic number");
    }
    auto version = get_le<std::uint8_t>(in);
    if (version != kBinVersion) {
        throw std::runtime_error("unsupported binary record version " + std::to_string(version));
    }
    get_le<std::uint8_t>(in);  // flags are informational
    auto k = get_le<std::uint8_t>(in);
    get_le<std::uint8_t>(in);
    auto n = get_le<std::uint16_t>(in);
    get_le<std::uint16_t>(in);
    auto n_shots = get_le<std::uint32_t>(in);
    auto meta_len = get_le<std::uint32_t>(in);
    std::string meta(meta_len, '\0');
    if (!in.read(meta.data(), meta_len)) {
        throw std::runtime_error("truncated binary record metadata");
    }
    RecordSet set;
    set.info = info_from_metadata(nlohmann::json::parse(meta));
    if (set.info.num_qubits != n || set.info.postselect_k != k) {
        throw std::runtime_error("binary header disagrees with its metadata");
    }
    set.records.reserve(n_shots);
    for (std::uint32_t i = 0; i < n_shots; ++i) {
        ShotRecord r;
        r.shot = get_le<std::uint32_t>(in);
        auto slots = get_le<std::uint16_t>(in);
        r.level = static_cast<std::int8_t>(get_le<std::uint8_t>(in));
        auto rflags = get_le<std::uint8_t>(in);
        if (rflags & 1) {
            auto raw = get_le<std::uint64_t>(in);
            double v;
            std::memcpy(&v, &raw, sizeof v);
            r.ff_value = v;
        }
        std::size_t nbits = static_cast<std::size_t>(n) * (1 + k + slots);
        std::string bytes((nbits + 7) / 8, '\0');
        if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
            throw std::runtime_error("truncated binary record");
        }
        BitReader bits(std::move(bytes));
        r.prep = BitString(n);
        for (std::size_t q = 0; q < n; ++q) {
            r.prep.set(q, bits.next());
        }
        r.postselect.assign(k, BitString(n));
        for (std::size_t q = 0; q < n; ++q) {
            for (std::size_t s = 0; s < k; ++s) {
                r.postselect[s].set(q, bits.next());
            }
        }
        r.slots.assign(slots, BitString(n));
        for (std::size_t q = 0; q < n; ++q) {
            for (std::size_t s = 0; s < slots; ++s) {
                r.slots[s].set(q, bits.next());
            }
        }
        set.records.push_back(std::move(r));
    }
    return set;
}

void write_records_csv(std::ostream& out, const RecordSet& set) {
    std::size_t n = set.info.num_qubits;
    auto meta = record_metadata(set.info, set.records.size());
    out << "# " << meta.dump() << '\n';
    out << "shot,level,qubit,prep,postselect,sequence,ff_value\n";
    for (const auto& r : set.records) {
        for (std::size_t q = 0; q < n; ++q) {
            out << r.shot << ',' << r.level << ',' << q << ',' << (r.prep.get(q) ? 1 : 0) << ','
                << slot_string(r.postselect, q) << ',' << slot_string(r.slots, q) << ',';
            if (r.ff_value) {
                std::ostringstream v;
                v.precision(17);
                v << *r.ff_value;
                out << v.str();
            }
            out << '\n';
        }
    }
}

std::string serialize_records(const RecordSet& set, RecordFormat format) {
    std::ostringstream out;
    switch (format) {
        case RecordFormat::jsonl:
            write_records_jsonl(out, set);
            break;
        case RecordFormat::bin:
            write_records_bin(out, set);
            break;
        case RecordFormat::csv:
            write_records_csv(out, set);
            break;
    }
    return out.str();
}

RecordSet load_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open record file " + path.string());
    }
    std::array<char, 4> magic{};
    in.read(magic.data(), 4);
    in.clear();
    in.seekg(0);
    if (magic == kMagic) {
        return read_records_bin(in);
    }
    return read_records_jsonl(in);
}

void atomic_write_file(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace driftmit
