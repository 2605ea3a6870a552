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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "driftmit/sim/simulator.h"

namespace driftmit {
namespace {

RecordSet sample_set(bool post_selected, bool separate) {
    SequencePlan plan{Scheme::dummy, 2, separate ? Layout::separate : Layout::shared};
    auto c = make_config(3, 0.1, 0.05, BitString::from_string("101"), plan);
    c.twirl = true;
    if (post_selected) {
        c.prep.mode = PrepMode::post_selected;
        c.prep.postselect_k = 2;
        c.prep.x = {0.1, 0.1, 0.1};
    }
    c.feedforward = std::array<double, 2>{0.5, -2.0};
    auto set = run_shots(c, 257, 12);
    set.info.config_hash = 0x0123456789abcdefULL;
    return set;
}

void expect_same(const RecordSet& a, const RecordSet& b) {
    EXPECT_EQ(a.info.num_qubits, b.info.num_qubits);
    EXPECT_EQ(a.info.plan.scheme, b.info.plan.scheme);
    EXPECT_EQ(a.info.plan.j_max, b.info.plan.j_max);
    EXPECT_EQ(a.info.plan.layout, b.info.plan.layout);
    EXPECT_EQ(a.info.postselect_k, b.info.postselect_k);
    EXPECT_EQ(a.info.seed, b.info.seed);
    EXPECT_EQ(a.info.config_hash, b.info.config_hash);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i], b.records[i]) << "shot " << i;
    }
}

TEST(RecordIo, JsonlRoundTrip) {
    for (bool ps : {false, true}) {
        for (bool sep : {false, true}) {
            auto set = sample_set(ps, sep);
            std::stringstream ss(serialize_records(set, RecordFormat::jsonl));
            expect_same(set, read_records_jsonl(ss));
        }
    }
}

TEST(RecordIo, BinaryRoundTrip) {
    for (bool ps : {false, true}) {
        for (bool sep : {false, true}) {
            auto set = sample_set(ps, sep);
            std::stringstream ss(serialize_records(set, RecordFormat::bin));
            expect_same(set, read_records_bin(ss));
        }
    }
}

TEST(RecordIo, BinaryHeaderLayout) {
    auto set = sample_set(true, false);
    std::string bytes = serialize_records(set, RecordFormat::bin);
    ASSERT_GE(bytes.size(), 16u);
    EXPECT_EQ(bytes.substr(0, 4), "DMRB");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[5]) & 1u, 1u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 2u);
    auto u16 = [&](std::size_t off) {
        return static_cast<unsigned>(static_cast<unsigned char>(bytes[off])) |
               (static_cast<unsigned>(static_cast<unsigned char>(bytes[off + 1])) << 8);
    };
    EXPECT_EQ(u16(8), 3u);
    EXPECT_EQ(u16(10), 7u);
    EXPECT_EQ(u16(12) | (u16(14) << 16), 257u);
}

TEST(RecordIo, JsonlLayout) {
    auto set = sample_set(false, false);
    std::stringstream ss(serialize_records(set, RecordFormat::jsonl));
    std::string line;
    std::getline(ss, line);
    auto header = nlohmann::json::parse(line);
    EXPECT_EQ(header["format"], "driftmit-records");
    EXPECT_EQ(header["version"], std::string(kArtifactVersion));
    EXPECT_EQ(header["config_hash"], "0123456789abcdef");
    EXPECT_EQ(header["seed"], 12);
    std::getline(ss, line);
    auto first = nlohmann::json::parse(line);
    EXPECT_EQ(first["shot"], 0);
    ASSERT_EQ(first["qubits"].size(), 3u);
    EXPECT_EQ(first["qubits"][0].size(), 7u);
    EXPECT_TRUE(first.contains("ff_value"));
}

TEST(RecordIo, CsvHasMetadataAndRows) {
    auto set = sample_set(false, false);
    std::string csv = serialize_records(set, RecordFormat::csv);
    std::stringstream ss(csv);
    std::string meta;
    std::string header;
    std::getline(ss, meta);
    std::getline(ss, header);
    EXPECT_EQ(meta.rfind("# ", 0), 0u);
    EXPECT_EQ(header, "shot,level,qubit,prep,postselect,sequence,ff_value");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(ss, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 257u * 3u);
}

TEST(RecordIo, LoadDetectsFormatAndAtomicWrite) {
    auto dir = std::filesystem::temp_directory_path() / "driftmit_record_io_test";
    std::filesystem::create_directories(dir);
    auto set = sample_set(true, true);
    for (auto fmt : {RecordFormat::bin, RecordFormat::jsonl}) {
        auto path = dir / (std::string("records.") + std::string(to_string(fmt)));
        atomic_write_file(path, serialize_records(set, fmt));
        expect_same(set, load_records(path));
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        EXPECT_EQ(entry.path().filename().string().find(".tmp"), std::string::npos);
    }
    std::filesystem::remove_all(dir);
    EXPECT_THROW(load_records(dir / "missing.jsonl"), std::runtime_error);
}

TEST(RecordIo, Fnv1aKnownValues) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(RecordIo, MalformedInputIsRejected) {
    std::stringstream bad("{\"format\": \"something-else\"}\n");
    EXPECT_THROW(read_records_jsonl(bad), std::runtime_error);
    std::stringstream truncated(std::string("DMRB\x01", 5));
    EXPECT_THROW(read_records_bin(truncated), std::runtime_error);
    EXPECT_EQ(record_format_from_string("bin"), RecordFormat::bin);
    EXPECT_THROW(record_format_from_string("xml"), std::invalid_argument);
}

}  // namespace
}  // namespace driftmit
