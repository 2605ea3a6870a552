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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "driftmit/sim/shot_record.h"

namespace driftmit {

/// Artifact version embedded in every output.
inline constexpr std::string_view kArtifactVersion = "0.1.0";

enum class RecordFormat { jsonl, bin, csv };
std::string_view to_string(RecordFormat f);
RecordFormat record_format_from_string(std::string_view name);

/// Metadata object shared by all formats (the JSONL header line and the
/// binary metadata block).
nlohmann::json record_metadata(const RecordSetInfo& info, std::size_t n_shots);
RecordSetInfo info_from_metadata(const nlohmann::json& meta);

/// Record serialization. Layouts are documented in docs/formats.md.
void write_records_jsonl(std::ostream& out, const RecordSet& set);
void write_records_bin(std::ostream& out, const RecordSet& set);
void write_records_csv(std::ostream& out, const RecordSet& set);
RecordSet read_records_jsonl(std::istream& in);
RecordSet read_records_bin(std::istream& in);

std::string serialize_records(const RecordSet& set, RecordFormat format);
/// Detects the binary format by its magic bytes; anything else is read as JSONL.
RecordSet load_records(const std::filesystem::path& path);

/// Writes to a temporary file in the same directory, then renames it over
/// `path`, so readers never see a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view contents);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace driftmit
