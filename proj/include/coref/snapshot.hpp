#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "coref/graph.hpp"

namespace coref {

// Binary graph snapshot, little-endian throughout:
//   magic "CRG1", version u16,
//   author_count u64, paper_count u64, edge_count u64,
//   author->paper offsets  (author_count + 1) x u64,
//   paper->author offsets  (paper_count + 1)  x u64,
//   author->paper neighbor row  edge_count x u32,
//   paper->author neighbor row  edge_count x u32,
//   name table: per author {canonical: u32 len + bytes, suffix flag u8 (+4
//   digit bytes)}, per paper {key: u32 len + bytes, year flag u8 (+ i32),
//   title: u32 len + bytes}.
// Serialization is deterministic; save -> load -> save is byte-identical.

std::string serialize_snapshot(const BipartiteGraph& g);
BipartiteGraph deserialize_snapshot(std::string_view bytes);

void save_snapshot(const BipartiteGraph& g, const std::filesystem::path& path);
BipartiteGraph load_snapshot(const std::filesystem::path& path);

}  // namespace coref
