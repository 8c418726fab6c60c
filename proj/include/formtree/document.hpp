#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "formtree/tree.hpp"

namespace formtree {

// Tree documents:
//   node := {"leaf": <id>} | {"group": [node, node, ...]}
//   tree := {"layout": <name>, "root": node}
// Extra keys on a node (for instance a "label" on a gold group) are ignored.
//
// Layout documents:
//   {"name": str, "domain": str?, "source": str?,
//    "fields": [{"id": str, "label": str?, "kind": str,
//                "bbox": {"x": num, "y": num, "w": num, "h": num},
//                "order_index": int?}]}

nlohmann::json node_to_json(const QueryNode& node);
QueryNode node_from_json(const nlohmann::json& doc, const std::string& path = "");

nlohmann::json serialize_tree(const QueryTree& tree);
QueryTree parse_tree(const nlohmann::json& doc);

/// Schema checks only; semantic checks live in validate_layout.
nlohmann::json layout_to_json(const Layout& layout);
Layout layout_from_json(const nlohmann::json& doc);

/// Canonical text form: two-space indent plus trailing newline.
std::string to_text(const nlohmann::json& doc);

/// Throws InputError when the file cannot be read, ParseError when it is not
/// JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace formtree
