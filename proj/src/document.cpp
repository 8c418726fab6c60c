#include "formtree/document.hpp"

#include <fstream>
#include <sstream>

#include "formtree/error.hpp"

namespace formtree {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw ParseError(ParseError::Code::Malformed, path, what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(path, std::string("missing required key \"") + key + "\"");
  return *it;
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) malformed(path, "expected a string");
  return v.get<std::string>();
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) malformed(path, "expected a number");
  return v.get<double>();
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return string_at(*it, path + "/" + key);
}

}  // namespace

json node_to_json(const QueryNode& node) {
  if (node.is_leaf()) return json{{"leaf", node.field_id()}};
  json children = json::array();
  for (const auto& c : node.children()) children.push_back(node_to_json(c));
  return json{{"group", std::move(children)}};
}

QueryNode node_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) malformed(path, "node must be an object");
  const bool has_leaf = doc.contains("leaf");
  const bool has_group = doc.contains("group");
  if (has_leaf && has_group) malformed(path, "node has both \"leaf\" and \"group\"");
  if (has_leaf) {
    auto id = string_at(doc["leaf"], path + "/leaf");
    if (id.empty()) malformed(path + "/leaf", "leaf id is empty");
    return QueryNode::leaf(std::move(id));
  }
  if (!has_group)
    throw ParseError(ParseError::Code::UnknownNodeKind, path,
                     "node is neither {\"leaf\": ...} nor {\"group\": [...]}");
  const json& arr = doc["group"];
  if (!arr.is_array()) malformed(path + "/group", "group must be an array");
  if (arr.size() < 2)
    throw ParseError(ParseError::Code::UndersizedGroup, path + "/group",
                     "group needs at least 2 children, got " + std::to_string(arr.size()));
  std::vector<QueryNode> children;
  children.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    children.push_back(node_from_json(arr[i], path + "/group/" + std::to_string(i)));
  return QueryNode::group(std::move(children));
}

json serialize_tree(const QueryTree& tree) {
  return json{{"layout", tree.layout_name}, {"root", node_to_json(tree.root)}};
}

QueryTree parse_tree(const json& doc) {
  if (!doc.is_object()) malformed("", "tree document must be an object");
  QueryTree tree;
  if (auto name = optional_string(doc, "layout", "")) tree.layout_name = *name;
  tree.root = node_from_json(member(doc, "root", ""), "/root");
  return tree;
}

json layout_to_json(const Layout& layout) {
  json doc;
  doc["name"] = layout.name;
  if (layout.domain) doc["domain"] = *layout.domain;
  if (layout.source) doc["source"] = *layout.source;
  json fields = json::array();
  for (const auto& f : layout.fields) {
    json jf;
    jf["id"] = f.id;
    if (f.label) jf["label"] = *f.label;
    jf["kind"] = std::string(to_string(f.kind));
    jf["bbox"] = {{"x", f.bbox.x}, {"y", f.bbox.y}, {"w", f.bbox.w}, {"h", f.bbox.h}};
    if (f.order_index) jf["order_index"] = *f.order_index;
    fields.push_back(std::move(jf));
  }
  doc["fields"] = std::move(fields);
  return doc;
}

Layout layout_from_json(const json& doc) {
  if (!doc.is_object()) malformed("", "layout document must be an object");
  Layout layout;
  layout.name = string_at(member(doc, "name", ""), "/name");
  layout.domain = optional_string(doc, "domain", "");
  layout.source = optional_string(doc, "source", "");
  const json& fields = member(doc, "fields", "");
  if (!fields.is_array()) malformed("/fields", "expected an array");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string path = "/fields/" + std::to_string(i);
    const json& jf = fields[i];
    if (!jf.is_object()) malformed(path, "field must be an object");
    Field f;
    f.id = string_at(member(jf, "id", path), path + "/id");
    f.label = optional_string(jf, "label", path);
    const auto kind_name = string_at(member(jf, "kind", path), path + "/kind");
    auto kind = control_kind_from_string(kind_name);
    if (!kind) malformed(path + "/kind", "unknown control kind \"" + kind_name + "\"");
    f.kind = *kind;
    const json& jb = member(jf, "bbox", path);
    const std::string bpath = path + "/bbox";
    if (!jb.is_object()) malformed(bpath, "bbox must be an object");
    f.bbox.x = number_at(member(jb, "x", bpath), bpath + "/x");
    f.bbox.y = number_at(member(jb, "y", bpath), bpath + "/y");
    f.bbox.w = number_at(member(jb, "w", bpath), bpath + "/w");
    f.bbox.h = number_at(member(jb, "h", bpath), bpath + "/h");
    if (auto it = jf.find("order_index"); it != jf.end() && !it->is_null()) {
      if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0))
        malformed(path + "/order_index", "expected a nonnegative integer");
      f.order_index = it->get<std::uint64_t>();
    }
    layout.fields.push_back(std::move(f));
  }
  return layout;
}

std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Code::Malformed, "",
                     "'" + path.string() + "' is not valid JSON (byte " +
                         std::to_string(e.byte) + ")");
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

}  // namespace formtree
