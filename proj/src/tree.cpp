#include "formtree/tree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "formtree/error.hpp"

namespace formtree {

std::string_view to_string(ControlKind kind) {
  switch (kind) {
    case ControlKind::Text: return "text";
    case ControlKind::Select: return "select";
    case ControlKind::Radio: return "radio";
    case ControlKind::Checkbox: return "checkbox";
    case ControlKind::Button: return "button";
    case ControlKind::Textarea: return "textarea";
    case ControlKind::Other: return "other";
  }
  return "other";
}

std::optional<ControlKind> control_kind_from_string(std::string_view name) {
  static constexpr ControlKind kAll[] = {ControlKind::Text,     ControlKind::Select,
                                         ControlKind::Radio,    ControlKind::Checkbox,
                                         ControlKind::Button,   ControlKind::Textarea,
                                         ControlKind::Other};
  for (auto kind : kAll)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

const Field* Layout::find(std::string_view id) const {
  for (const auto& f : fields)
    if (f.id == id) return &f;
  return nullptr;
}

std::vector<LayoutViolation> validate_layout(const Layout& layout) {
  std::vector<LayoutViolation> out;
  if (layout.fields.empty())
    out.push_back({LayoutViolation::Kind::NoFields, "", "layout has no fields"});
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < layout.fields.size(); ++i) {
    const Field& f = layout.fields[i];
    if (f.id.empty())
      out.push_back({LayoutViolation::Kind::EmptyId, "",
                     "field #" + std::to_string(i) + " has an empty id"});
    else if (!seen.insert(f.id).second)
      out.push_back({LayoutViolation::Kind::DuplicateId, f.id, "duplicate field id '" + f.id + "'"});
    if (!is_valid(f.bbox))
      out.push_back({LayoutViolation::Kind::InvalidBox, f.id,
                     "field '" + f.id + "' has a non-positive or non-finite bbox"});
  }
  return out;
}

void require_valid(const Layout& layout) {
  auto violations = validate_layout(layout);
  if (violations.empty()) return;
  std::string msg = "invalid layout '" + layout.name + "':";
  for (const auto& v : violations) msg += "\n  " + v.message;
  throw InputError(msg);
}

QueryNode QueryNode::leaf(std::string field_id) { return QueryNode(Leaf{std::move(field_id)}); }

QueryNode QueryNode::group(std::vector<QueryNode> children) {
  return QueryNode(Group{std::move(children)});
}

const std::string& QueryNode::field_id() const { return std::get<Leaf>(value_).field_id; }

const std::vector<QueryNode>& QueryNode::children() const {
  static const std::vector<QueryNode> kNone;
  if (const auto* g = std::get_if<Group>(&value_)) return g->children;
  return kNone;
}

std::vector<QueryNode>& QueryNode::mutable_children() { return std::get<Group>(value_).children; }

void QueryNode::collect_leaf_ids(std::vector<std::string>& out) const {
  if (is_leaf()) {
    out.push_back(field_id());
    return;
  }
  for (const auto& c : children()) c.collect_leaf_ids(out);
}

std::vector<std::string> QueryNode::leaf_ids() const {
  std::vector<std::string> out;
  collect_leaf_ids(out);
  return out;
}

std::size_t QueryNode::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children()) n += c.leaf_count();
  return n;
}

std::size_t QueryNode::depth() const {
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.depth() + 1);
  return d;
}

std::string QueryNode::to_brackets() const {
  if (is_leaf()) return field_id();
  std::string s = "[";
  for (std::size_t i = 0; i < children().size(); ++i) {
    if (i) s += ',';
    s += children()[i].to_brackets();
  }
  return s + "]";
}

bool QueryNode::operator==(const QueryNode& other) const {
  if (is_leaf() != other.is_leaf()) return false;
  if (is_leaf()) return field_id() == other.field_id();
  const auto& a = children();
  const auto& b = other.children();
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool tree_equals(const QueryTree& a, const QueryTree& b) { return a.root == b.root; }

namespace {

std::optional<std::string> mismatch_at(const QueryNode& a, const QueryNode& b,
                                       const std::string& path) {
  if (a.is_leaf() != b.is_leaf()) return path;
  if (a.is_leaf()) return a.field_id() == b.field_id() ? std::nullopt : std::optional(path);
  const auto& ca = a.children();
  const auto& cb = b.children();
  for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i)
    if (auto m = mismatch_at(ca[i], cb[i], path + "/group/" + std::to_string(i))) return m;
  if (ca.size() != cb.size()) return path;
  return std::nullopt;
}

void check_node(const QueryNode& node, const std::string& path,
                std::vector<TreeViolation>& out, std::map<std::string, int>& counts) {
  if (node.is_leaf()) {
    ++counts[node.field_id()];
    return;
  }
  if (node.children().size() < 2)
    out.push_back({TreeViolation::Kind::UndersizedGroup, path.empty() ? "/" : path});
  for (std::size_t i = 0; i < node.children().size(); ++i)
    check_node(node.children()[i], path + "/group/" + std::to_string(i), out, counts);
}

}  // namespace

std::optional<std::string> first_mismatch(const QueryNode& a, const QueryNode& b) {
  auto m = mismatch_at(a, b, "");
  if (m && m->empty()) return std::string("/");
  return m;
}

std::string_view to_string(TreeViolation::Kind kind) {
  switch (kind) {
    case TreeViolation::Kind::UnknownLeaf: return "UnknownLeaf";
    case TreeViolation::Kind::MissingField: return "MissingField";
    case TreeViolation::Kind::DuplicatedField: return "DuplicatedField";
    case TreeViolation::Kind::UndersizedGroup: return "UndersizedGroup";
  }
  return "?";
}

std::vector<TreeViolation> validate_tree(const QueryTree& tree, const Layout& layout) {
  std::vector<TreeViolation> out;
  std::map<std::string, int> counts;
  check_node(tree.root, "", out, counts);
  for (const auto& [id, n] : counts) {
    if (!layout.find(id))
      out.push_back({TreeViolation::Kind::UnknownLeaf, id});
    else if (n > 1)
      out.push_back({TreeViolation::Kind::DuplicatedField, id});
  }
  for (const auto& f : layout.fields)
    if (!counts.contains(f.id)) out.push_back({TreeViolation::Kind::MissingField, f.id});
  return out;
}

std::vector<Field> reading_order(std::vector<Field> fields, const GeometryConfig& cfg) {
  const bool explicit_order = !fields.empty() && std::all_of(fields.begin(), fields.end(), [](const Field& f) {
    return f.order_index.has_value();
  });
  if (explicit_order) {
    std::sort(fields.begin(), fields.end(), [](const Field& a, const Field& b) {
      if (*a.order_index != *b.order_index) return *a.order_index < *b.order_index;
      return a.id < b.id;
    });
    return fields;
  }

  std::sort(fields.begin(), fields.end(), [](const Field& a, const Field& b) {
    if (a.bbox.top() != b.bbox.top()) return a.bbox.top() < b.bbox.top();
    if (a.bbox.left() != b.bbox.left()) return a.bbox.left() < b.bbox.left();
    return a.id < b.id;
  });
  // Band index per field: a band opens at the topmost remaining field and
  // takes every later field within tolerance of that top edge.
  std::vector<std::size_t> band(fields.size(), 0);
  double band_top = fields.empty() ? 0.0 : fields.front().bbox.top();
  std::size_t current = 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].bbox.top() - band_top > cfg.align_tolerance) {
      ++current;
      band_top = fields[i].bbox.top();
    }
    band[i] = current;
  }
  std::vector<std::size_t> idx(fields.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (band[a] != band[b]) return band[a] < band[b];
    if (fields[a].bbox.left() != fields[b].bbox.left())
      return fields[a].bbox.left() < fields[b].bbox.left();
    return fields[a].id < fields[b].id;
  });
  std::vector<Field> out;
  out.reserve(fields.size());
  for (auto i : idx) out.push_back(std::move(fields[i]));
  return out;
}

namespace {

std::size_t min_rank(const QueryNode& node,
                     const std::unordered_map<std::string, std::size_t>& rank) {
  if (node.is_leaf()) {
    auto it = rank.find(node.field_id());
    return it == rank.end() ? std::numeric_limits<std::size_t>::max() : it->second;
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& c : node.children()) best = std::min(best, min_rank(c, rank));
  return best;
}

QueryNode normalized(const QueryNode& node,
                     const std::unordered_map<std::string, std::size_t>& rank) {
  if (node.is_leaf()) return node;
  std::vector<std::pair<std::size_t, QueryNode>> keyed;
  for (const auto& c : node.children()) keyed.emplace_back(min_rank(c, rank), normalized(c, rank));
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<QueryNode> children;
  for (auto& [_, c] : keyed) children.push_back(std::move(c));
  return QueryNode::group(std::move(children));
}

}  // namespace

QueryNode normalize_order(const QueryNode& node, const Layout& layout, const GeometryConfig& cfg) {
  std::unordered_map<std::string, std::size_t> rank;
  auto ordered = reading_order(layout.fields, cfg);
  for (std::size_t i = 0; i < ordered.size(); ++i) rank.emplace(ordered[i].id, i);
  return normalized(node, rank);
}

}  // namespace formtree
