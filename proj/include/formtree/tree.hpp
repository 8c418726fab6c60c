#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "formtree/geometry.hpp"

namespace formtree {

enum class ControlKind { Text, Select, Radio, Checkbox, Button, Textarea, Other };

std::string_view to_string(ControlKind kind);
std::optional<ControlKind> control_kind_from_string(std::string_view name);

/// One interactive form control.
struct Field {
  std::string id;
  std::optional<std::string> label;
  ControlKind kind = ControlKind::Other;
  BoundingBox bbox;
  /// Document order, when known. Overrides geometric reading order.
  std::optional<std::uint64_t> order_index;

  bool operator==(const Field&) const = default;
};

/// One query interface: the extraction input.
struct Layout {
  std::string name;
  std::optional<std::string> domain;
  std::optional<std::string> source;
  std::vector<Field> fields;

  const Field* find(std::string_view id) const;

  bool operator==(const Layout&) const = default;
};

struct LayoutViolation {
  enum class Kind { NoFields, EmptyId, DuplicateId, InvalidBox };
  Kind kind;
  std::string field_id;
  std::string message;
};

std::vector<LayoutViolation> validate_layout(const Layout& layout);

/// Throws InputError listing every violation.
void require_valid(const Layout& layout);

/// Ordered tree node: a leaf naming a field, or a group of child nodes.
/// Groups are unlabeled.
class QueryNode {
 public:
  static QueryNode leaf(std::string field_id);
  static QueryNode group(std::vector<QueryNode> children);

  bool is_leaf() const { return std::holds_alternative<Leaf>(value_); }
  bool is_group() const { return !is_leaf(); }

  /// Precondition: is_leaf().
  const std::string& field_id() const;
  /// Empty for leaves.
  const std::vector<QueryNode>& children() const;
  std::vector<QueryNode>& mutable_children();

  /// Leaf ids in left-to-right order.
  std::vector<std::string> leaf_ids() const;
  void collect_leaf_ids(std::vector<std::string>& out) const;
  std::size_t leaf_count() const;
  std::size_t depth() const;

  /// Compact single-line form, e.g. "[[From,To],Class]".
  std::string to_brackets() const;

  /// Ordered structural equality.
  bool operator==(const QueryNode& other) const;

 private:
  struct Leaf {
    std::string field_id;
  };
  struct Group {
    std::vector<QueryNode> children;
  };

  explicit QueryNode(Leaf l) : value_(std::move(l)) {}
  explicit QueryNode(Group g) : value_(std::move(g)) {}

  std::variant<Leaf, Group> value_;
};

struct QueryTree {
  QueryNode root = QueryNode::leaf("");
  std::string layout_name;

  bool operator==(const QueryTree& other) const {
    return layout_name == other.layout_name && root == other.root;
  }
};

/// Recursive ordered structural equality of the two roots. The layout name is
/// metadata and is not compared.
bool tree_equals(const QueryTree& a, const QueryTree& b);

/// JSON-pointer-like path of the first node where the two trees differ, or
/// nullopt when they are equal.
std::optional<std::string> first_mismatch(const QueryNode& a, const QueryNode& b);

struct TreeViolation {
  enum class Kind { UnknownLeaf, MissingField, DuplicatedField, UndersizedGroup };
  Kind kind;
  /// Field id for leaf problems, node path for undersized groups.
  std::string where;
};

std::string_view to_string(TreeViolation::Kind kind);

/// One record per breach of the tree invariants against `layout`; empty when
/// the tree is well formed.
std::vector<TreeViolation> validate_tree(const QueryTree& tree, const Layout& layout);

/// Top-to-bottom, left-to-right order. When every field has an order_index,
/// that order is used instead. Fields whose top edges lie within
/// `cfg.align_tolerance` of a band's first field share the band; ties fall
/// back to the field id.
std::vector<Field> reading_order(std::vector<Field> fields, const GeometryConfig& cfg = {});

/// Re-sorts every sibling list by the smallest reading-order rank of the
/// child's leaves. Leaves unknown to `layout` sort last.
QueryNode normalize_order(const QueryNode& node, const Layout& layout,
                          const GeometryConfig& cfg = {});

}  // namespace formtree
