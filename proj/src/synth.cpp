#include "formtree/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "formtree/error.hpp"

namespace formtree {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  // Reject the low 2^64 mod span values so every residue is equally likely.
  const std::uint64_t threshold = (0 - span) % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % span);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double SeparationCertificate::ratio() const {
  if (max_intra_group == 0.0) return std::numeric_limits<double>::infinity();
  return min_inter_group / max_intra_group;
}

namespace {

constexpr int kMaxAttempts = 1000;
constexpr std::size_t kMaxFields = 10000;

void require_range(const Range& r, const char* name) {
  if (r.min < 1 || r.max < r.min)
    throw InputError(std::string("synth spec: range ") + name + " must satisfy 1 <= min <= max");
}

// A planned block. Level 0 is a row of fields, higher levels stack blocks.
struct Block {
  int level = 0;
  std::vector<Block> children;
  std::vector<std::int64_t> widths;
  std::int64_t gap = 0;
  std::int64_t height = 0;
  // Filled by placement.
  std::int64_t top = 0;
  std::int64_t bottom = 0;
  std::int64_t right = 0;
};

class Generator {
 public:
  Generator(const SynthSpec& spec, const GeometryConfig& geometry)
      : spec_(spec), geometry_(geometry), rng_(spec.seed) {}

  SynthCase run() {
    const char* failure = "";
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Block root = plan(spec_.nesting_depth);
      if (count_fields(root) > kMaxFields)
        throw GenerationError("synth spec produces more than " + std::to_string(kMaxFields) +
                              " fields");
      compute_spacing(root);
      std::int64_t y = 0;
      place(root, y);
      if (!right_edges_separated(root)) {
        failure = "right edges of adjacent sibling blocks must differ by more than "
                  "align_tolerance + 2 * jitter";
        continue;
      }
      SynthCase out;
      out.layout.name = "synth-" + std::to_string(spec_.seed);
      out.layout.domain = "depth" + std::to_string(spec_.nesting_depth);
      out.layout.source = "synthetic";
      rows_.clear();
      std::size_t next_id = 0;
      QueryNode gold = emit(root, out.layout, next_id);
      apply_jitter(out.layout);
      out.gold = QueryTree{std::move(gold), out.layout.name};
      out.certificate = certify(out.layout);
      if (out.certificate.ratio() < spec_.gap_ratio) {
        failure = "min inter-group distance >= gap_ratio * max intra-group link distance";
        continue;
      }
      return out;
    }
    throw GenerationError(std::string("synth: constraint not met after ") +
                          std::to_string(kMaxAttempts) + " attempts: " + failure);
  }

 private:
  std::int64_t draw(const Range& r) { return uniform_int(rng_, r.min, r.max); }

  Block plan(int level) {
    Block b;
    b.level = level;
    if (level == 0) {
      const auto n = draw(spec_.fields_per_group);
      b.gap = draw(spec_.intra_gap);
      b.height = draw(spec_.field_height);
      for (std::int64_t i = 0; i < n; ++i) b.widths.push_back(draw(spec_.field_size));
      return b;
    }
    const auto n = draw(spec_.n_groups);
    for (std::int64_t i = 0; i < n; ++i) b.children.push_back(plan(level - 1));
    return b;
  }

  static std::size_t count_fields(const Block& b) {
    if (b.level == 0) return b.widths.size();
    std::size_t n = 0;
    for (const auto& c : b.children) n += count_fields(c);
    return n;
  }

  static std::int64_t max_gap(const Block& b) {
    if (b.level == 0) return b.widths.size() > 1 ? b.gap : 0;
    std::int64_t g = 0;
    for (const auto& c : b.children) g = std::max(g, max_gap(c));
    return g;
  }

  // Vertical gap between sibling blocks at each level. Elements in different
  // rows share at most the left and right edges, so their distance is at
  // least (gap - 2 * jitter) / 2. Within a block the worst chained link is
  // bounded by `chain`; the gap keeps the cross distance gap_ratio above it.
  void compute_spacing(const Block& root) {
    const double j = static_cast<double>(spec_.jitter);
    const double floor = std::min(geometry_.align_floor, 1.0);
    double chain = spec_.jitter == 0 ? static_cast<double>(max_gap(root)) / 3.0
                                     : (static_cast<double>(max_gap(root)) + 2.0 * j) / floor;
    spacing_.assign(static_cast<std::size_t>(spec_.nesting_depth) + 1, 0);
    for (int level = 1; level <= spec_.nesting_depth; ++level) {
      const double gap = std::max(2.0 * spec_.gap_ratio * chain + 2.0 * j,
                                  geometry_.align_tolerance + 2.0 * j + 1.0);
      spacing_[level] = static_cast<std::int64_t>(std::ceil(gap)) + 1;
      // Left edges stay within tolerance only without jitter.
      chain = (static_cast<double>(spacing_[level]) + 2.0 * j) / (spec_.jitter == 0 ? 1.0 : floor);
    }
  }

  void place(Block& b, std::int64_t& y) {
    b.top = y;
    if (b.level == 0) {
      std::int64_t x = 0;
      for (std::size_t i = 0; i < b.widths.size(); ++i) {
        if (i) x += b.gap;
        x += b.widths[i];
      }
      b.right = x;
      y += b.height;
      b.bottom = y;
      return;
    }
    b.right = 0;
    for (std::size_t i = 0; i < b.children.size(); ++i) {
      if (i) y += spacing_[b.level];
      place(b.children[i], y);
      b.right = std::max(b.right, b.children[i].right);
    }
    b.bottom = y;
  }

  bool right_edges_separated(const Block& b) const {
    const double need = geometry_.align_tolerance + 2.0 * static_cast<double>(spec_.jitter);
    for (std::size_t i = 0; i < b.children.size(); ++i) {
      if (!right_edges_separated(b.children[i])) return false;
      if (i && std::abs(static_cast<double>(b.children[i].right - b.children[i - 1].right)) <= need)
        return false;
    }
    return true;
  }

  QueryNode emit(const Block& b, Layout& layout, std::size_t& next_id) {
    static constexpr ControlKind kKinds[] = {ControlKind::Text, ControlKind::Select,
                                             ControlKind::Radio, ControlKind::Checkbox};
    if (b.level == 0) {
      std::vector<QueryNode> leaves;
      std::vector<std::size_t> row;
      std::int64_t x = 0;
      for (std::size_t i = 0; i < b.widths.size(); ++i) {
        if (i) x += b.gap;
        char id[16];
        std::snprintf(id, sizeof id, "f%03zu", next_id);
        Field f;
        f.id = id;
        f.label = "Field " + std::to_string(next_id);
        f.kind = kKinds[uniform_int(rng_, 0, 3)];
        f.bbox = BoundingBox{static_cast<double>(x), static_cast<double>(b.top),
                             static_cast<double>(b.widths[i]), static_cast<double>(b.height)};
        row.push_back(layout.fields.size());
        layout.fields.push_back(std::move(f));
        leaves.push_back(QueryNode::leaf(id));
        x += b.widths[i];
        ++next_id;
      }
      rows_.push_back(std::move(row));
      if (leaves.size() == 1) return std::move(leaves.front());
      return QueryNode::group(std::move(leaves));
    }
    std::vector<QueryNode> children;
    for (const auto& c : b.children) children.push_back(emit(c, layout, next_id));
    if (children.size() == 1) return std::move(children.front());
    return QueryNode::group(std::move(children));
  }

  void apply_jitter(Layout& layout) {
    if (spec_.jitter == 0) return;
    for (auto& f : layout.fields) {
      f.bbox.x += static_cast<double>(uniform_int(rng_, -spec_.jitter, spec_.jitter));
      f.bbox.y += static_cast<double>(uniform_int(rng_, -spec_.jitter, spec_.jitter));
    }
  }

  // Links are adjacent fields of one row; inter-group pairs are every pair of
  // fields from different rows.
  SeparationCertificate certify(const Layout& layout) const {
    SeparationCertificate cert;
    cert.min_inter_group = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> row_of(layout.fields.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t k = 0; k < rows_[r].size(); ++k) {
        row_of[rows_[r][k]] = r;
        if (k)
          cert.max_intra_group = std::max(
              cert.max_intra_group, pair_distance(layout.fields[rows_[r][k - 1]].bbox,
                                                  layout.fields[rows_[r][k]].bbox, geometry_));
      }
    }
    for (std::size_t a = 0; a < layout.fields.size(); ++a)
      for (std::size_t b = a + 1; b < layout.fields.size(); ++b)
        if (row_of[a] != row_of[b])
          cert.min_inter_group = std::min(
              cert.min_inter_group,
              pair_distance(layout.fields[a].bbox, layout.fields[b].bbox, geometry_));
    return cert;
  }

  const SynthSpec& spec_;
  GeometryConfig geometry_;
  std::mt19937_64 rng_;
  std::vector<std::int64_t> spacing_;
  std::vector<std::vector<std::size_t>> rows_;
};

}  // namespace

void require_valid(const SynthSpec& spec) {
  require_range(spec.n_groups, "n_groups");
  require_range(spec.fields_per_group, "fields_per_group");
  require_range(spec.intra_gap, "intra_gap");
  require_range(spec.field_size, "field_size");
  require_range(spec.field_height, "field_height");
  if (!(spec.gap_ratio > 1.0) || !std::isfinite(spec.gap_ratio))
    throw InputError("synth spec: gap_ratio must be finite and > 1");
  if (spec.jitter < 0) throw InputError("synth spec: jitter must be >= 0");
  if (spec.nesting_depth < 1) throw InputError("synth spec: nesting_depth must be >= 1");
}

SynthCase generate(const SynthSpec& spec, const GeometryConfig& geometry) {
  require_valid(spec);
  require_valid(geometry);
  return Generator(spec, geometry).run();
}

}  // namespace formtree
