#pragma once

#include <algorithm>
#include <cassert>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motzkin/errors.hpp"
#include "motzkin/path.hpp"

namespace motzkin {

// A Motzkin tree is a full binary tree (every vertex has 0 or 2 children)
// with a nonnegative integer label on each vertex. It encodes a Motzkin
// path: traversing in preorder, a vertex labeled k contributes F^k, and an
// interior vertex additionally wraps U <left subtree> D <right subtree>.
// Weight (= #edges + label sum) equals the length of the encoded path.
class MotzkinTree {
 public:
  MotzkinTree() = default;

  explicit MotzkinTree(int label) : label_(label) { check_label(label); }

  MotzkinTree(int label, MotzkinTree left, MotzkinTree right) : label_(label) {
    check_label(label);
    kids_.reserve(2);
    kids_.push_back(std::move(left));
    kids_.push_back(std::move(right));
  }

  int label() const noexcept { return label_; }
  void set_label(int label) {
    check_label(label);
    label_ = label;
  }

  bool leaf() const noexcept { return kids_.empty(); }

  const MotzkinTree& left() const { return kids_[0]; }
  const MotzkinTree& right() const { return kids_[1]; }
  MotzkinTree& left() { return kids_[0]; }
  MotzkinTree& right() { return kids_[1]; }

  /// #edges + sum of labels.
  int weight() const {
    int w = label_;
    if (!leaf()) w += 2 + left().weight() + right().weight();
    return w;
  }

  bool operator==(const MotzkinTree& o) const {
    return label_ == o.label_ && kids_ == o.kids_;
  }

 private:
  static void check_label(int label) {
    if (label < 0)
      throw ParseError(ParseError::Kind::NegativeLabel, 0,
                       "negative vertex label " + std::to_string(label));
  }

  int label_ = 0;
  std::vector<MotzkinTree> kids_;  // empty or exactly two
};

// ---------------------------------------------------------------------------
// S-expression format: Tree := Label | "(" Label " " Tree " " Tree ")".

inline std::string format_tree(const MotzkinTree& t) {
  if (t.leaf()) return std::to_string(t.label());
  return "(" + std::to_string(t.label()) + " " + format_tree(t.left()) + " " +
         format_tree(t.right()) + ")";
}

namespace detail {

struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::SyntaxError, pos,
                     what + " at position " + std::to_string(pos));
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  int label() {
    if (peek() == '-')
      throw ParseError(ParseError::Kind::NegativeLabel, pos,
                       "negative label at position " + std::to_string(pos));
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) fail("expected label");
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
    if (ec != std::errc{}) fail("label out of range");
    return value;
  }

  MotzkinTree tree() {
    if (peek() == '(') {
      ++pos;
      int lab = label();
      expect(' ');
      MotzkinTree l = tree();
      expect(' ');
      MotzkinTree r = tree();
      expect(')');
      return MotzkinTree(lab, std::move(l), std::move(r));
    }
    return MotzkinTree(label());
  }
};

}  // namespace detail

inline MotzkinTree parse_tree(std::string_view text) {
  detail::TreeParser p{text};
  MotzkinTree t = p.tree();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

// ---------------------------------------------------------------------------
// The path <-> tree correspondence.

namespace detail {

inline MotzkinTree parse_tree_word(std::span<const Step> w) {
  std::size_t i = 0;
  while (i < w.size() && w[i] == Step::Flat) ++i;
  int label = static_cast<int>(i);
  if (i == w.size()) return MotzkinTree(label);
  // w[i] == Up; the matching Down separates the two subtrees.
  std::size_t j = matching_down(w.subspan(i), 0) + i;
  return MotzkinTree(label, parse_tree_word(w.subspan(i + 1, j - i - 1)),
                     parse_tree_word(w.subspan(j + 1)));
}

inline void emit_tree_word(const MotzkinTree& t, std::vector<Step>& out) {
  out.insert(out.end(), static_cast<std::size_t>(t.label()), Step::Flat);
  if (t.leaf()) return;
  out.push_back(Step::Up);
  emit_tree_word(t.left(), out);
  out.push_back(Step::Down);
  emit_tree_word(t.right(), out);
}

}  // namespace detail

inline MotzkinTree path_to_tree(const MotzkinPath& p) {
  return detail::parse_tree_word(std::span<const Step>(p.steps()));
}

inline MotzkinPath tree_to_path(const MotzkinTree& t) {
  std::vector<Step> out;
  out.reserve(static_cast<std::size_t>(t.weight()));
  detail::emit_tree_word(t, out);
  return MotzkinPath(std::move(out));
}

/// Mirror image: swaps the two children of every interior vertex.
/// An involution; labels stay on their vertices.
inline MotzkinTree flip(const MotzkinTree& t) {
  if (t.leaf()) return t;
  return MotzkinTree(t.label(), flip(t.right()), flip(t.left()));
}

// ---------------------------------------------------------------------------
// Vertex addressing by turn sequence from the root. Addresses survive
// label edits and stay meaningful across structural rewrites as long as the
// prefix path to the vertex is unchanged.

enum class Turn : std::uint8_t { Left, Right };

struct VertexRef {
  std::vector<Turn> turns;

  static VertexRef root() { return {}; }
  bool is_root() const noexcept { return turns.empty(); }
  std::size_t depth() const noexcept { return turns.size(); }

  VertexRef child(Turn t) const {
    VertexRef r = *this;
    r.turns.push_back(t);
    return r;
  }
  VertexRef parent() const {
    assert(!is_root());
    VertexRef r = *this;
    r.turns.pop_back();
    return r;
  }
  Turn last_turn() const {
    assert(!is_root());
    return turns.back();
  }
  bool is_prefix_of(const VertexRef& other) const {
    return turns.size() <= other.turns.size() &&
           std::equal(turns.begin(), turns.end(), other.turns.begin());
  }

  std::string str() const {
    if (is_root()) return ".";
    std::string s;
    for (Turn t : turns) s.push_back(t == Turn::Left ? 'L' : 'R');
    return s;
  }

  auto operator<=>(const VertexRef&) const = default;
};

inline const MotzkinTree* resolve(const MotzkinTree& t, const VertexRef& ref) {
  const MotzkinTree* v = &t;
  for (Turn turn : ref.turns) {
    if (v->leaf()) return nullptr;
    v = (turn == Turn::Left) ? &v->left() : &v->right();
  }
  return v;
}

inline MotzkinTree* resolve(MotzkinTree& t, const VertexRef& ref) {
  return const_cast<MotzkinTree*>(resolve(std::as_const(t), ref));
}

// ---------------------------------------------------------------------------
// Vertex classification. A node is a non-root interior vertex, a leaf a
// non-root childless vertex; the root is neither. The trivial tree has no
// leaves.

enum class Side : std::uint8_t { Root, Left, Right };
enum class Kind : std::uint8_t { Root, Node, Leaf };

struct VertexClass {
  Side side = Side::Root;
  Kind kind = Kind::Root;
  int label = 0;
  bool operator==(const VertexClass&) const = default;
};

namespace detail {

template <typename F>
void preorder_walk(const MotzkinTree& t, VertexRef ref, Side side, F&& visit) {
  Kind kind = ref.is_root() ? Kind::Root : (t.leaf() ? Kind::Leaf : Kind::Node);
  visit(ref, VertexClass{side, kind, t.label()}, t);
  if (!t.leaf()) {
    preorder_walk(t.left(), ref.child(Turn::Left), Side::Left, visit);
    preorder_walk(t.right(), ref.child(Turn::Right), Side::Right, visit);
  }
}

}  // namespace detail

/// Preorder enumeration of all vertices with their classes.
inline std::vector<std::pair<VertexRef, VertexClass>> classify(const MotzkinTree& t) {
  std::vector<std::pair<VertexRef, VertexClass>> out;
  detail::preorder_walk(t, VertexRef::root(), Side::Root,
                        [&](const VertexRef& r, const VertexClass& c,
                            const MotzkinTree&) { out.emplace_back(r, c); });
  return out;
}

/// First leaf in preorder: the end of the all-left chain from the root.
inline std::optional<VertexRef> first_leaf(const MotzkinTree& t) {
  if (t.leaf()) return std::nullopt;
  VertexRef ref;
  const MotzkinTree* v = &t;
  while (!v->leaf()) {
    ref.turns.push_back(Turn::Left);
    v = &v->left();
  }
  return ref;
}

/// Last leaf in preorder: the end of the all-right chain from the root.
inline std::optional<VertexRef> last_leaf(const MotzkinTree& t) {
  if (t.leaf()) return std::nullopt;
  VertexRef ref;
  const MotzkinTree* v = &t;
  while (!v->leaf()) {
    ref.turns.push_back(Turn::Right);
    v = &v->right();
  }
  return ref;
}

// ---------------------------------------------------------------------------
// Leaf <-> node correspondences.
//
// {left leaves} <-> {right nodes} U {root}: a non-first left leaf maps to
// the nearest ancestor that is a right child; the first leaf maps to the
// root. Inverse: a right node (or the root) maps to the leftmost leaf of
// its subtree. Mirrored for {right leaves} <-> {left nodes} U {root}.

inline std::vector<std::pair<VertexRef, VertexRef>> left_leaf_correspondence(
    const MotzkinTree& t) {
  if (t.leaf()) throw TrivialTreeError();
  std::vector<std::pair<VertexRef, VertexRef>> pairs;
  detail::preorder_walk(
      t, VertexRef::root(), Side::Root,
      [&](const VertexRef& ref, const VertexClass& c, const MotzkinTree&) {
        if (c.kind != Kind::Leaf || c.side != Side::Left) return;
        VertexRef a = ref.parent();
        while (!a.is_root() && a.last_turn() != Turn::Right) a = a.parent();
        pairs.emplace_back(ref, a);  // a is the root exactly for the first leaf
      });
  return pairs;
}

inline std::vector<std::pair<VertexRef, VertexRef>> right_leaf_correspondence(
    const MotzkinTree& t) {
  if (t.leaf()) throw TrivialTreeError();
  std::vector<std::pair<VertexRef, VertexRef>> pairs;
  detail::preorder_walk(
      t, VertexRef::root(), Side::Root,
      [&](const VertexRef& ref, const VertexClass& c, const MotzkinTree&) {
        if (c.kind != Kind::Leaf || c.side != Side::Right) return;
        VertexRef a = ref.parent();
        while (!a.is_root() && a.last_turn() != Turn::Left) a = a.parent();
        pairs.emplace_back(ref, a);  // a is the root exactly for the last leaf
      });
  return pairs;
}

// ---------------------------------------------------------------------------
// Tree-side statistics, mirroring the path statistics that have a direct
// tree reading:
//   initial flats   <-> root label
//   doublerise (UU) <-> left 0-node
//   valley (DU)     <-> right 0-node
//   peak (UD)       <-> left 0-leaf
//   doublefall (DD) <-> right 0-leaf other than the last leaf
//   height of first peak/plateau <-> level of first leaf
//   downsteps landing at ground  <-> level of last leaf
//   plateau lengths <-> positive labels on left leaves

struct TreeStatistics {
  int initial_flats = 0;
  int doublerises = 0;
  int valleys = 0;
  int peaks = 0;
  int doublefalls = 0;
  std::optional<int> first_peak_plateau_height;
  int ground_returns = 0;
  std::vector<int> plateau_lengths;  // sorted ascending

  bool operator==(const TreeStatistics&) const = default;
};

inline TreeStatistics tree_stats(const MotzkinTree& t) {
  TreeStatistics st;
  st.initial_flats = t.label();
  if (t.leaf()) {
    // Trivial tree: the whole path is flat, one plateau of length = label.
    st.plateau_lengths.push_back(t.label());
    st.first_peak_plateau_height = 0;
    return st;
  }
  VertexRef last = *last_leaf(t);
  detail::preorder_walk(
      t, VertexRef::root(), Side::Root,
      [&](const VertexRef& ref, const VertexClass& c, const MotzkinTree&) {
        if (c.kind == Kind::Node) {
          if (c.label == 0) {
            if (c.side == Side::Left) ++st.doublerises;
            else ++st.valleys;
          }
        } else if (c.kind == Kind::Leaf) {
          if (c.side == Side::Left) {
            if (c.label == 0) ++st.peaks;
            else st.plateau_lengths.push_back(c.label);
          } else if (c.label == 0 && ref != last) {
            ++st.doublefalls;
          }
        }
      });
  st.first_peak_plateau_height = static_cast<int>(first_leaf(t)->depth());
  st.ground_returns = static_cast<int>(last.depth());
  std::sort(st.plateau_lengths.begin(), st.plateau_lengths.end());
  return st;
}

}  // namespace motzkin
