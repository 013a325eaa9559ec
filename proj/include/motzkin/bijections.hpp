#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "motzkin/errors.hpp"
#include "motzkin/path.hpp"
#include "motzkin/tree.hpp"

namespace motzkin {

/// Every map below has two independent descriptions: a rewriting recursion
/// on the path driven by the first return to ground level, and an explicit
/// construction on the corresponding tree. Checked mode runs both and
/// demands equality.
enum class Mode { Recursive, Explicit, Checked };

enum class BijectionId { B1, B2, B3, B4, B5, Involution };

enum class InvolutionForm { Segment, Composition, Checked };

namespace detail {

inline void require_avoids(const MotzkinPath& p, Pattern q, const char* map_name) {
  if (count_pattern(p, q) != 0)
    throw DomainError(std::string(map_name) + ": input \"" + p.str() +
                      "\" contains " + std::string(pattern_name(q)));
}

inline void require_nonempty(const MotzkinPath& p, const char* map_name) {
  if (p.empty())
    throw DomainError(std::string(map_name) + ": input must be nonempty");
}

inline void append_flats(std::vector<Step>& out, int k) {
  out.insert(out.end(), static_cast<std::size_t>(k), Step::Flat);
}

// Leading/trailing flat scan of an arch interior; core is empty iff the
// interior is all flats.
struct InteriorSplit {
  int leading = 0;
  std::span<const Step> core;
  int trailing = 0;
};

inline InteriorSplit split_interior(std::span<const Step> w) {
  std::size_t first = 0;
  while (first < w.size() && w[first] == Step::Flat) ++first;
  if (first == w.size()) return {static_cast<int>(first), {}, 0};
  std::size_t last = w.size() - 1;
  while (w[last] == Step::Flat) --last;
  return {static_cast<int>(first), w.subspan(first, last - first + 1),
          static_cast<int>(w.size() - 1 - last)};
}

// --- recursive forms -------------------------------------------------------

// phi(e) = e, phi(FR) = F phi(R), phi(URDS) = U phi(S) D phi(R).
inline void b1_rec(std::span<const Step> w, std::vector<Step>& out) {
  if (w.empty()) return;
  if (w[0] == Step::Flat) {
    out.push_back(Step::Flat);
    b1_rec(w.subspan(1), out);
    return;
  }
  std::size_t j = matching_down(w, 0);
  out.push_back(Step::Up);
  b1_rec(w.subspan(j + 1), out);
  out.push_back(Step::Down);
  b1_rec(w.subspan(1, j - 1), out);
}

// phi(e) = F, phi(FR) = F phi(R), phi(U F^a D R) = U phi(R) D F^a,
// phi(U F^a S F^b D R) = U phi(R) D phi(F^b S F^{a-1})  (S strict, a >= 1).
inline void b2_rec(std::span<const Step> w, std::vector<Step>& out) {
  if (w.empty()) {
    out.push_back(Step::Flat);
    return;
  }
  if (w[0] == Step::Flat) {
    out.push_back(Step::Flat);
    b2_rec(w.subspan(1), out);
    return;
  }
  std::size_t j = matching_down(w, 0);
  auto interior = w.subspan(1, j - 1);
  auto rest = w.subspan(j + 1);
  InteriorSplit in = split_interior(interior);
  out.push_back(Step::Up);
  b2_rec(rest, out);
  out.push_back(Step::Down);
  if (in.core.empty()) {
    append_flats(out, in.leading);
  } else {
    assert(in.leading >= 1);  // guaranteed by UU-freeness
    std::vector<Step> arg;
    arg.reserve(interior.size() - 1);
    arg.insert(arg.end(), static_cast<std::size_t>(in.trailing), Step::Flat);
    arg.insert(arg.end(), in.core.begin(), in.core.end());
    arg.insert(arg.end(), static_cast<std::size_t>(in.leading - 1), Step::Flat);
    b2_rec(arg, out);
  }
}

// phi(e) = F, phi(FR) = F phi(R), phi(UDR) = U phi(R) D,
// phi(UFRDS) = U phi(R) D phi(S).
inline void b3_rec(std::span<const Step> w, std::vector<Step>& out) {
  if (w.empty()) {
    out.push_back(Step::Flat);
    return;
  }
  if (w[0] == Step::Flat) {
    out.push_back(Step::Flat);
    b3_rec(w.subspan(1), out);
    return;
  }
  std::size_t j = matching_down(w, 0);
  auto interior = w.subspan(1, j - 1);
  auto rest = w.subspan(j + 1);
  if (interior.empty()) {
    out.push_back(Step::Up);
    b3_rec(rest, out);
    out.push_back(Step::Down);
    return;
  }
  assert(interior[0] == Step::Flat);  // guaranteed by UU-freeness
  out.push_back(Step::Up);
  b3_rec(interior.subspan(1), out);
  out.push_back(Step::Down);
  b3_rec(rest, out);
}

// phi(e) = F, phi(FR) = F phi(R), phi(UDR) = U phi(R) D,
// phi(UFRDS) = U phi(S) D phi(R).
inline void b4_rec(std::span<const Step> w, std::vector<Step>& out) {
  if (w.empty()) {
    out.push_back(Step::Flat);
    return;
  }
  if (w[0] == Step::Flat) {
    out.push_back(Step::Flat);
    b4_rec(w.subspan(1), out);
    return;
  }
  std::size_t j = matching_down(w, 0);
  auto interior = w.subspan(1, j - 1);
  auto rest = w.subspan(j + 1);
  if (interior.empty()) {
    out.push_back(Step::Up);
    b4_rec(rest, out);
    out.push_back(Step::Down);
    return;
  }
  assert(interior[0] == Step::Flat);
  out.push_back(Step::Up);
  b4_rec(rest, out);
  out.push_back(Step::Down);
  b4_rec(interior.subspan(1), out);
}

// phi(e) = F, phi(FR) = F phi(R), phi(URD) = U phi(R) D,
// phi(URDFS) = U phi(R) D phi(S).
inline void b5_rec(std::span<const Step> w, std::vector<Step>& out) {
  if (w.empty()) {
    out.push_back(Step::Flat);
    return;
  }
  if (w[0] == Step::Flat) {
    out.push_back(Step::Flat);
    b5_rec(w.subspan(1), out);
    return;
  }
  std::size_t j = matching_down(w, 0);
  auto interior = w.subspan(1, j - 1);
  auto rest = w.subspan(j + 1);
  out.push_back(Step::Up);
  b5_rec(interior, out);
  out.push_back(Step::Down);
  if (!rest.empty()) {
    assert(rest[0] == Step::Flat);  // guaranteed by DU-freeness
    b5_rec(rest.subspan(1), out);
  }
}

template <void (*Rec)(std::span<const Step>, std::vector<Step>&)>
MotzkinPath run_rec(const MotzkinPath& p) {
  std::vector<Step> out;
  out.reserve(p.size() + 1);
  Rec(std::span<const Step>(p.steps()), out);
  return MotzkinPath(std::move(out));
}

// --- explicit forms --------------------------------------------------------

inline void exchange_left_leaf_labels(MotzkinTree& t) {
  for (const auto& [leaf_ref, corr_ref] : left_leaf_correspondence(t)) {
    MotzkinTree* leaf = resolve(t, leaf_ref);
    MotzkinTree* corr = resolve(t, corr_ref);
    int tmp = leaf->label();
    leaf->set_label(corr->label());
    corr->set_label(tmp);
  }
}

// Moves one token from every right node and from the root to the leftmost
// leaf of its subtree. Shared by bijections 4 and 5.
inline void slide_tokens_to_left_leaves(MotzkinTree& t) {
  for (const auto& [leaf_ref, src_ref] : left_leaf_correspondence(t)) {
    MotzkinTree* leaf = resolve(t, leaf_ref);
    MotzkinTree* src = resolve(t, src_ref);
    if (src->label() < 1)
      throw DomainError("token transfer from an unlabeled vertex");
    src->set_label(src->label() - 1);
    leaf->set_label(leaf->label() + 1);
  }
}

inline void slide_tokens_back_from_left_leaves(MotzkinTree& t) {
  for (const auto& [leaf_ref, dst_ref] : left_leaf_correspondence(t)) {
    MotzkinTree* leaf = resolve(t, leaf_ref);
    MotzkinTree* dst = resolve(t, dst_ref);
    if (leaf->label() < 1)
      throw DomainError("token transfer from an unlabeled leaf");
    leaf->set_label(leaf->label() - 1);
    dst->set_label(dst->label() + 1);
  }
}

inline void slide_tokens_to_right_leaves(MotzkinTree& t) {
  for (const auto& [leaf_ref, src_ref] : right_leaf_correspondence(t)) {
    MotzkinTree* leaf = resolve(t, leaf_ref);
    MotzkinTree* src = resolve(t, src_ref);
    if (src->label() < 1)
      throw DomainError("token transfer from an unlabeled vertex");
    src->set_label(src->label() - 1);
    leaf->set_label(leaf->label() + 1);
  }
}

inline void slide_tokens_back_from_right_leaves(MotzkinTree& t) {
  for (const auto& [leaf_ref, dst_ref] : right_leaf_correspondence(t)) {
    MotzkinTree* leaf = resolve(t, leaf_ref);
    MotzkinTree* dst = resolve(t, dst_ref);
    if (leaf->label() < 1)
      throw DomainError("token transfer from an unlabeled leaf");
    leaf->set_label(leaf->label() - 1);
    dst->set_label(dst->label() + 1);
  }
}

inline void decrement_root(MotzkinTree& t, const char* map_name) {
  if (t.label() < 1)
    throw DomainError(std::string(map_name) + ": input is not in the image");
  t.set_label(t.label() - 1);
}

// Subtree moves for bijection 3, step 3. At each snapshot parent the left
// child is a 0-leaf: the right subtree moves into the left slot and a fresh
// 0-leaf takes the right slot (and mirrored for the inverse). Moves at
// distinct parents are local and commute, so any processing order gives the
// same tree; pending addresses only need the turn at a processed ancestor
// flipped when the move carried them across.
inline std::vector<VertexRef> collect_move_parents(const MotzkinTree& t,
                                                   Side child_side) {
  std::vector<VertexRef> parents;
  detail::preorder_walk(t, VertexRef::root(), Side::Root,
                        [&](const VertexRef& ref, const VertexClass&,
                            const MotzkinTree& v) {
                          if (v.leaf()) return;
                          const MotzkinTree& child =
                              child_side == Side::Left ? v.left() : v.right();
                          if (child.leaf() && child.label() == 0)
                            parents.push_back(ref);
                        });
  return parents;
}

inline void apply_subtree_moves(MotzkinTree& t, Side zero_leaf_side,
                                std::span<const std::size_t> order) {
  std::vector<VertexRef> pending = collect_move_parents(t, zero_leaf_side);
  std::vector<std::size_t> default_order;
  if (order.empty()) {
    default_order.resize(pending.size());
    std::iota(default_order.begin(), default_order.end(), std::size_t{0});
    order = default_order;
  }
  if (order.size() != pending.size())
    throw std::invalid_argument("move order must be a permutation of the snapshot");
  const Turn from = zero_leaf_side == Side::Left ? Turn::Right : Turn::Left;
  const Turn to = zero_leaf_side == Side::Left ? Turn::Left : Turn::Right;
  for (std::size_t idx : order) {
    const VertexRef q = pending.at(idx);
    MotzkinTree* parent = resolve(t, q);
    assert(parent && !parent->leaf());
    if (zero_leaf_side == Side::Left) {
      parent->left() = std::move(parent->right());
      parent->right() = MotzkinTree(0);
    } else {
      parent->right() = std::move(parent->left());
      parent->left() = MotzkinTree(0);
    }
    for (VertexRef& r : pending) {
      if (r.depth() > q.depth() && q.is_prefix_of(r) &&
          r.turns[q.depth()] == from)
        r.turns[q.depth()] = to;
    }
  }
}

inline MotzkinPath b1_explicit(const MotzkinPath& p) {
  return tree_to_path(flip(path_to_tree(p)));
}

inline MotzkinPath b2_explicit(const MotzkinPath& p) {
  MotzkinTree t = flip(path_to_tree(p));
  t.set_label(t.label() + 1);
  if (!t.leaf()) exchange_left_leaf_labels(t);
  return tree_to_path(t);
}

inline MotzkinPath b3_explicit(const MotzkinPath& p,
                               std::span<const std::size_t> move_order = {}) {
  MotzkinTree t = path_to_tree(p);
  t.set_label(t.label() + 1);
  if (!t.leaf()) {
    slide_tokens_to_right_leaves(t);
    apply_subtree_moves(t, Side::Left, move_order);
  }
  return tree_to_path(t);
}

inline MotzkinPath b4_explicit(const MotzkinPath& p) {
  MotzkinTree t = flip(path_to_tree(p));
  t.set_label(t.label() + 1);
  if (!t.leaf()) slide_tokens_to_left_leaves(t);
  return tree_to_path(t);
}

inline MotzkinPath b5_explicit(const MotzkinPath& p) {
  MotzkinTree t = path_to_tree(p);
  t.set_label(t.label() + 1);
  if (!t.leaf()) slide_tokens_to_left_leaves(t);
  return tree_to_path(t);
}

inline MotzkinPath b3_explicit_default(const MotzkinPath& p) {
  return b3_explicit(p, {});
}

template <void (*Rec)(std::span<const Step>, std::vector<Step>&),
          MotzkinPath (*Exp)(const MotzkinPath&)>
MotzkinPath dispatch(const MotzkinPath& p, Mode mode) {
  switch (mode) {
    case Mode::Recursive: return run_rec<Rec>(p);
    case Mode::Explicit: return Exp(p);
    case Mode::Checked: {
      MotzkinPath r = run_rec<Rec>(p);
      MotzkinPath e = Exp(p);
      if (r != e) throw ModeMismatchError(r.str(), e.str());
      return r;
    }
  }
  throw std::logic_error("bad mode");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bijection 1: M_n -> M_n, an involution. Swaps #UU and #DU.

inline MotzkinPath b1(const MotzkinPath& p, Mode mode = Mode::Checked) {
  return detail::dispatch<detail::b1_rec, detail::b1_explicit>(p, mode);
}

inline MotzkinPath b1_inverse(const MotzkinPath& p, Mode mode = Mode::Checked) {
  return b1(p, mode);
}

// ---------------------------------------------------------------------------
// Bijection 2: M_n(UU) -> M_{n+1}(UD). #DD maps to #DU.

inline MotzkinPath b2(const MotzkinPath& p, Mode mode = Mode::Checked) {
  detail::require_avoids(p, Pattern::UU, "b2");
  return detail::dispatch<detail::b2_rec, detail::b2_explicit>(p, mode);
}

inline MotzkinPath b2_inverse(const MotzkinPath& q) {
  detail::require_nonempty(q, "b2_inverse");
  detail::require_avoids(q, Pattern::UD, "b2_inverse");
  MotzkinTree t = path_to_tree(q);
  if (!t.leaf()) detail::exchange_left_leaf_labels(t);
  detail::decrement_root(t, "b2_inverse");
  return tree_to_path(flip(t));
}

// ---------------------------------------------------------------------------
// Bijection 3: M_n(UU) -> M_{n+1}(UD). #low peaks maps to the final descent
// length; the image ends with F exactly when the input has no low peak.

inline MotzkinPath b3(const MotzkinPath& p, Mode mode = Mode::Checked) {
  detail::require_avoids(p, Pattern::UU, "b3");
  return detail::dispatch<detail::b3_rec, detail::b3_explicit_default>(p, mode);
}

/// Explicit form of b3 with the step-3 subtree moves applied in the given
/// order (a permutation of the preorder snapshot); the result does not
/// depend on the order.
inline MotzkinPath b3_explicit_reordered(const MotzkinPath& p,
                                         std::span<const std::size_t> move_order) {
  detail::require_avoids(p, Pattern::UU, "b3");
  return detail::b3_explicit(p, move_order);
}

/// Number of subtree moves b3's explicit form performs on this input.
inline std::size_t b3_move_count(const MotzkinPath& p) {
  detail::require_avoids(p, Pattern::UU, "b3");
  MotzkinTree t = path_to_tree(p);
  t.set_label(t.label() + 1);
  if (t.leaf()) return 0;
  detail::slide_tokens_to_right_leaves(t);
  return detail::collect_move_parents(t, Side::Left).size();
}

inline MotzkinPath b3_inverse(const MotzkinPath& q) {
  detail::require_nonempty(q, "b3_inverse");
  detail::require_avoids(q, Pattern::UD, "b3_inverse");
  MotzkinTree t = path_to_tree(q);
  if (!t.leaf()) {
    detail::apply_subtree_moves(t, Side::Right, {});
    detail::slide_tokens_back_from_right_leaves(t);
  }
  detail::decrement_root(t, "b3_inverse");
  return tree_to_path(t);
}

// ---------------------------------------------------------------------------
// Bijection 4: M_n(UU) -> M_{n+1}(UD). #UFU maps to #DU.

inline MotzkinPath b4(const MotzkinPath& p, Mode mode = Mode::Checked) {
  detail::require_avoids(p, Pattern::UU, "b4");
  return detail::dispatch<detail::b4_rec, detail::b4_explicit>(p, mode);
}

inline MotzkinPath b4_inverse(const MotzkinPath& q) {
  detail::require_nonempty(q, "b4_inverse");
  detail::require_avoids(q, Pattern::UD, "b4_inverse");
  MotzkinTree t = path_to_tree(q);
  if (!t.leaf()) detail::slide_tokens_back_from_left_leaves(t);
  detail::decrement_root(t, "b4_inverse");
  return tree_to_path(flip(t));
}

// ---------------------------------------------------------------------------
// Bijection 5: M_n(DU) -> M_{n+1}(UD). Every plateau grows by one:
// mpl(image) = mpl(input) + 1.

inline MotzkinPath b5(const MotzkinPath& p, Mode mode = Mode::Checked) {
  detail::require_avoids(p, Pattern::DU, "b5");
  return detail::dispatch<detail::b5_rec, detail::b5_explicit>(p, mode);
}

inline MotzkinPath b5_inverse(const MotzkinPath& q) {
  detail::require_nonempty(q, "b5_inverse");
  detail::require_avoids(q, Pattern::UD, "b5_inverse");
  MotzkinTree t = path_to_tree(q);
  if (!t.leaf()) detail::slide_tokens_back_from_left_leaves(t);
  detail::decrement_root(t, "b5_inverse");
  return tree_to_path(t);
}

// ---------------------------------------------------------------------------
// The UFU/DD involution on M_n(UU): equal to b2_inverse(b4(p)), with an
// equivalent in-place description. Call an upstep critical if it is
// immediately followed by F. For each critical upstep whose segment
// strictly inside the matching arch is not all flats, factor the segment as
// F^a S F^b (a >= 1, S strict) and replace it by F^{b+1} S F^{a-1}. The
// replacement preserves length and UU-freeness, is independent of the
// processing order, and exchanges #UFU with #DD.

namespace detail {

inline void involution_rec(std::span<const Step> w, std::vector<Step>& out,
                           bool literal_rule) {
  std::size_t i = 0;
  while (i < w.size()) {
    if (w[i] == Step::Flat) {
      out.push_back(Step::Flat);
      ++i;
      continue;
    }
    std::size_t j = matching_down(w, i) ;
    auto interior = w.subspan(i + 1, j - i - 1);
    out.push_back(Step::Up);
    InteriorSplit in = split_interior(interior);
    if (in.core.empty()) {
      append_flats(out, in.leading);
    } else {
      assert(in.leading >= 1);
      append_flats(out, literal_rule ? in.trailing : in.trailing + 1);
      involution_rec(in.core, out, literal_rule);
      append_flats(out, in.leading - 1);
    }
    out.push_back(Step::Down);
    i = j + 1;
  }
}

struct ArchSpan {
  std::size_t open;
  std::size_t close;
};

// Critical arches (opening upstep followed by F) in left-to-right order of
// their upsteps. The rewrite keeps this list aligned across applications:
// arches map to arches, flat interiors stay flat, framed interiors keep a
// leading flat.
inline std::vector<ArchSpan> critical_arches(const std::vector<Step>& w) {
  std::vector<std::size_t> open_stack;
  std::vector<ArchSpan> collected;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == Step::Up) {
      open_stack.push_back(i);
    } else if (w[i] == Step::Down) {
      std::size_t o = open_stack.back();
      open_stack.pop_back();
      if (w[o + 1] == Step::Flat) collected.push_back({o, i});
    }
  }
  std::sort(collected.begin(), collected.end(),
            [](const ArchSpan& a, const ArchSpan& b) { return a.open < b.open; });
  return collected;
}

}  // namespace detail

/// Number of critical upsteps (upsteps immediately followed by a flatstep).
inline std::size_t count_critical_upsteps(const MotzkinPath& p) {
  const auto& w = p.steps();
  std::size_t c = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == Step::Up && w[i + 1] == Step::Flat) ++c;
  return c;
}

/// Segment form with the critical upsteps processed in the given order
/// (a permutation of their left-to-right ranks).
inline MotzkinPath involution_segment_reordered(const MotzkinPath& p,
                                                std::span<const std::size_t> order) {
  detail::require_avoids(p, Pattern::UU, "involution");
  std::vector<Step> w = p.steps();
  if (order.size() != count_critical_upsteps(p))
    throw std::invalid_argument("order must be a permutation of the critical upsteps");
  for (std::size_t idx : order) {
    auto arches = detail::critical_arches(w);
    const detail::ArchSpan a = arches.at(idx);
    auto interior = std::span<const Step>(w).subspan(a.open + 1, a.close - a.open - 1);
    detail::InteriorSplit in = detail::split_interior(interior);
    if (in.core.empty()) continue;  // level segment: leave alone
    std::vector<Step> repl;
    repl.reserve(interior.size());
    detail::append_flats(repl, in.trailing + 1);
    repl.insert(repl.end(), in.core.begin(), in.core.end());
    detail::append_flats(repl, in.leading - 1);
    std::copy(repl.begin(), repl.end(), w.begin() + static_cast<std::ptrdiff_t>(a.open) + 1);
  }
  return MotzkinPath(std::move(w));
}

/// The rewrite with F^b S F^{a-1} in place of F^{b+1} S F^{a-1}. Not length
/// preserving; kept as a negative control for the verification suite.
inline MotzkinPath involution_segment_literal(const MotzkinPath& p) {
  detail::require_avoids(p, Pattern::UU, "involution");
  std::vector<Step> out;
  detail::involution_rec(std::span<const Step>(p.steps()), out, true);
  return MotzkinPath(std::move(out));
}

inline MotzkinPath involution(const MotzkinPath& p,
                              InvolutionForm form = InvolutionForm::Checked) {
  detail::require_avoids(p, Pattern::UU, "involution");
  auto segment = [&] {
    std::vector<Step> out;
    out.reserve(p.size());
    detail::involution_rec(std::span<const Step>(p.steps()), out, false);
    return MotzkinPath(std::move(out));
  };
  auto composition = [&] { return b2_inverse(b4(p, Mode::Explicit)); };
  switch (form) {
    case InvolutionForm::Segment: return segment();
    case InvolutionForm::Composition: return composition();
    case InvolutionForm::Checked: {
      MotzkinPath s = segment();
      MotzkinPath c = composition();
      if (s != c) throw ModeMismatchError(s.str(), c.str());
      return s;
    }
  }
  throw std::logic_error("bad involution form");
}

}  // namespace motzkin
