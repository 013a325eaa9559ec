#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "motzkin/errors.hpp"

namespace motzkin {

/// One lattice step: Up (+1), Flat (0), Down (-1).
enum class Step : std::uint8_t { Up, Flat, Down };

constexpr char to_char(Step s) {
  switch (s) {
    case Step::Up: return 'U';
    case Step::Flat: return 'F';
    case Step::Down: return 'D';
  }
  return '?';
}

constexpr int rise(Step s) {
  switch (s) {
    case Step::Up: return 1;
    case Step::Flat: return 0;
    case Step::Down: return -1;
  }
  return 0;
}

constexpr std::optional<Step> step_from_char(char c) {
  switch (c) {
    case 'U': return Step::Up;
    case 'F': return Step::Flat;
    case 'D': return Step::Down;
    default: return std::nullopt;
  }
}

/// A Motzkin path: a word over {U,F,D} whose every prefix height is >= 0
/// and whose total height is 0. The empty path is valid.
class MotzkinPath {
 public:
  MotzkinPath() = default;

  /// Validates the word; throws ParseError (NegativeHeight/UnbalancedPath).
  explicit MotzkinPath(std::vector<Step> steps) : steps_(std::move(steps)) {
    int h = 0;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      h += rise(steps_[i]);
      if (h < 0)
        throw ParseError(ParseError::Kind::NegativeHeight, i + 1,
                         "path height dips below zero after " +
                             std::to_string(i + 1) + " steps");
    }
    if (h != 0)
      throw ParseError(ParseError::Kind::UnbalancedPath, steps_.size(),
                       "path ends at height " + std::to_string(h), h);
  }

  static MotzkinPath parse(std::string_view text) {
    std::vector<Step> steps;
    steps.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      auto s = step_from_char(text[i]);
      if (!s)
        throw ParseError(ParseError::Kind::InvalidCharacter, i,
                         std::string("invalid character '") + text[i] +
                             "' at position " + std::to_string(i));
      steps.push_back(*s);
    }
    return MotzkinPath(std::move(steps));
  }

  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  Step operator[](std::size_t i) const { return steps_[i]; }

  auto begin() const noexcept { return steps_.begin(); }
  auto end() const noexcept { return steps_.end(); }

  std::string str() const {
    std::string out;
    out.reserve(steps_.size());
    for (Step s : steps_) out.push_back(to_char(s));
    return out;
  }

  bool operator==(const MotzkinPath&) const = default;

 private:
  std::vector<Step> steps_;
};

inline MotzkinPath parse_path(std::string_view text) { return MotzkinPath::parse(text); }
inline std::string format_path(const MotzkinPath& p) { return p.str(); }

/// Heights after each step; size() == path length + 1, front() == 0.
inline std::vector<int> height_profile(const MotzkinPath& p) {
  std::vector<int> h;
  h.reserve(p.size() + 1);
  h.push_back(0);
  for (Step s : p) h.push_back(h.back() + rise(s));
  return h;
}

// ---------------------------------------------------------------------------
// First-return factorization: every nonempty path is either F.rest or
// U.inside.D.rest where the D is the first return to ground level.

struct EmptyFactor {
  bool operator==(const EmptyFactor&) const = default;
};
struct FlatFactor {
  MotzkinPath rest;
  bool operator==(const FlatFactor&) const = default;
};
struct ArchFactor {
  MotzkinPath inside;
  MotzkinPath rest;
  bool operator==(const ArchFactor&) const = default;
};
using Factorization = std::variant<EmptyFactor, FlatFactor, ArchFactor>;

namespace detail {

/// Index of the Down matching w[from] (which must be Up): the first step
/// after `from` that returns the walk to the height it had before `from`.
inline std::size_t matching_down(std::span<const Step> w, std::size_t from) {
  int h = 0;
  for (std::size_t i = from; i < w.size(); ++i) {
    h += rise(w[i]);
    if (h == 0) return i;
  }
  return w.size();  // unreachable on valid input
}

inline bool all_flat(std::span<const Step> w) {
  return std::all_of(w.begin(), w.end(), [](Step s) { return s == Step::Flat; });
}

}  // namespace detail

inline Factorization first_return_split(const MotzkinPath& p) {
  if (p.empty()) return EmptyFactor{};
  std::span<const Step> w(p.steps());
  if (w[0] == Step::Flat) {
    return FlatFactor{MotzkinPath({w.begin() + 1, w.end()})};
  }
  std::size_t j = detail::matching_down(w, 0);
  return ArchFactor{MotzkinPath({w.begin() + 1, w.begin() + j}),
                    MotzkinPath({w.begin() + j + 1, w.end()})};
}

// ---------------------------------------------------------------------------
// Strict factorization of a balanced segment (an arch interior) as
// F^a . s . F^b with s strict (starts U, ends D), or all flats F^k.

struct AllFlat {
  int count = 0;
  bool operator==(const AllFlat&) const = default;
};
struct Framed {
  int leading = 0;    // a
  MotzkinPath core;   // s, strict
  int trailing = 0;   // b
  bool operator==(const Framed&) const = default;
};
using StrictFactorization = std::variant<AllFlat, Framed>;

inline StrictFactorization strict_factor(const MotzkinPath& segment,
                                         bool require_leading_flat = false) {
  std::span<const Step> w(segment.steps());
  std::size_t first = 0;
  while (first < w.size() && w[first] == Step::Flat) ++first;
  if (first == w.size()) return AllFlat{static_cast<int>(w.size())};
  std::size_t last = w.size() - 1;
  while (w[last] == Step::Flat) --last;
  if (require_leading_flat && first == 0) throw MissingLeadingFlatError();
  return Framed{static_cast<int>(first),
                MotzkinPath({w.begin() + first, w.begin() + last + 1}),
                static_cast<int>(w.size() - 1 - last)};
}

// ---------------------------------------------------------------------------
// Consecutive-pattern machinery. Occurrences may overlap (UFUFU contains
// two UFUs).

enum class Pattern : std::uint8_t { UU, UD, DU, DD, UFU };

inline std::string_view pattern_name(Pattern q) {
  switch (q) {
    case Pattern::UU: return "UU";
    case Pattern::UD: return "UD";
    case Pattern::DU: return "DU";
    case Pattern::DD: return "DD";
    case Pattern::UFU: return "UFU";
  }
  return "?";
}

inline std::optional<Pattern> pattern_from_name(std::string_view name) {
  if (name == "UU") return Pattern::UU;
  if (name == "UD") return Pattern::UD;
  if (name == "DU") return Pattern::DU;
  if (name == "DD") return Pattern::DD;
  if (name == "UFU") return Pattern::UFU;
  return std::nullopt;
}

inline int count_pattern(const MotzkinPath& p, Pattern q) {
  const auto& w = p.steps();
  auto count2 = [&](Step a, Step b) {
    int c = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == a && w[i + 1] == b) ++c;
    return c;
  };
  switch (q) {
    case Pattern::UU: return count2(Step::Up, Step::Up);
    case Pattern::UD: return count2(Step::Up, Step::Down);
    case Pattern::DU: return count2(Step::Down, Step::Up);
    case Pattern::DD: return count2(Step::Down, Step::Down);
    case Pattern::UFU: {
      int c = 0;
      for (std::size_t i = 0; i + 2 < w.size(); ++i)
        if (w[i] == Step::Up && w[i + 1] == Step::Flat && w[i + 2] == Step::Up) ++c;
      return c;
    }
  }
  return 0;
}

inline bool avoids(const MotzkinPath& p, std::span<const Pattern> patterns) {
  return std::all_of(patterns.begin(), patterns.end(),
                     [&](Pattern q) { return count_pattern(p, q) == 0; });
}

inline bool avoids(const MotzkinPath& p, std::initializer_list<Pattern> patterns) {
  return avoids(p, std::span<const Pattern>(patterns.begin(), patterns.size()));
}

// ---------------------------------------------------------------------------
// Path statistics.

/// A plateau is a maximal flat run preceded by U and followed by D, or the
/// entire path when it is all flats (length >= 0, so the empty path is one
/// plateau of length 0).
struct PathStatistics {
  int initial_flats = 0;
  int doublerises = 0;  // #UU
  int peaks = 0;        // #UD
  int valleys = 0;      // #DU
  int doublefalls = 0;  // #DD
  int ufu = 0;          // #UFU
  int low_peaks = 0;    // peaks whose downstep lands at height 0
  int final_descent = 0;
  int ground_returns = 0;  // downsteps landing at height 0
  std::optional<int> first_peak_plateau_height;
  std::vector<int> plateau_lengths;  // sorted ascending
  int mpl = 0;                       // min plateau length, 0 if none

  bool operator==(const PathStatistics&) const = default;
};

inline PathStatistics statistics(const MotzkinPath& p) {
  PathStatistics st;
  const auto& w = p.steps();
  const std::size_t n = w.size();
  std::vector<int> h = height_profile(p);

  while (st.initial_flats < static_cast<int>(n) &&
         w[st.initial_flats] == Step::Flat)
    ++st.initial_flats;

  st.doublerises = count_pattern(p, Pattern::UU);
  st.peaks = count_pattern(p, Pattern::UD);
  st.valleys = count_pattern(p, Pattern::DU);
  st.doublefalls = count_pattern(p, Pattern::DD);
  st.ufu = count_pattern(p, Pattern::UFU);

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (w[i] == Step::Up && w[i + 1] == Step::Down && h[i + 2] == 0)
      ++st.low_peaks;

  for (std::size_t i = n; i > 0 && w[i - 1] == Step::Down; --i)
    ++st.final_descent;

  for (std::size_t i = 0; i < n; ++i)
    if (w[i] == Step::Down && h[i + 1] == 0) ++st.ground_returns;

  if (static_cast<int>(n) == st.initial_flats) {
    // All-flat path (possibly empty): one plateau spanning the whole path.
    st.plateau_lengths.push_back(static_cast<int>(n));
    st.first_peak_plateau_height = 0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] != Step::Up) continue;
      std::size_t j = i + 1;
      while (j < n && w[j] == Step::Flat) ++j;
      if (j < n && w[j] == Step::Down) {
        if (!st.first_peak_plateau_height) st.first_peak_plateau_height = h[i + 1];
        if (j > i + 1) st.plateau_lengths.push_back(static_cast<int>(j - i - 1));
      }
    }
    std::sort(st.plateau_lengths.begin(), st.plateau_lengths.end());
  }
  if (!st.plateau_lengths.empty())
    st.mpl = *std::min_element(st.plateau_lengths.begin(), st.plateau_lengths.end());
  return st;
}

// ---------------------------------------------------------------------------

/// ASCII picture of the height profile. Row y holds: '/' for upsteps ending
/// at height y, '\' for downsteps starting at height y, '-' for flats at
/// height y. Rows are printed from the top down to ground level.
inline std::string render_ascii(const MotzkinPath& p) {
  const auto& w = p.steps();
  std::vector<int> h = height_profile(p);
  int max_h = 0;
  for (int v : h) max_h = std::max(max_h, v);
  std::vector<std::string> rows(static_cast<std::size_t>(max_h) + 1,
                                std::string(w.size(), ' '));
  for (std::size_t i = 0; i < w.size(); ++i) {
    switch (w[i]) {
      case Step::Up: rows[static_cast<std::size_t>(h[i + 1])][i] = '/'; break;
      case Step::Flat: rows[static_cast<std::size_t>(h[i])][i] = '-'; break;
      case Step::Down: rows[static_cast<std::size_t>(h[i])][i] = '\\'; break;
    }
  }
  std::string out;
  for (std::size_t r = rows.size(); r-- > 0;) {
    std::string& row = rows[r];
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row;
    if (r != 0) out += '\n';
  }
  return out;
}

}  // namespace motzkin
