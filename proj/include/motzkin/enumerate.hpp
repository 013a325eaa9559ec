#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "motzkin/path.hpp"

namespace motzkin {

using BigInt = boost::multiprecision::cpp_int;

/// A class of Motzkin paths: fixed length, avoiding every listed
/// consecutive pattern.
struct ClassSpec {
  int length = 0;
  std::vector<Pattern> avoid;
};

/// Lazy generator of the Motzkin paths of length n avoiding the given
/// patterns, in lexicographic order with U < D < F. Depth-first with height
/// pruning: a prefix survives only while its height can still return to 0
/// within the remaining steps and no forbidden pattern has been committed.
class PathGenerator {
 public:
  explicit PathGenerator(int n, std::vector<Pattern> avoid = {})
      : n_(n), avoid_(std::move(avoid)) {
    heights_.push_back(0);
  }

  std::optional<MotzkinPath> next() {
    if (finished_) return std::nullopt;
    if (!started_) {
      started_ = true;
    } else if (!backtrack_advance()) {
      finished_ = true;
      return std::nullopt;
    }
    while (static_cast<int>(word_.size()) < n_) {
      if (step_forward()) continue;
      if (!backtrack_advance()) {
        finished_ = true;
        return std::nullopt;
      }
    }
    return MotzkinPath(word_);
  }

 private:
  static constexpr std::array<Step, 3> kOrder = {Step::Up, Step::Down, Step::Flat};

  static constexpr int rank_of(Step s) {
    return s == Step::Up ? 0 : (s == Step::Down ? 1 : 2);
  }

  bool feasible(Step s) const {
    const int pos = static_cast<int>(word_.size());
    const int h = heights_.back() + rise(s);
    if (h < 0) return false;
    if (h > n_ - pos - 1) return false;  // cannot return to ground in time
    for (Pattern q : avoid_) {
      switch (q) {
        case Pattern::UU:
          if (pos >= 1 && word_[pos - 1] == Step::Up && s == Step::Up) return false;
          break;
        case Pattern::UD:
          if (pos >= 1 && word_[pos - 1] == Step::Up && s == Step::Down) return false;
          break;
        case Pattern::DU:
          if (pos >= 1 && word_[pos - 1] == Step::Down && s == Step::Up) return false;
          break;
        case Pattern::DD:
          if (pos >= 1 && word_[pos - 1] == Step::Down && s == Step::Down) return false;
          break;
        case Pattern::UFU:
          if (pos >= 2 && word_[pos - 2] == Step::Up &&
              word_[pos - 1] == Step::Flat && s == Step::Up)
            return false;
          break;
      }
    }
    return true;
  }

  void push(Step s) {
    word_.push_back(s);
    heights_.push_back(heights_.back() + rise(s));
  }

  Step pop() {
    Step s = word_.back();
    word_.pop_back();
    heights_.pop_back();
    return s;
  }

  // Extend by one position with the smallest feasible step.
  bool step_forward() {
    for (Step s : kOrder) {
      if (feasible(s)) {
        push(s);
        return true;
      }
    }
    return false;
  }

  // Pop until some position can be bumped to a larger feasible step.
  bool backtrack_advance() {
    while (!word_.empty()) {
      Step last = pop();
      for (int r = rank_of(last) + 1; r < 3; ++r) {
        if (feasible(kOrder[static_cast<std::size_t>(r)])) {
          push(kOrder[static_cast<std::size_t>(r)]);
          return true;
        }
      }
    }
    return false;
  }

  int n_;
  std::vector<Pattern> avoid_;
  std::vector<Step> word_;
  std::vector<int> heights_;
  bool started_ = false;
  bool finished_ = false;
};

template <typename F>
void for_each_path(int n, const std::vector<Pattern>& avoid, F&& fn) {
  PathGenerator gen(n, avoid);
  while (auto p = gen.next()) fn(*p);
}

inline std::vector<MotzkinPath> all_paths(int n) {
  std::vector<MotzkinPath> out;
  for_each_path(n, {}, [&](const MotzkinPath& p) { out.push_back(p); });
  return out;
}

inline std::vector<MotzkinPath> all_avoiding(const ClassSpec& spec) {
  std::vector<MotzkinPath> out;
  for_each_path(spec.length, spec.avoid,
                [&](const MotzkinPath& p) { out.push_back(p); });
  return out;
}

inline std::uint64_t count_avoiding(const ClassSpec& spec) {
  std::uint64_t count = 0;
  for_each_path(spec.length, spec.avoid, [&](const MotzkinPath&) { ++count; });
  return count;
}

/// Motzkin numbers by the recurrence M_0 = 1,
/// M_{n+1} = M_n + sum_{k=0}^{n-1} M_k * M_{n-1-k}, in exact arithmetic.
inline BigInt motzkin_number(int n) {
  std::vector<BigInt> m(static_cast<std::size_t>(n) + 1);
  m[0] = 1;
  for (int i = 1; i <= n; ++i) {
    BigInt v = m[static_cast<std::size_t>(i - 1)];
    for (int k = 0; k <= i - 2; ++k)
      v += m[static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(i - 2 - k)];
    m[static_cast<std::size_t>(i)] = v;
  }
  return m[static_cast<std::size_t>(n)];
}

}  // namespace motzkin
