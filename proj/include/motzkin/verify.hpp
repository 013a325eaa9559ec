#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "motzkin/bijections.hpp"
#include "motzkin/enumerate.hpp"
#include "motzkin/path.hpp"
#include "motzkin/tree.hpp"

namespace motzkin {

// Exhaustive desk-scale verification of every claim the library encodes.
// Check coverage:
//   ROUNDTRIP   path<->string, path<->tree, tree<->string round trips,
//               weight = length, first-return and strict factorization
//               reassembly/uniqueness, leading-flat guarantee for UU-free
//               arch interiors
//   STATS_TABLE path statistics vs pattern counts, tree_stats vs path
//               statistics, correspondence maps bijective with the stated
//               inverses
//   DYCK_FACTS  on flat-free paths: #peaks = #valleys + 1, #UU = #DD
//   BIJ1..BIJ5  recursive = explicit, image class equality, statistic
//               transport, inverses (BIJ1 also: flip is an involution and
//               exchanges sided 0-node/k-leaf counts; BIJ4 also: b4 = b5
//               after b1)
//   INVOL       segment = composition, involution property, #UFU/#DD
//               exchange, processing-order independence
//   COUNTS      class-size identities and the Motzkin number recurrence
//   INVOL_LITERAL  negative control: the F^b S F^{a-1} rewrite is expected
//               to fail length preservation

enum class CheckId {
  Roundtrip,
  StatsTable,
  DyckFacts,
  Bij1,
  Bij2,
  Bij3,
  Bij4,
  Bij5,
  Invol,
  Counts,
  InvolLiteral,
};

inline constexpr CheckId kAllChecks[] = {
    CheckId::Roundtrip, CheckId::StatsTable, CheckId::DyckFacts,
    CheckId::Bij1,      CheckId::Bij2,       CheckId::Bij3,
    CheckId::Bij4,      CheckId::Bij5,       CheckId::Invol,
    CheckId::Counts,    CheckId::InvolLiteral,
};

inline std::string_view check_name(CheckId c) {
  switch (c) {
    case CheckId::Roundtrip: return "roundtrip";
    case CheckId::StatsTable: return "stats-table";
    case CheckId::DyckFacts: return "dyck";
    case CheckId::Bij1: return "bij1";
    case CheckId::Bij2: return "bij2";
    case CheckId::Bij3: return "bij3";
    case CheckId::Bij4: return "bij4";
    case CheckId::Bij5: return "bij5";
    case CheckId::Invol: return "invol";
    case CheckId::Counts: return "counts";
    case CheckId::InvolLiteral: return "invol-literal";
  }
  return "?";
}

inline std::optional<CheckId> check_from_name(std::string_view name) {
  for (CheckId c : kAllChecks)
    if (check_name(c) == name) return c;
  return std::nullopt;
}

/// Default exhaustive bound per check; run_all clamps its argument to this.
inline int check_cap(CheckId c) {
  switch (c) {
    case CheckId::Roundtrip: return 10;
    case CheckId::StatsTable: return 10;
    case CheckId::DyckFacts: return 14;
    case CheckId::InvolLiteral: return 6;
    default: return 12;
  }
}

/// The literal-rewrite negative control documents an expected failure; it
/// never gates the aggregate suite.
inline bool is_negative_control(CheckId c) { return c == CheckId::InvolLiteral; }

struct Failure {
  std::string input;
  std::string expected;
  std::string actual;
  std::string detail;
};

struct VerificationReport {
  std::string check;
  int max_n = 0;
  long long cases = 0;
  std::vector<Failure> failures;
  long long elapsed_ms = 0;

  bool passed() const { return failures.empty(); }
};

inline nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["max_n"] = r.max_n;
  j["cases"] = r.cases;
  j["failures"] = nlohmann::ordered_json::array();
  for (const Failure& f : r.failures) {
    nlohmann::ordered_json jf;
    jf["input"] = f.input;
    jf["expected"] = f.expected;
    jf["actual"] = f.actual;
    jf["detail"] = f.detail;
    j["failures"].push_back(std::move(jf));
  }
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

using PathMap = std::function<MotzkinPath(const MotzkinPath&)>;
using PathStat = std::function<long long(const MotzkinPath&)>;

namespace detail {

class ReportTimer {
 public:
  explicit ReportTimer(VerificationReport& r)
      : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
  }

 private:
  VerificationReport& report_;
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<std::string> sorted_class_strings(int n,
                                                     const std::vector<Pattern>& avoid) {
  std::vector<std::string> out;
  for_each_path(n, avoid, [&](const MotzkinPath& p) { out.push_back(p.str()); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generic property checks; the named suites below are built from the same
// loops, and seeded-mutation tests drive these directly.

/// The image multiset of `map` over the length-n avoidance class must equal
/// the full class of length n+delta avoiding `image_avoid`, for every
/// n <= max_n.
inline VerificationReport check_bijectivity(std::string name,
                                            std::vector<Pattern> domain_avoid,
                                            std::vector<Pattern> image_avoid,
                                            int delta, const PathMap& map,
                                            int max_n) {
  VerificationReport r{std::move(name), max_n, 0, {}, 0};
  detail::ReportTimer timer(r);
  for (int n = 0; n <= max_n; ++n) {
    std::vector<std::string> images;
    for_each_path(n, domain_avoid, [&](const MotzkinPath& p) {
      ++r.cases;
      images.push_back(map(p).str());
    });
    std::sort(images.begin(), images.end());
    std::vector<std::string> expected = detail::sorted_class_strings(n + delta, image_avoid);
    if (images != expected)
      r.failures.push_back({"n=" + std::to_string(n),
                            std::to_string(expected.size()) + " class members",
                            std::to_string(images.size()) + " images",
                            "image-set: image multiset differs from the target class"});
  }
  return r;
}

/// stat_in(p) == stat_out(map(p)) on the whole avoidance class, n <= max_n.
inline VerificationReport check_transport(std::string name,
                                          std::vector<Pattern> domain_avoid,
                                          const PathMap& map, const PathStat& stat_in,
                                          const PathStat& stat_out, int max_n) {
  VerificationReport r{std::move(name), max_n, 0, {}, 0};
  detail::ReportTimer timer(r);
  for (int n = 0; n <= max_n; ++n) {
    for_each_path(n, domain_avoid, [&](const MotzkinPath& p) {
      ++r.cases;
      MotzkinPath img = map(p);
      long long want = stat_in(p);
      long long got = stat_out(img);
      if (want != got)
        r.failures.push_back({p.str(), std::to_string(want), std::to_string(got),
                              "transport: statistic not carried to " + img.str()});
    });
  }
  return r;
}

/// Multiset equality of {stat_a over class_a} and {stat_b over class_b}.
struct EquidistributionResult {
  bool equal = false;
  std::map<long long, long long> lhs;
  std::map<long long, long long> rhs;
};

inline EquidistributionResult equidistribution(const PathStat& stat_a,
                                               const ClassSpec& class_a,
                                               const PathStat& stat_b,
                                               const ClassSpec& class_b) {
  EquidistributionResult res;
  for_each_path(class_a.length, class_a.avoid,
                [&](const MotzkinPath& p) { ++res.lhs[stat_a(p)]; });
  for_each_path(class_b.length, class_b.avoid,
                [&](const MotzkinPath& p) { ++res.rhs[stat_b(p)]; });
  res.equal = res.lhs == res.rhs;
  return res;
}

// ---------------------------------------------------------------------------
// Named suites.

namespace detail {

inline void expect(VerificationReport& r, bool ok, const MotzkinPath& p,
                   std::string expected, std::string actual, std::string what) {
  if (!ok)
    r.failures.push_back({p.str(), std::move(expected), std::move(actual), std::move(what)});
}

inline VerificationReport run_roundtrip(int max_n) {
  VerificationReport r{std::string(check_name(CheckId::Roundtrip)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  for (int n = 0; n <= max_n; ++n) {
    for_each_path(n, {}, [&](const MotzkinPath& p) {
      ++r.cases;
      expect(r, parse_path(format_path(p)) == p, p, p.str(), "", "path string round trip");
      MotzkinTree t = path_to_tree(p);
      expect(r, t.weight() == n, p, std::to_string(n), std::to_string(t.weight()),
             "tree weight equals path length");
      expect(r, tree_to_path(t) == p, p, p.str(), tree_to_path(t).str(),
             "path -> tree -> path identity");
      expect(r, parse_tree(format_tree(t)) == t, p, format_tree(t), "",
             "tree string round trip");

      // First-return factorization reassembles the path.
      Factorization f = first_return_split(p);
      if (p.empty()) {
        expect(r, std::holds_alternative<EmptyFactor>(f), p, "Empty", "", "factorization");
      } else if (p[0] == Step::Flat) {
        const auto* flat = std::get_if<FlatFactor>(&f);
        expect(r, flat && "F" + flat->rest.str() == p.str(), p, p.str(), "",
               "flat factor reassembly");
      } else {
        const auto* arch = std::get_if<ArchFactor>(&f);
        bool ok = arch && "U" + arch->inside.str() + "D" + arch->rest.str() == p.str();
        expect(r, ok, p, p.str(), "", "arch factor reassembly");
        if (arch) {
          // Strict factorization of the interior: F^a core F^b, core strict.
          StrictFactorization sf = strict_factor(arch->inside);
          if (const auto* framed = std::get_if<Framed>(&sf)) {
            std::string re = std::string(static_cast<std::size_t>(framed->leading), 'F') +
                             framed->core.str() +
                             std::string(static_cast<std::size_t>(framed->trailing), 'F');
            expect(r, re == arch->inside.str(), p, arch->inside.str(), re,
                   "strict factor reassembly");
            expect(r,
                   !framed->core.empty() && framed->core[0] == Step::Up &&
                       framed->core[framed->core.size() - 1] == Step::Down,
                   p, "strict core", framed->core.str(), "core starts U and ends D");
            // A UU-free path's nonflat arch interior has a leading flat.
            if (count_pattern(p, Pattern::UU) == 0)
              expect(r, framed->leading >= 1, p, "leading flat", "none",
                     "UU-free arch interior starts with F");
          } else {
            const auto& af = std::get<AllFlat>(sf);
            expect(r, af.count == static_cast<int>(arch->inside.size()), p,
                   std::to_string(arch->inside.size()), std::to_string(af.count),
                   "all-flat interior size");
          }
        }
      }
    });
  }
  return r;
}

inline VerificationReport run_stats_table(int max_n) {
  VerificationReport r{std::string(check_name(CheckId::StatsTable)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  for (int n = 0; n <= max_n; ++n) {
    for_each_path(n, {}, [&](const MotzkinPath& p) {
      ++r.cases;
      PathStatistics ps = statistics(p);
      expect(r, ps.peaks == count_pattern(p, Pattern::UD), p, "", "",
             "peaks = #UD");
      expect(r, ps.valleys == count_pattern(p, Pattern::DU), p, "", "",
             "valleys = #DU");
      expect(r, ps.doublerises == count_pattern(p, Pattern::UU), p, "", "",
             "doublerises = #UU");
      expect(r, ps.doublefalls == count_pattern(p, Pattern::DD), p, "", "",
             "doublefalls = #DD");

      MotzkinTree t = path_to_tree(p);
      TreeStatistics ts = tree_stats(t);
      bool shared_equal =
          ts.initial_flats == ps.initial_flats && ts.doublerises == ps.doublerises &&
          ts.valleys == ps.valleys && ts.peaks == ps.peaks &&
          ts.doublefalls == ps.doublefalls &&
          ts.first_peak_plateau_height == ps.first_peak_plateau_height &&
          ts.ground_returns == ps.ground_returns &&
          ts.plateau_lengths == ps.plateau_lengths;
      expect(r, shared_equal, p, "", "", "tree_stats agrees with path statistics");

      if (!t.leaf()) {
        // Both correspondences are bijections with the stated inverses.
        auto check_corr = [&](const std::vector<std::pair<VertexRef, VertexRef>>& pairs,
                              Side leaf_side, const char* which) {
          std::vector<VertexRef> targets;
          for (const auto& [leaf_ref, target_ref] : pairs) {
            targets.push_back(target_ref);
            const MotzkinTree* target = resolve(t, target_ref);
            expect(r, target != nullptr, p, "vertex", target_ref.str(),
                   std::string(which) + ": target resolves");
            if (!target || target->leaf()) {
              expect(r, target && !target->leaf(), p, "interior", target_ref.str(),
                     std::string(which) + ": target is interior");
              continue;
            }
            // Inverse route: extreme leaf of the target's subtree.
            VertexRef back = target_ref;
            const MotzkinTree* v = target;
            while (!v->leaf()) {
              Turn turn = leaf_side == Side::Left ? Turn::Left : Turn::Right;
              back.turns.push_back(turn);
              v = leaf_side == Side::Left ? &v->left() : &v->right();
            }
            expect(r, back == leaf_ref, p, leaf_ref.str(), back.str(),
                   std::string(which) + ": inverse returns the leaf");
          }
          std::sort(targets.begin(), targets.end());
          expect(r, std::adjacent_find(targets.begin(), targets.end()) == targets.end(),
                 p, "distinct targets", "", std::string(which) + ": injective");
        };
        check_corr(left_leaf_correspondence(t), Side::Left, "left-leaf map");
        check_corr(right_leaf_correspondence(t), Side::Right, "right-leaf map");
      }
    });
  }
  return r;
}

inline VerificationReport run_dyck_facts(int max_n) {
  VerificationReport r{std::string(check_name(CheckId::DyckFacts)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  for (int n = 0; n <= max_n; ++n) {
    for_each_path(n, {}, [&](const MotzkinPath& p) {
      for (Step s : p)
        if (s == Step::Flat) return;
      ++r.cases;
      PathStatistics st = statistics(p);
      if (!p.empty())
        expect(r, st.peaks == st.valleys + 1, p, std::to_string(st.valleys + 1),
               std::to_string(st.peaks), "#peaks = #valleys + 1");
      expect(r, st.doublerises == st.doublefalls, p, std::to_string(st.doublerises),
             std::to_string(st.doublefalls), "#UU = #DD");
    });
  }
  return r;
}

struct BijCheckConfig {
  CheckId id;
  std::vector<Pattern> domain;
  int delta;  // image length - input length
};

// Per-path checks shared by the five bijection suites; failures are tagged
// by sub-check in the detail field ("mode-agreement", "image-set",
// "transport", "inverse", "involution", "typing").
inline VerificationReport run_bijection(CheckId id, int max_n) {
  BijCheckConfig cfg;
  switch (id) {
    case CheckId::Bij1: cfg = {id, {}, 0}; break;
    case CheckId::Bij2: cfg = {id, {Pattern::UU}, 1}; break;
    case CheckId::Bij3: cfg = {id, {Pattern::UU}, 1}; break;
    case CheckId::Bij4: cfg = {id, {Pattern::UU}, 1}; break;
    case CheckId::Bij5: cfg = {id, {Pattern::DU}, 1}; break;
    default: throw std::logic_error("not a bijection check");
  }
  VerificationReport r{std::string(check_name(id)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  auto forward = [&](const MotzkinPath& p, Mode mode) {
    switch (id) {
      case CheckId::Bij1: return b1(p, mode);
      case CheckId::Bij2: return b2(p, mode);
      case CheckId::Bij3: return b3(p, mode);
      case CheckId::Bij4: return b4(p, mode);
      default: return b5(p, mode);
    }
  };
  for (int n = 0; n <= max_n; ++n) {
    std::vector<std::string> images;
    for_each_path(n, cfg.domain, [&](const MotzkinPath& p) {
      ++r.cases;
      MotzkinPath rec = forward(p, Mode::Recursive);
      MotzkinPath exp = forward(p, Mode::Explicit);
      expect(r, rec == exp, p, rec.str(), exp.str(), "mode-agreement");
      const MotzkinPath& img = rec;
      images.push_back(img.str());
      expect(r, static_cast<int>(img.size()) == n + cfg.delta, p,
             std::to_string(n + cfg.delta), std::to_string(img.size()),
             "typing: image length");
      PathStatistics sp = statistics(p);
      PathStatistics si = statistics(img);
      switch (id) {
        case CheckId::Bij1: {
          expect(r, b1(img, Mode::Recursive) == p, p, p.str(),
                 b1(img, Mode::Recursive).str(), "involution: b1(b1(p)) = p");
          expect(r,
                 sp.doublerises == si.valleys && sp.valleys == si.doublerises, p,
                 "(#UU,#DU) swapped", "", "transport: #UU/#DU exchange");
          // flip exchanges sided 0-node counts and sided k-leaf counts.
          MotzkinTree t = path_to_tree(p);
          MotzkinTree ft = flip(t);
          expect(r, flip(ft) == t, p, "flip involution", "", "involution: flip");
          std::map<std::pair<int, int>, int> leafs, nodes, fleafs, fnodes;
          for (const auto& [ref, c] : classify(t)) {
            int side = c.side == Side::Left ? 0 : 1;
            if (c.kind == Kind::Leaf) ++leafs[{side, c.label}];
            if (c.kind == Kind::Node) ++nodes[{side, c.label}];
          }
          for (const auto& [ref, c] : classify(ft)) {
            int side = c.side == Side::Left ? 1 : 0;  // mirrored
            if (c.kind == Kind::Leaf) ++fleafs[{side, c.label}];
            if (c.kind == Kind::Node) ++fnodes[{side, c.label}];
          }
          expect(r, leafs == fleafs && nodes == fnodes, p, "mirrored counts", "",
                 "transport: flip exchanges sided labeled counts");
          break;
        }
        case CheckId::Bij2:
          expect(r, avoids(img, {Pattern::UD}), p, "UD-free", img.str(),
                 "typing: image avoids UD");
          expect(r, sp.doublefalls == si.valleys, p, std::to_string(sp.doublefalls),
                 std::to_string(si.valleys), "transport: #DD -> #DU");
          expect(r, b2_inverse(img) == p, p, p.str(), b2_inverse(img).str(),
                 "inverse: b2_inverse(b2(p)) = p");
          break;
        case CheckId::Bij3:
          expect(r, avoids(img, {Pattern::UD}), p, "UD-free", img.str(),
                 "typing: image avoids UD");
          expect(r, sp.low_peaks == si.final_descent, p, std::to_string(sp.low_peaks),
                 std::to_string(si.final_descent),
                 "transport: low peaks -> final descent");
          expect(r,
                 (sp.low_peaks == 0) == (!img.empty() && img[img.size() - 1] == Step::Flat),
                 p, "ends-F iff no low peaks", img.str(),
                 "transport: image ends with F iff no low peak");
          expect(r, b3_inverse(img) == p, p, p.str(), b3_inverse(img).str(),
                 "inverse: b3_inverse(b3(p)) = p");
          break;
        case CheckId::Bij4: {
          expect(r, avoids(img, {Pattern::UD}), p, "UD-free", img.str(),
                 "typing: image avoids UD");
          expect(r, sp.ufu == si.valleys, p, std::to_string(sp.ufu),
                 std::to_string(si.valleys), "transport: #UFU -> #DU");
          expect(r, b4_inverse(img) == p, p, p.str(), b4_inverse(img).str(),
                 "inverse: b4_inverse(b4(p)) = p");
          MotzkinPath via_b5 = b5(b1(p, Mode::Explicit), Mode::Explicit);
          expect(r, via_b5 == img, p, img.str(), via_b5.str(),
                 "transport: b4 = b5 after b1");
          break;
        }
        case CheckId::Bij5:
          expect(r, avoids(img, {Pattern::UD}), p, "UD-free", img.str(),
                 "typing: image avoids UD");
          expect(r, si.mpl == sp.mpl + 1, p, std::to_string(sp.mpl + 1),
                 std::to_string(si.mpl), "transport: mpl shift by one");
          expect(r, b5_inverse(img) == p, p, p.str(), b5_inverse(img).str(),
                 "inverse: b5_inverse(b5(p)) = p");
          break;
        default: break;
      }
    });
    std::sort(images.begin(), images.end());
    std::vector<std::string> target = sorted_class_strings(
        n + cfg.delta, cfg.delta == 0 ? cfg.domain : std::vector<Pattern>{Pattern::UD});
    if (images != target)
      r.failures.push_back({"n=" + std::to_string(n),
                            std::to_string(target.size()) + " class members",
                            std::to_string(images.size()) + " images",
                            "image-set: image multiset differs from the target class"});
    // The reversed composition is the identity on the image class.
    if (cfg.delta == 1) {
      for_each_path(n + 1, {Pattern::UD}, [&](const MotzkinPath& q) {
        MotzkinPath back = [&] {
          switch (id) {
            case CheckId::Bij2: return b2_inverse(q);
            case CheckId::Bij3: return b3_inverse(q);
            case CheckId::Bij4: return b4_inverse(q);
            default: return b5_inverse(q);
          }
        }();
        MotzkinPath again = forward(back, Mode::Recursive);
        expect(r, again == q, q, q.str(), again.str(),
               "inverse: forward(inverse(q)) = q");
      });
    }
  }
  return r;
}

inline VerificationReport run_invol(int max_n) {
  VerificationReport r{std::string(check_name(CheckId::Invol)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  std::mt19937 rng(0x5eedu);
  const int order_cap = std::min(max_n, 10);
  for (int n = 0; n <= max_n; ++n) {
    for_each_path(n, {Pattern::UU}, [&](const MotzkinPath& p) {
      ++r.cases;
      MotzkinPath seg = involution(p, InvolutionForm::Segment);
      MotzkinPath comp = involution(p, InvolutionForm::Composition);
      expect(r, seg == comp, p, seg.str(), comp.str(),
             "composition-equality: segment form = b2^-1 . b4");
      expect(r, seg.size() == p.size(), p, std::to_string(p.size()),
             std::to_string(seg.size()), "typing: length preserved");
      expect(r, avoids(seg, {Pattern::UU}), p, "UU-free", seg.str(),
             "typing: image avoids UU");
      expect(r, involution(seg, InvolutionForm::Segment) == p, p, p.str(),
             involution(seg, InvolutionForm::Segment).str(),
             "involution: applying twice is the identity");
      PathStatistics sp = statistics(p);
      PathStatistics si = statistics(seg);
      expect(r, sp.ufu == si.doublefalls && sp.doublefalls == si.ufu, p,
             "(#UFU,#DD) swapped", "", "transport: #UFU/#DD exchange");
      if (n <= order_cap) {
        std::size_t k = count_critical_upsteps(p);
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (int trial = 0; trial < 20; ++trial) {
          std::shuffle(order.begin(), order.end(), rng);
          MotzkinPath got = involution_segment_reordered(p, order);
          expect(r, got == seg, p, seg.str(), got.str(),
                 "order: processing order changes the result");
          if (got != seg) break;
        }
      }
    });
  }
  return r;
}

inline VerificationReport run_counts(int max_n) {
  VerificationReport r{std::string(check_name(CheckId::Counts)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  auto fail_counts = [&](int n, const std::string& what, std::uint64_t lhs,
                         std::uint64_t rhs) {
    r.failures.push_back({"n=" + std::to_string(n), std::to_string(lhs),
                          std::to_string(rhs), what});
  };
  for (int n = 0; n <= max_n; ++n) {
    std::uint64_t uu = count_avoiding({n, {Pattern::UU}});
    std::uint64_t du = count_avoiding({n, {Pattern::DU}});
    std::uint64_t ud_next = count_avoiding({n + 1, {Pattern::UD}});
    ++r.cases;
    if (uu != du || du != ud_next)
      fail_counts(n, "counts: |M_n(UU)| = |M_n(DU)| = |M_{n+1}(UD)|", uu, ud_next);

    std::uint64_t uu_dd = count_avoiding({n, {Pattern::UU, Pattern::DD}});
    std::uint64_t ud_du = count_avoiding({n + 1, {Pattern::UD, Pattern::DU}});
    ++r.cases;
    if (uu_dd != ud_du)
      fail_counts(n, "counts: |M_n(UU,DD)| = |M_{n+1}(UD,DU)|", uu_dd, ud_du);

    std::uint64_t no_low_peaks = 0;
    for_each_path(n, {Pattern::UU}, [&](const MotzkinPath& p) {
      if (statistics(p).low_peaks == 0) ++no_low_peaks;
    });
    std::uint64_t ud_same = count_avoiding({n, {Pattern::UD}});
    ++r.cases;
    if (no_low_peaks != ud_same)
      fail_counts(n, "counts: low-peak-free members of M_n(UU) vs |M_n(UD)|",
                  no_low_peaks, ud_same);

    std::uint64_t all = count_avoiding({n, {}});
    ++r.cases;
    if (BigInt(all) != motzkin_number(n))
      fail_counts(n, "counts: |M_n| equals the Motzkin recurrence", all, 0);
  }
  ++r.cases;
  if (motzkin_number(14) != 113634)
    r.failures.push_back({"n=14", "113634", motzkin_number(14).str(),
                          "counts: pinned Motzkin number M_14"});
  return r;
}

inline VerificationReport run_invol_literal(int max_n) {
  VerificationReport r{std::string(check_name(CheckId::InvolLiteral)), max_n, 0, {}, 0};
  ReportTimer timer(r);
  for (int n = 0; n <= max_n; ++n) {
    for_each_path(n, {Pattern::UU}, [&](const MotzkinPath& p) {
      ++r.cases;
      MotzkinPath lit = involution_segment_literal(p);
      MotzkinPath comp = involution(p, InvolutionForm::Composition);
      if (lit != comp)
        r.failures.push_back(
            {p.str(), comp.str(), lit.str(),
             "literal rewrite F^b S F^{a-1} gives length " +
                 std::to_string(lit.size()) + " instead of " +
                 std::to_string(p.size())});
    });
  }
  return r;
}

}  // namespace detail

inline VerificationReport run_check(CheckId check, int max_n) {
  switch (check) {
    case CheckId::Roundtrip: return detail::run_roundtrip(max_n);
    case CheckId::StatsTable: return detail::run_stats_table(max_n);
    case CheckId::DyckFacts: return detail::run_dyck_facts(max_n);
    case CheckId::Bij1:
    case CheckId::Bij2:
    case CheckId::Bij3:
    case CheckId::Bij4:
    case CheckId::Bij5: return detail::run_bijection(check, max_n);
    case CheckId::Invol: return detail::run_invol(max_n);
    case CheckId::Counts: return detail::run_counts(max_n);
    case CheckId::InvolLiteral: return detail::run_invol_literal(max_n);
  }
  throw std::logic_error("bad check id");
}

/// Runs every check at min(max_n, its cap). With jobs > 1 the independent
/// checks run concurrently; the report order is fixed either way.
inline std::vector<VerificationReport> run_all(int max_n, unsigned jobs = 1) {
  std::vector<VerificationReport> reports;
  if (jobs <= 1) {
    for (CheckId c : kAllChecks)
      reports.push_back(run_check(c, std::min(max_n, check_cap(c))));
    return reports;
  }
  std::vector<std::future<VerificationReport>> futures;
  for (CheckId c : kAllChecks)
    futures.push_back(std::async(std::launch::async, [c, max_n] {
      return run_check(c, std::min(max_n, check_cap(c)));
    }));
  for (auto& f : futures) reports.push_back(f.get());
  return reports;
}

/// Aggregate verdict: every check passes, ignoring negative controls.
inline bool suite_ok(const std::vector<VerificationReport>& reports) {
  for (const VerificationReport& r : reports) {
    auto id = check_from_name(r.check);
    if (id && is_negative_control(*id)) continue;
    if (!r.passed()) return false;
  }
  return true;
}

}  // namespace motzkin
