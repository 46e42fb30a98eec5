#pragma once

// Symbolic (co)homology bookkeeping for connected sums of spheres,
// homotopy spheres, and products of two spheres.  Everything is exact
// integer arithmetic on Betti numbers; the classes handled here are
// torsion-free, so ranks tell the whole story.
//
// Descriptors have a tiny grammar:
//
//   expr := term ("#" term)*
//   term := [uint "*"] atom
//   atom := "S" uint | "S" uint "x" "S" uint | "Sigma" uint
//
// e.g. "Sigma8 # 2*S4xS4 # S1xS7".  Whitespace is free.  Parsing
// normalizes: sphere summands are the neutral element and disappear next
// to anything else, homotopy spheres merge into one, factors of products
// are ordered, and summands are sorted canonically, so equal manifolds
// compare equal and printing round-trips.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hopfcrit {

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(std::size_t pos, const std::string& message)
      : std::runtime_error(message + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

enum class AtomKind { HomotopySphere = 0, Sphere = 1, ProductOfSpheres = 2 };

struct Atom {
  AtomKind kind = AtomKind::Sphere;
  int p = 0;  // sphere dimension, or smaller product factor
  int q = 0;  // larger product factor, unused otherwise
  bool exotic_possible = false;  // metadata on homotopy spheres; ignored by comparisons

  int dim() const { return kind == AtomKind::ProductOfSpheres ? p + q : p; }

  static Atom sphere(int d) { return Atom{AtomKind::Sphere, d, 0, false}; }
  static Atom homotopy_sphere(int d, bool exotic) { return Atom{AtomKind::HomotopySphere, d, 0, exotic}; }
  static Atom product(int a, int b) {
    if (a > b) std::swap(a, b);
    return Atom{AtomKind::ProductOfSpheres, a, b, false};
  }
};

inline bool atom_equal(const Atom& x, const Atom& y) {
  return x.kind == y.kind && x.p == y.p && x.q == y.q;
}

inline bool atom_less(const Atom& x, const Atom& y) {
  if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
  if (x.kind == AtomKind::ProductOfSpheres) {
    if (x.p != y.p) return x.p > y.p;  // balanced products print before circle factors
    return x.q > y.q;
  }
  return x.p < y.p;
}

/// Connected sum in normal form: summands sorted, multiplicities grouped.
struct ManifoldDescriptor {
  int dim = 0;
  std::vector<std::pair<Atom, std::int64_t>> atoms;
};

inline bool operator==(const ManifoldDescriptor& a, const ManifoldDescriptor& b) {
  if (a.dim != b.dim || a.atoms.size() != b.atoms.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    if (!atom_equal(a.atoms[i].first, b.atoms[i].first) || a.atoms[i].second != b.atoms[i].second)
      return false;
  return true;
}

namespace detail {

inline void validate_atom(const Atom& a, std::size_t pos = 0) {
  auto fail = [&](const std::string& m) { throw parse_error(pos, m); };
  switch (a.kind) {
    case AtomKind::Sphere:
      if (a.p < 1) fail("sphere dimension must be at least 1");
      break;
    case AtomKind::HomotopySphere:
      if (a.p < 2) fail("homotopy-sphere dimension must be at least 2");
      break;
    case AtomKind::ProductOfSpheres:
      if (a.p < 1 || a.q < 1) fail("product factors must be spheres of dimension at least 1");
      break;
  }
  if (a.dim() > 10000) fail("summand dimension is unreasonably large");
}

}  // namespace detail

/// Builds the normal form from raw summands.  Positions, when present,
/// localize diagnostics in parsed text; programmatic callers can pass
/// the default.
inline ManifoldDescriptor make_descriptor(std::vector<std::pair<Atom, std::int64_t>> raw,
                                          const std::vector<std::size_t>* positions = nullptr) {
  auto pos_of = [&](std::size_t i) { return positions ? (*positions)[i] : std::size_t{0}; };
  if (raw.empty()) throw parse_error(0, "expected a summand");

  int dim = -1;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    detail::validate_atom(raw[i].first, pos_of(i));
    if (raw[i].second < 1) throw parse_error(pos_of(i), "multiplicity must be at least 1");
    if (raw[i].second > 1000000) throw parse_error(pos_of(i), "multiplicity is unreasonably large");
    if (dim < 0)
      dim = raw[i].first.dim();
    else if (raw[i].first.dim() != dim)
      throw parse_error(pos_of(i), "summand dimension " + std::to_string(raw[i].first.dim()) +
                                       " conflicts with earlier dimension " + std::to_string(dim));
  }
  if (dim < 2) throw parse_error(pos_of(0), "descriptor dimension must be at least 2");

  // spheres are neutral next to anything else; homotopy spheres merge
  bool has_nonsphere = false;
  for (const auto& [a, k] : raw) has_nonsphere |= a.kind != AtomKind::Sphere;

  ManifoldDescriptor d;
  d.dim = dim;
  std::int64_t homotopy_count = 0;
  bool exotic = false;
  std::vector<std::pair<Atom, std::int64_t>> rest;
  for (const auto& [a, k] : raw) {
    if (a.kind == AtomKind::Sphere) {
      if (!has_nonsphere) {
        d.atoms = {{Atom::sphere(dim), 1}};
        return d;
      }
      continue;
    }
    if (a.kind == AtomKind::HomotopySphere) {
      homotopy_count += k;
      exotic |= a.exotic_possible;
      continue;
    }
    rest.emplace_back(a, k);
  }
  if (homotopy_count > 0) rest.emplace_back(Atom::homotopy_sphere(dim, exotic), 1);

  std::stable_sort(rest.begin(), rest.end(),
                   [](const auto& x, const auto& y) { return atom_less(x.first, y.first); });
  for (auto& [a, k] : rest) {
    if (!d.atoms.empty() && atom_equal(d.atoms.back().first, a)) {
      d.atoms.back().second += k;
      d.atoms.back().first.exotic_possible |= a.exotic_possible;
    } else {
      d.atoms.emplace_back(a, k);
    }
  }
  return d;
}

namespace detail {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : s_(text) {}

  ManifoldDescriptor run() {
    std::vector<std::pair<Atom, std::int64_t>> raw;
    std::vector<std::size_t> positions;
    while (true) {
      skip_ws();
      positions.push_back(pos_);
      raw.push_back(parse_term());
      skip_ws();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] != '#')
        throw parse_error(pos_, "expected '#' between summands or end of input");
      ++pos_;
    }
    return make_descriptor(std::move(raw), &positions);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  bool at_digit() const { return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9'; }

  std::int64_t parse_uint(const char* what) {
    skip_ws();
    if (!at_digit()) throw parse_error(pos_, std::string("expected ") + what);
    std::int64_t v = 0;
    const std::size_t start = pos_;
    while (at_digit()) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 100000000) throw parse_error(start, std::string(what) + " is unreasonably large");
      ++pos_;
    }
    return v;
  }

  std::pair<Atom, std::int64_t> parse_term() {
    skip_ws();
    std::int64_t mult = 1;
    if (at_digit()) {
      const std::size_t mpos = pos_;
      mult = parse_uint("multiplicity");
      if (mult < 1) throw parse_error(mpos, "multiplicity must be at least 1");
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != '*')
        throw parse_error(pos_, "expected '*' after a multiplicity");
      ++pos_;
      skip_ws();
    }
    return {parse_atom(), mult};
  }

  Atom parse_atom() {
    skip_ws();
    const std::size_t start = pos_;
    if (s_.substr(pos_).starts_with("Sigma")) {
      pos_ += 5;
      const int d = static_cast<int>(parse_uint("homotopy-sphere dimension after 'Sigma'"));
      Atom a = Atom::homotopy_sphere(d, true);
      validate_atom(a, start);
      return a;
    }
    if (pos_ < s_.size() && s_[pos_] == 'S') {
      ++pos_;
      const int d1 = static_cast<int>(parse_uint("sphere dimension after 'S'"));
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == 'x') {
        ++pos_;
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != 'S')
          throw parse_error(pos_, "expected 'S' after 'x' in a product");
        ++pos_;
        const int d2 = static_cast<int>(parse_uint("sphere dimension after 'S'"));
        Atom a = Atom::product(d1, d2);
        validate_atom(a, start);
        return a;
      }
      Atom a = Atom::sphere(d1);
      validate_atom(a, start);
      return a;
    }
    throw parse_error(pos_, "expected a summand: 'S<k>', 'S<a>xS<b>' or 'Sigma<k>'");
  }
};

}  // namespace detail

inline ManifoldDescriptor parse_descriptor(std::string_view text) {
  return detail::DescriptorParser(text).run();
}

inline std::string to_string(const ManifoldDescriptor& d) {
  std::string out;
  for (const auto& [a, k] : d.atoms) {
    if (!out.empty()) out += " # ";
    if (k > 1) out += std::to_string(k) + "*";
    switch (a.kind) {
      case AtomKind::Sphere: out += "S" + std::to_string(a.p); break;
      case AtomKind::HomotopySphere: out += "Sigma" + std::to_string(a.p); break;
      case AtomKind::ProductOfSpheres:
        out += "S" + std::to_string(a.p) + "xS" + std::to_string(a.q);
        break;
    }
  }
  return out;
}

/// Betti numbers b_0..b_dim.  Summands contribute their interior degrees
/// (Kuenneth for products), connected sum is additive there, and the ends
/// are always 1.
inline std::vector<std::int64_t> betti(const ManifoldDescriptor& d) {
  if (d.dim < 2 || d.atoms.empty()) throw std::invalid_argument("descriptor is not normalized");
  std::vector<std::int64_t> b(static_cast<std::size_t>(d.dim + 1), 0);
  b.front() = b.back() = 1;
  for (const auto& [a, k] : d.atoms) {
    if (a.kind != AtomKind::ProductOfSpheres) continue;
    b[static_cast<std::size_t>(a.p)] += k;
    b[static_cast<std::size_t>(a.q)] += k;
  }
  return b;
}

/// Rank of H_{dim-1} after removing `punctures` points: each puncture
/// adds a boundary sphere, and one relation ties them together, so for a
/// closed orientable N the rank is b_{dim-1}(N) + punctures - 1.
inline std::int64_t puncture_betti(const ManifoldDescriptor& d, std::int64_t punctures) {
  // the half-lives-half-dies count below needs at least one puncture; an
  // unpunctured manifold is a different computation (plain betti)
  if (punctures < 1) throw std::invalid_argument("puncture count must be at least 1");
  const std::int64_t base = betti(d)[static_cast<std::size_t>(d.dim - 1)];
  return base + punctures - 1;
}

/// Number of S^1 x S^{dim-1} summands; for the manifolds handled here and
/// dim >= 3 this equals the rank of the free fundamental group.
inline std::int64_t count_circle_products(const ManifoldDescriptor& d) {
  std::int64_t c = 0;
  for (const auto& [a, k] : d.atoms)
    if (a.kind == AtomKind::ProductOfSpheres && a.p == 1) c += k;
  return c;
}

/// Exact sequence of finite-dimensional vector spaces with one unknown
/// rank.  Exactness forces the alternating rank sum to vanish, which
/// pins the unknown; a negative solution certifies that no exact
/// sequence with the given known ranks exists.
struct ExactSequenceSpec {
  std::vector<std::optional<std::int64_t>> ranks;
  std::string label;
};

struct ExactSolveResult {
  bool feasible = false;
  std::int64_t value = 0;
  int unknown_index = -1;
};

inline ExactSolveResult exact_solve(const ExactSequenceSpec& spec) {
  int unknown = -1;
  for (std::size_t i = 0; i < spec.ranks.size(); ++i) {
    if (!spec.ranks[i].has_value()) {
      if (unknown >= 0) throw std::invalid_argument("exact_solve needs exactly one unknown slot");
      unknown = static_cast<int>(i);
    } else if (*spec.ranks[i] < 0) {
      throw std::invalid_argument("ranks cannot be negative");
    }
  }
  if (unknown < 0) throw std::invalid_argument("exact_solve needs exactly one unknown slot");

  std::int64_t sum = 0;  // alternating sum of the known slots
  for (std::size_t i = 0; i < spec.ranks.size(); ++i) {
    if (static_cast<int>(i) == unknown) continue;
    sum += (i % 2 == 0 ? 1 : -1) * *spec.ranks[i];
  }
  ExactSolveResult r;
  r.unknown_index = unknown;
  // (-1)^u * value + sum = 0
  r.value = (unknown % 2 == 0 ? -1 : 1) * sum;
  r.feasible = r.value >= 0;
  return r;
}

/// Middle-degree rank forced by the sphere-bundle long exact sequence of
/// the construction: segment ranks (0, c, x, b + c - 1, 1, 0) with x
/// unknown.  Exactness gives x = 2c + b - 2; a negative result (c = 0,
/// b = 1) certifies that no such bundle geometry exists.  For n = 2 an
/// extra isomorphism splits off and the numeric instance is unchanged.
struct GysinResult {
  bool feasible = false;
  std::int64_t rank = 0;
  std::vector<std::int64_t> sequence;
  std::string context;
};

inline GysinResult gysin_unknown_rank(std::int64_t c, std::int64_t b, int n) {
  if (c < 0) throw std::invalid_argument("circle-summand count cannot be negative");
  if (b < 1) throw std::invalid_argument("the middle Betti input must be at least 1");
  if (n < 2) throw std::invalid_argument("gysin_unknown_rank needs n >= 2");

  ExactSequenceSpec spec;
  spec.ranks = {std::int64_t{0}, c, std::nullopt, b + c - 1, std::int64_t{1}, std::int64_t{0}};
  spec.label = n == 2 ? "euler-class segment (n = 2, isomorphism slot cancelled)"
                      : "euler-class segment (n > 2)";
  const ExactSolveResult sol = exact_solve(spec);

  GysinResult g;
  g.feasible = sol.feasible;
  g.rank = sol.value;
  g.context = spec.label;
  for (std::size_t i = 0; i < spec.ranks.size(); ++i)
    g.sequence.push_back(static_cast<int>(i) == sol.unknown_index ? sol.value : *spec.ranks[i]);
  return g;
}

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Lower bound b_n(M) - 2c + 2 for the minimal number of critical points
/// of maps M^{2n} -> N^{n+1}, valid when the fundamental group is free of
/// rank c != 1, intermediate homotopy vanishes, and H_{n-1}(M) carries
/// nothing beyond the fundamental group.  Each hypothesis is checked
/// structurally and reported; when one fails the bound is withheld, not
/// fudged.
struct LowerBoundReport {
  ManifoldDescriptor manifold;
  int n = 0;
  std::int64_t middle_betti = 0;
  std::int64_t circle_products = 0;
  std::optional<std::int64_t> bound;
  bool covered = false;
  std::vector<CheckRecord> checks;
  std::string verdict;  // "bound-established" | "hypotheses-not-met" | "outside-covered-range"
};

inline LowerBoundReport lower_bound(const ManifoldDescriptor& m, int n) {
  if (n < 2) throw std::invalid_argument("lower_bound needs n >= 2");
  if (m.dim != 2 * n)
    throw std::invalid_argument("manifold dimension " + std::to_string(m.dim) +
                                " does not equal 2n = " + std::to_string(2 * n));

  LowerBoundReport rep;
  rep.manifold = m;
  rep.n = n;
  const std::vector<std::int64_t> b = betti(m);
  rep.middle_betti = b[static_cast<std::size_t>(n)];
  rep.circle_products = count_circle_products(m);
  const std::int64_t c = rep.circle_products;

  bool hypotheses = true;

  {
    CheckRecord r{"fundamental-group-free", true,
                  "free of rank " + std::to_string(c) + " (circle-product summands)"};
    rep.checks.push_back(r);
  }

  {
    CheckRecord r;
    r.name = "intermediate-homotopy-vanishing";
    r.pass = true;
    for (const auto& [a, k] : m.atoms) {
      if (a.kind != AtomKind::ProductOfSpheres || a.p == 1) continue;
      if (a.p < n) {  // pi_p of an S^p factor with 2 <= p <= n-1
        r.pass = false;
        r.detail = "S" + std::to_string(a.p) + "xS" + std::to_string(a.q) +
                   " has nonzero pi_" + std::to_string(a.p);
        break;
      }
    }
    if (r.pass) r.detail = "pi_j = 0 for 2 <= j <= n-1 on every summand";
    hypotheses &= r.pass;
    rep.checks.push_back(r);
  }

  if (n >= 3) {
    CheckRecord r;
    r.name = "below-middle-homology-vanishing";
    r.pass = b[static_cast<std::size_t>(n - 1)] == 0;
    r.detail = "b_" + std::to_string(n - 1) + " = " + std::to_string(b[static_cast<std::size_t>(n - 1)]) +
               (r.pass ? "" : ", must vanish");
    hypotheses &= r.pass;
    rep.checks.push_back(r);
  } else {
    CheckRecord r;
    r.name = "h1-carried-by-fundamental-group";
    r.pass = b[1] == c;
    r.detail = "b_1 = " + std::to_string(b[1]) + ", free rank = " + std::to_string(c);
    hypotheses &= r.pass;
    rep.checks.push_back(r);
  }

  if (n == 2) {
    for (const auto& [a, k] : m.atoms) {
      if (a.kind == AtomKind::HomotopySphere && a.exotic_possible) {
        rep.checks.push_back({"smooth-embedding-assumption", true,
                              "assumes the punctured homotopy 4-sphere summand embeds in S4"});
        break;
      }
    }
  }

  {
    CheckRecord r{"rank-not-one", c != 1,
                  c == 1 ? "free rank 1 is outside the covered range" : "rank " + std::to_string(c)};
    rep.checks.push_back(r);
  }

  if (!hypotheses) {
    rep.verdict = "hypotheses-not-met";
  } else if (c == 1) {
    rep.verdict = "outside-covered-range";
  } else {
    rep.bound = rep.middle_betti - 2 * c + 2;
    rep.covered = true;
    rep.verdict = "bound-established";
  }
  return rep;
}

}  // namespace hopfcrit
