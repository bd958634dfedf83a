#include "core/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace ipos {
namespace {

std::string serialize_tables(const Algebra& a) {
  std::string out;
  out.reserve(static_cast<size_t>(1 + 2 * a.n * a.n + 2 * a.n));
  out.push_back(static_cast<char>(a.n));
  for (uint8_t bit : a.leq) out.push_back(static_cast<char>(bit));
  for (int v : a.mul) out.push_back(static_cast<char>(v));
  for (int v : a.tilde) out.push_back(static_cast<char>(v));
  for (int v : a.minus) out.push_back(static_cast<char>(v));
  return out;
}

// Element signature used for the initial partition; every entry is preserved
// by isomorphisms.
struct InitialInvariant {
  int below;      // |{y : y <= x}|
  int above;      // |{y : x <= y}|
  bool idem;      // xx = x
  bool positive;  // x is a local identity
  bool in_cone;   // x lies below some positive

  auto tie() const { return std::tie(below, above, idem, positive, in_cone); }
  bool operator<(const InitialInvariant& o) const { return tie() < o.tie(); }
  bool operator==(const InitialInvariant& o) const { return tie() == o.tie(); }
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const Algebra& a) : a_(a), n_(a.n) {}

  void run() {
    std::vector<int> colors = initial_colors();
    refine(colors);
    search(colors);
  }

  std::string best_bytes;
  std::vector<int> best_perm;

 private:
  std::vector<int> initial_colors() const {
    std::vector<char> pos(n_, 0), cone(n_, 0);
    for (int p : positives(a_)) pos[p] = 1;
    for (int x : negative_cone(a_)) cone[x] = 1;
    std::vector<InitialInvariant> inv(n_);
    for (int x = 0; x < n_; ++x) {
      int below = 0, above = 0;
      for (int y = 0; y < n_; ++y) {
        below += a_.le(y, x);
        above += a_.le(x, y);
      }
      inv[x] = {below, above, a_.prod(x, x) == x, pos[x] != 0, cone[x] != 0};
    }
    std::vector<InitialInvariant> sorted = inv;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colors(n_);
    for (int x = 0; x < n_; ++x)
      colors[x] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), inv[x]) -
                                   sorted.begin());
    return colors;
  }

  // One signature per element; the current color leads, so re-identification
  // can only split classes and class ids stay ordered between rounds.
  using Signature = std::vector<int>;

  Signature signature_of(const std::vector<int>& colors, int x) const {
    Signature sig;
    sig.reserve(3 + 5 * n_);
    sig.push_back(colors[x]);
    sig.push_back(colors[a_.tld(x)]);
    sig.push_back(colors[a_.mns(x)]);
    std::vector<std::array<int, 5>> rows(n_);
    for (int y = 0; y < n_; ++y)
      rows[y] = {colors[y], a_.le(x, y) ? 1 : 0, a_.le(y, x) ? 1 : 0, colors[a_.prod(x, y)],
                 colors[a_.prod(y, x)]};
    std::sort(rows.begin(), rows.end());
    for (const auto& r : rows) sig.insert(sig.end(), r.begin(), r.end());
    return sig;
  }

  void refine(std::vector<int>& colors) const {
    for (;;) {
      std::vector<Signature> sigs(n_);
      for (int x = 0; x < n_; ++x) sigs[x] = signature_of(colors, x);
      std::vector<Signature> distinct = sigs;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      std::vector<int> next(n_);
      for (int x = 0; x < n_; ++x)
        next[x] = static_cast<int>(
            std::lower_bound(distinct.begin(), distinct.end(), sigs[x]) - distinct.begin());
      if (next == colors) return;
      colors = std::move(next);
    }
  }

  static int color_count(const std::vector<int>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  void search(const std::vector<int>& colors) {
    int ncolors = color_count(colors);
    if (ncolors == n_) {
      consider_leaf(colors);
      return;
    }
    // Smallest color class with at least two members; a canonical choice
    // because it depends only on the partition.
    int target = -1;
    std::vector<int> class_size(ncolors, 0);
    for (int c : colors) ++class_size[c];
    for (int c = 0; c < ncolors && target < 0; ++c)
      if (class_size[c] >= 2) target = c;
    for (int x = 0; x < n_; ++x) {
      if (colors[x] != target) continue;
      std::vector<int> branch = colors;
      branch[x] = ncolors;
      refine(branch);
      search(branch);
    }
  }

  void consider_leaf(const std::vector<int>& colors) {
    // Discrete partition: send each element to its color index.
    Algebra candidate = apply_permutation(a_, colors);
    std::string bytes = serialize_tables(candidate);
    if (best_bytes.empty() || bytes < best_bytes) {
      best_bytes = std::move(bytes);
      best_perm = colors;
    }
  }

  const Algebra& a_;
  int n_;
};

}  // namespace

Algebra apply_permutation(const Algebra& a, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != a.n)
    throw StructuralError("permutation size does not match carrier");
  std::vector<char> seen(a.n, 0);
  for (int v : perm) {
    if (v < 0 || v >= a.n || seen[v])
      throw StructuralError("permutation is not a bijection on the carrier");
    seen[v] = 1;
  }
  Algebra b;
  b.n = a.n;
  b.leq.assign(static_cast<size_t>(a.n) * a.n, 0);
  b.mul.assign(static_cast<size_t>(a.n) * a.n, 0);
  b.tilde.assign(a.n, 0);
  b.minus.assign(a.n, 0);
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      b.leq[static_cast<size_t>(perm[i]) * a.n + perm[j]] = a.le(i, j) ? 1 : 0;
      b.mul[static_cast<size_t>(perm[i]) * a.n + perm[j]] = perm[a.prod(i, j)];
    }
    b.tilde[perm[i]] = perm[a.tld(i)];
    b.minus[perm[i]] = perm[a.mns(i)];
  }
  if (a.unit) b.unit = perm[*a.unit];
  return b;
}

std::string canonical_key(const Algebra& a) {
  Canonicalizer c(a);
  c.run();
  return c.best_bytes;
}

Algebra canonical_form(const Algebra& a) {
  Canonicalizer c(a);
  c.run();
  return apply_permutation(a, c.best_perm);
}

std::string canonical_key_hex(const Algebra& a) {
  static const char* digits = "0123456789abcdef";
  std::string key = canonical_key(a);
  std::string hex;
  hex.reserve(key.size() * 2);
  for (unsigned char byte : key) {
    hex.push_back(digits[byte >> 4]);
    hex.push_back(digits[byte & 0xf]);
  }
  return hex;
}

bool brute_force_isomorphic(const Algebra& a, const Algebra& b) {
  if (a.n != b.n) return false;
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.n && ok; ++i) {
      if (b.tld(perm[i]) != perm[a.tld(i)] || b.mns(perm[i]) != perm[a.mns(i)]) ok = false;
      for (int j = 0; j < a.n && ok; ++j) {
        if (b.le(perm[i], perm[j]) != a.le(i, j)) ok = false;
        if (b.prod(perm[i], perm[j]) != perm[a.prod(i, j)]) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace ipos
