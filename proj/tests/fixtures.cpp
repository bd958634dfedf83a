#include "fixtures.hpp"

namespace ipos::fixtures {

Algebra from_tables(int n, const std::vector<std::pair<int, int>>& less_pairs,
                    const std::vector<std::vector<int>>& mul_rows,
                    const std::vector<int>& tilde, const std::vector<int>& minus,
                    std::optional<int> unit) {
  Algebra a;
  a.n = n;
  a.leq.assign(size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) a.leq[size_t(i) * n + i] = 1;
  for (auto [lo, hi] : less_pairs) a.leq[size_t(lo) * n + hi] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!a.le(i, j)) continue;
        for (int k = 0; k < n; ++k)
          if (a.le(j, k) && !a.le(i, k)) {
            a.leq[size_t(i) * n + k] = 1;
            changed = true;
          }
      }
  }
  a.mul.reserve(size_t(n) * n);
  for (const std::vector<int>& row : mul_rows)
    a.mul.insert(a.mul.end(), row.begin(), row.end());
  a.tilde = tilde;
  a.minus = minus;
  a.unit = unit;
  require_structure(a);
  return a;
}

Algebra one() { return from_tables(1, {}, {{0}}, {0}, {0}, 0); }

Algebra two() {
  return from_tables(2, {{0, 1}}, {{0, 0}, {0, 1}}, {1, 0}, {1, 0}, 1);
}

Algebra l3() {
  return from_tables(3, {{0, 1}, {1, 2}}, {{0, 0, 0}, {0, 0, 1}, {0, 1, 2}},
                     {2, 1, 0}, {2, 1, 0}, 2);
}

Algebra bool4() {
  return from_tables(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                     {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}},
                     {3, 2, 1, 0}, {3, 2, 1, 0}, 3);
}

Algebra commutative_noncyclic5() {
  std::vector<std::vector<int>> rows(5, std::vector<int>(5, 0));
  return from_tables(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, rows,
                     {4, 2, 3, 1, 0}, {4, 3, 1, 2, 0});
}

Algebra loc_int_diamond4() {
  return from_tables(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                     {{0, 0, 0, 0}, {0, 1, 3, 3}, {0, 3, 2, 3}, {0, 3, 3, 3}},
                     {3, 1, 2, 0}, {3, 1, 2, 0});
}

Algebra two_group_discrete() {
  return from_tables(2, {}, {{0, 1}, {1, 0}}, {0, 1}, {0, 1}, 0);
}

DirectedSystem diamond_collapse_system() {
  // Index poset: 0=p (bottom), 1=q, 2=r (incomparable), 3=s (top).
  DirectedSystem sys;
  sys.d_size = 4;
  sys.join = {0, 1, 2, 3,   // p v -
              1, 1, 3, 3,   // q v -
              2, 3, 2, 3,   // r v -
              3, 3, 3, 3};  // s v -
  sys.components.resize(4);
  for (IntegralComponent& c : sys.components) c.algebra = two();

  const std::vector<int> identity{0, 1};
  const std::vector<int> collapse{1, 1};
  sys.phi.assign(16, {});
  auto set = [&sys](int a, int b, std::vector<int> f) {
    sys.phi[size_t(a) * 4 + b] = std::move(f);
  };
  for (int node = 0; node < 4; ++node) set(node, node, identity);
  set(0, 1, collapse);
  set(0, 2, collapse);
  set(0, 3, collapse);
  set(1, 3, collapse);
  set(2, 3, collapse);
  return sys;
}

}  // namespace ipos::fixtures
