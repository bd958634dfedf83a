#include "core/duality.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "core/enumerate.hpp"

namespace ipos {
namespace {

std::string node_pair(int p, int q) {
  return "(" + std::to_string(p) + ", " + std::to_string(q) + ")";
}

/// Scans a d*d join table for the semilattice laws.
void require_semilattice_table(const std::vector<int>& join, int d, const char* what) {
  if (int(join.size()) != d * d) throw StructuralError(std::string(what) + ": join table size mismatch");
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      int v = join[size_t(p) * d + q];
      if (v < 0 || v >= d)
        throw StructuralError(std::string(what) + ": join entry out of range at " + node_pair(p, q));
    }
  for (int p = 0; p < d; ++p)
    if (join[size_t(p) * d + p] != p)
      throw StructuralError(std::string(what) + ": join is not idempotent at node " + std::to_string(p));
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      if (join[size_t(p) * d + q] != join[size_t(q) * d + p])
        throw StructuralError(std::string(what) + ": join is not commutative at " + node_pair(p, q));
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int r = 0; r < d; ++r)
        if (join[size_t(join[size_t(p) * d + q]) * d + r] != join[size_t(p) * d + join[size_t(q) * d + r]])
          throw StructuralError(std::string(what) + ": join is not associative at (" + std::to_string(p) +
                                ", " + std::to_string(q) + ", " + std::to_string(r) + ")");
}

}  // namespace

const std::vector<int>& DualSystem::map(int p, int q) const {
  return pmap[size_t(p) * d_size + q];
}

InvalidDualSystem::InvalidDualSystem(Defect d)
    : std::runtime_error("dual system does not describe a locally integral algebra: glueing fails " +
                         d.condition),
      defect(std::move(d)) {}

void require_dual_system(const DualSystem& dual) {
  const int d = dual.d_size;
  if (d <= 0) throw StructuralError("dual system: node count must be positive");
  require_semilattice_table(dual.join, d, "dual system");
  if (int(dual.atoms.size()) != d) throw StructuralError("dual system: one atom count per node required");
  for (int p = 0; p < d; ++p)
    if (dual.atoms[p] < 0)
      throw StructuralError("dual system: negative atom count at node " + std::to_string(p));
  if (dual.pmap.size() != size_t(d) * d)
    throw StructuralError("dual system: map table size mismatch");

  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const std::vector<int>& f = dual.map(p, q);
      if (!dual.node_le(p, q)) {
        if (!f.empty())
          throw StructuralError("dual system: map present for incomparable nodes " + node_pair(p, q));
        continue;
      }
      if (int(f.size()) != dual.atoms[q])
        throw StructuralError("dual system: map for " + node_pair(p, q) + " must have one entry per atom of node " +
                              std::to_string(q));
      for (int b = 0; b < dual.atoms[q]; ++b)
        if (f[b] < -1 || f[b] >= dual.atoms[p])
          throw StructuralError("dual system: map entry out of range at " + node_pair(p, q) + " atom " +
                                std::to_string(b));
      bool total = std::none_of(f.begin(), f.end(), [](int v) { return v == -1; });
      if (p == q) {
        for (int b = 0; b < dual.atoms[p]; ++b)
          if (f[b] != b)
            throw StructuralError("dual system: diagonal map at node " + std::to_string(p) +
                                  " is not the identity");
      } else if (total) {
        throw StructuralError("dual system: map for " + node_pair(p, q) +
                              " is total off the diagonal (dual zero avoidance fails)");
      }
    }

  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int r = 0; r < d; ++r) {
        if (!(dual.node_le(p, q) && dual.node_le(q, r))) continue;
        const std::vector<int>& pq = dual.map(p, q);
        const std::vector<int>& qr = dual.map(q, r);
        const std::vector<int>& pr = dual.map(p, r);
        for (int b = 0; b < dual.atoms[r]; ++b) {
          int expect = qr[b] == -1 ? -1 : pq[qr[b]];
          if (pr[b] != expect)
            throw StructuralError("dual system: maps do not compose along (" + std::to_string(p) + ", " +
                                  std::to_string(q) + ", " + std::to_string(r) + ") at atom " +
                                  std::to_string(b));
        }
      }
}

DualSystem dualize(const Algebra& a) {
  ClassReport report = check_ipo(a);
  const char* missing = nullptr;
  if (!report.ipo_semigroup)
    missing = "an ipo-semigroup";
  else if (!report.idempotent)
    missing = "idempotent";
  else if (!report.commutative)
    missing = "commutative";
  else if (!report.locally_integral)
    missing = "locally integral";
  if (missing != nullptr)
    throw NotIdempotentLocIntegral(std::string("dualize requires an idempotent locally integral ipo-semilattice; input is not ") +
                                   missing);

  DirectedSystem sys = decompose(a);
  const int d = sys.d_size;
  DualSystem dual;
  dual.d_size = d;
  dual.join = sys.join;
  dual.atoms.resize(d);
  dual.pmap.assign(size_t(d) * d, {});

  // Atoms of each component, as ascending local indices (the carriers are
  // ascending, so this is ascending parent order as well).
  std::vector<std::vector<int>> atom_elems(d);
  for (int p = 0; p < d; ++p) {
    const Algebra& c = sys.components[p].algebra;
    if (!is_boolean_algebra(c))
      throw std::logic_error("dualize: component of an idempotent locally integral algebra is not Boolean");
    int zero = sys.local_zero(p);
    for (int x = 0; x < c.n; ++x) {
      if (x == zero || !c.le(zero, x)) continue;
      bool atom = true;
      for (int y = 0; y < c.n && atom; ++y)
        if (y != zero && y != x && c.le(zero, y) && c.le(y, x)) atom = false;
      if (atom) atom_elems[p].push_back(x);
    }
    dual.atoms[p] = int(atom_elems[p].size());
  }

  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      if (!sys.node_le(p, q)) continue;
      const std::vector<int>& phi = sys.map(p, q);
      const Algebra& cq = sys.components[q].algebra;
      std::vector<int> f(dual.atoms[q], -1);
      int image_of_zero = phi[sys.local_zero(p)];
      for (int bi = 0; bi < dual.atoms[q]; ++bi) {
        int b = atom_elems[q][bi];
        if (cq.le(b, image_of_zero)) continue;  // undefined
        int found = -1;
        for (int ai = 0; ai < dual.atoms[p]; ++ai) {
          if (!cq.le(b, phi[atom_elems[p][ai]])) continue;
          if (found != -1)
            throw std::logic_error("dualize: atom lies under the image of two distinct atoms");
          found = ai;
        }
        if (found == -1)
          throw std::logic_error("dualize: atom avoids the image of the zero yet lies under no atom image");
        f[bi] = found;
      }
      dual.pmap[size_t(p) * d + q] = std::move(f);
    }

  return dual;
}

DirectedSystem primal_system(const DualSystem& dual) {
  require_dual_system(dual);
  const int d = dual.d_size;
  DirectedSystem sys;
  sys.d_size = d;
  sys.join = dual.join;
  sys.components.resize(d);
  sys.phi.assign(size_t(d) * d, {});
  for (int p = 0; p < d; ++p) sys.components[p].algebra = powerset_algebra(dual.atoms[p]);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      if (!dual.node_le(p, q)) continue;
      const std::vector<int>& f = dual.map(p, q);
      // phi_pq(S) = { b : f(b) undefined or f(b) in S }, sets as bitmasks.
      int undef_mask = 0;
      for (int b = 0; b < dual.atoms[q]; ++b)
        if (f[b] == -1) undef_mask |= 1 << b;
      std::vector<int>& phi = sys.phi[size_t(p) * d + q];
      phi.resize(size_t(1) << dual.atoms[p]);
      for (int s = 0; s < int(phi.size()); ++s) {
        int image = undef_mask;
        for (int b = 0; b < dual.atoms[q]; ++b)
          if (f[b] != -1 && ((s >> f[b]) & 1)) image |= 1 << b;
        phi[s] = image;
      }
    }
  return sys;
}

Algebra primalize(const DualSystem& dual) {
  GlueOutcome out = glue(primal_system(dual));
  if (!out.defects.empty()) throw InvalidDualSystem(out.defects.front());
  return out.algebra;
}

std::vector<uint8_t> multiplicative_order(const Algebra& a) {
  require_structure(a);
  for (int x = 0; x < a.n; ++x)
    if (a.prod(x, x) != x)
      throw StructuralError("multiplicative order requires an idempotent product; fails at " +
                            std::to_string(x));
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.prod(x, y) != a.prod(y, x))
        throw StructuralError("multiplicative order requires a commutative product; fails at " +
                              node_pair(x, y));
  std::vector<uint8_t> ord(size_t(a.n) * a.n, 0);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.prod(x, y) == x) ord[size_t(x) * a.n + y] = 1;
  return ord;
}

bool dual_systems_isomorphic(const DualSystem& x, const DualSystem& y) {
  require_dual_system(x);
  require_dual_system(y);
  const int d = x.d_size;
  if (y.d_size != d) return false;
  {
    std::vector<int> ax = x.atoms, ay = y.atoms;
    std::sort(ax.begin(), ax.end());
    std::sort(ay.begin(), ay.end());
    if (ax != ay) return false;
  }

  std::vector<int> sigma(d);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool nodes_ok = true;
    for (int p = 0; p < d && nodes_ok; ++p) {
      if (y.atoms[sigma[p]] != x.atoms[p]) nodes_ok = false;
      for (int q = 0; q < d && nodes_ok; ++q)
        if (sigma[x.join_of(p, q)] != y.join_of(sigma[p], sigma[q])) nodes_ok = false;
    }
    if (!nodes_ok) continue;

    // Per-node atom bijections tau_p, chosen node by node with the pmap
    // compatibility squares checked as soon as both endpoints are fixed.
    std::vector<std::vector<int>> tau(d);
    auto compatible = [&](int p, int q) {
      const std::vector<int>& fx = x.map(p, q);
      const std::vector<int>& fy = y.map(sigma[p], sigma[q]);
      for (int b = 0; b < x.atoms[q]; ++b) {
        int expect = fx[b] == -1 ? -1 : tau[p][fx[b]];
        if (fy[tau[q][b]] != expect) return false;
      }
      return true;
    };
    auto search = [&](auto&& self, int p) -> bool {
      if (p == d) return true;
      std::vector<int> perm(x.atoms[p]);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        tau[p] = perm;
        bool ok = true;
        for (int q = 0; q <= p && ok; ++q) {
          if (x.node_le(q, p) && !compatible(q, p)) ok = false;
          if (ok && q != p && x.node_le(p, q) && !compatible(p, q)) ok = false;
        }
        if (ok && self(self, p + 1)) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
      tau[p].clear();
      return false;
    };
    if (search(search, 0)) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

DualSystem random_dual_system(std::mt19937& rng, int max_nodes, int max_atoms) {
  if (max_nodes < 1 || max_atoms < 0)
    throw std::invalid_argument("random_dual_system: bounds must allow at least one trivial node");
  auto pick = [&rng](int lo, int hi) {  // uniform in [lo, hi]
    return lo + int(rng() % uint32_t(hi - lo + 1));
  };

  for (int attempt = 0; attempt < 100000; ++attempt) {
    int d = pick(1, max_nodes);
    const std::vector<Algebra>& shells = enumerate_join_semilattices(d);
    const Algebra& shell = shells[size_t(pick(0, int(shells.size()) - 1))];

    DualSystem dual;
    dual.d_size = d;
    dual.join = join_table(shell);
    dual.atoms.resize(d);
    dual.pmap.assign(size_t(d) * d, {});
    for (int p = 0; p < d; ++p) {
      // A node with something strictly below it needs a partial map into it,
      // so it must have an atom to leave undefined.
      bool minimal = true;
      for (int q = 0; q < d && minimal; ++q)
        if (q != p && dual.node_le(q, p)) minimal = false;
      dual.atoms[p] = minimal ? pick(0, max_atoms) : pick(1, max_atoms);
    }
    for (int p = 0; p < d; ++p) dual.pmap[size_t(p) * d + p].assign(dual.atoms[p], 0);
    for (int p = 0; p < d; ++p)
      for (int b = 0; b < dual.atoms[p]; ++b) dual.pmap[size_t(p) * d + p][b] = b;

    // Sample cover-edge maps with at least one undefined entry each, then
    // compose the rest along lex-least cover chains.
    for (auto [p, q] : cover_pairs(shell)) {
      std::vector<int> f(dual.atoms[q]);
      for (int& v : f) v = pick(-1, dual.atoms[p] - 1);
      if (std::none_of(f.begin(), f.end(), [](int v) { return v == -1; }))
        f[size_t(pick(0, int(f.size()) - 1))] = -1;
      dual.pmap[size_t(p) * d + q] = std::move(f);
    }
    auto derive = [&](auto&& self, int p, int q) -> void {
      if (!dual.map(p, q).empty()) return;
      for (int via = 0; via < d; ++via) {
        if (via == p || via == q || !dual.node_le(p, via) || !dual.node_le(via, q)) continue;
        if (!dual.map(via, q).empty() || [&] {  // via covered by q?
              for (int w = 0; w < d; ++w)
                if (w != via && w != q && dual.node_le(via, w) && dual.node_le(w, q)) return false;
              return true;
            }()) {
          self(self, via, q);
          self(self, p, via);
          const std::vector<int>& upper = dual.map(via, q);
          const std::vector<int>& lower = dual.map(p, via);
          std::vector<int> f(dual.atoms[q]);
          for (int b = 0; b < dual.atoms[q]; ++b) f[b] = upper[b] == -1 ? -1 : lower[upper[b]];
          dual.pmap[size_t(p) * d + q] = std::move(f);
          return;
        }
      }
    };
    bool shapes_ok = true;
    for (int p = 0; p < d && shapes_ok; ++p)
      for (int q = 0; q < d && shapes_ok; ++q) {
        if (p == q || !dual.node_le(p, q)) continue;
        derive(derive, p, q);
        if (int(dual.map(p, q).size()) != dual.atoms[q]) shapes_ok = false;
      }
    if (!shapes_ok) continue;

    try {
      primalize(dual);
    } catch (const StructuralError&) {
      continue;  // derived maps failed to compose along some other chain
    } catch (const InvalidDualSystem&) {
      continue;  // structurally fine but the glueing has defects
    }
    return dual;
  }
  throw std::logic_error("random_dual_system: no valid sample found");
}

}  // namespace ipos
