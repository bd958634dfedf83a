#include "core/decompose.hpp"

#include <algorithm>
#include <numeric>

namespace ipos {

int IntegralComponent::local_of_parent(int parent) const {
  const auto it = std::lower_bound(carrier.begin(), carrier.end(), parent);
  if (it == carrier.end() || *it != parent) return -1;
  return int(it - carrier.begin());
}

const std::vector<int>& DirectedSystem::map(int p, int q) const {
  return phi[size_t(p) * d_size + q];
}

int DirectedSystem::local_unit(int p) const { return *components[p].algebra.unit; }

int DirectedSystem::local_zero(int p) const {
  const Algebra& c = components[p].algebra;
  return c.tld(*c.unit);
}

int DirectedSystem::minimum_node() const {
  for (int m = 0; m < d_size; ++m) {
    bool least = true;
    for (int q = 0; q < d_size && least; ++q) least = node_le(m, q);
    if (least) return m;
  }
  return -1;
}

void require_system(const DirectedSystem& sys) {
  const int d = sys.d_size;
  if (d <= 0) throw StructuralError("directed system needs at least one node");
  if (sys.join.size() != size_t(d) * d)
    throw StructuralError("join table has " + std::to_string(sys.join.size()) +
                          " entries, expected " + std::to_string(size_t(d) * d));
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const int v = sys.join_of(p, q);
      if (v < 0 || v >= d)
        throw StructuralError("out-of-range node " + std::to_string(v) + " at join[" +
                              std::to_string(p) + "][" + std::to_string(q) + "]");
    }
  for (int p = 0; p < d; ++p) {
    if (sys.join_of(p, p) != p)
      throw StructuralError("join is not idempotent at node " + std::to_string(p));
    for (int q = 0; q < d; ++q) {
      if (sys.join_of(p, q) != sys.join_of(q, p))
        throw StructuralError("join is not commutative at nodes " + std::to_string(p) + "," +
                              std::to_string(q));
      for (int r = 0; r < d; ++r)
        if (sys.join_of(sys.join_of(p, q), r) != sys.join_of(p, sys.join_of(q, r)))
          throw StructuralError("join is not associative at nodes " + std::to_string(p) + "," +
                                std::to_string(q) + "," + std::to_string(r));
    }
  }

  if (int(sys.components.size()) != d)
    throw StructuralError("system has " + std::to_string(sys.components.size()) +
                          " components for " + std::to_string(d) + " nodes");
  for (int p = 0; p < d; ++p) {
    const IntegralComponent& c = sys.components[p];
    require_structure(c.algebra);
    if (!c.carrier.empty() && c.carrier.size() != size_t(c.algebra.n))
      throw StructuralError("component " + std::to_string(p) + " carrier size " +
                            std::to_string(c.carrier.size()) + " != algebra size " +
                            std::to_string(c.algebra.n));
    if (!c.algebra.unit)
      throw StructuralError("component " + std::to_string(p) + " has no declared unit");
    const ClassReport rep = check_ipo(c.algebra);
    if (!rep.ipo_semigroup || !rep.integral || !rep.declared_unit_valid)
      throw StructuralError("component " + std::to_string(p) +
                            " is not an integral ipo-monoid");
  }

  if (sys.phi.size() != size_t(d) * d)
    throw StructuralError("phi has " + std::to_string(sys.phi.size()) + " slots, expected " +
                          std::to_string(size_t(d) * d));
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const std::vector<int>& f = sys.phi[size_t(p) * d + q];
      if (!sys.node_le(p, q)) {
        if (!f.empty())
          throw StructuralError("phi[" + std::to_string(p) + "][" + std::to_string(q) +
                                "] present although " + std::to_string(p) + " <= " +
                                std::to_string(q) + " fails");
        continue;
      }
      if (f.size() != size_t(sys.components[p].algebra.n))
        throw StructuralError("phi[" + std::to_string(p) + "][" + std::to_string(q) +
                              "] has " + std::to_string(f.size()) + " entries, expected " +
                              std::to_string(sys.components[p].algebra.n));
      for (int a = 0; a < int(f.size()); ++a)
        if (f[a] < 0 || f[a] >= sys.components[q].algebra.n)
          throw StructuralError("out-of-range image " + std::to_string(f[a]) + " at phi[" +
                                std::to_string(p) + "][" + std::to_string(q) + "][" +
                                std::to_string(a) + "]");
    }

  // Family consistency: phi_pp = id, each phi_pq a monoid homomorphism, and
  // phi_qr . phi_pq = phi_pr along every chain p <= q <= r.
  for (int p = 0; p < d; ++p) {
    const std::vector<int>& f = sys.map(p, p);
    for (int a = 0; a < int(f.size()); ++a)
      if (f[a] != a)
        throw IncompatibleFamily("phi[" + std::to_string(p) + "][" + std::to_string(p) +
                                 "] is not the identity map");
  }
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      if (!sys.node_le(p, q)) continue;
      const Algebra& ap = sys.components[p].algebra;
      const Algebra& aq = sys.components[q].algebra;
      const std::vector<int>& f = sys.map(p, q);
      if (f[*ap.unit] != *aq.unit)
        throw IncompatibleFamily("phi[" + std::to_string(p) + "][" + std::to_string(q) +
                                 "] does not preserve the unit");
      for (int a = 0; a < ap.n; ++a)
        for (int b = 0; b < ap.n; ++b)
          if (f[ap.prod(a, b)] != aq.prod(f[a], f[b]))
            throw IncompatibleFamily("phi[" + std::to_string(p) + "][" + std::to_string(q) +
                                     "] does not preserve products at (" + std::to_string(a) +
                                     "," + std::to_string(b) + ")");
    }
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      if (!sys.node_le(p, q)) continue;
      for (int r = 0; r < d; ++r) {
        if (!sys.node_le(q, r)) continue;
        const std::vector<int>&f = sys.map(p, q), &g = sys.map(q, r), &h = sys.map(p, r);
        for (int a = 0; a < int(f.size()); ++a)
          if (g[f[a]] != h[a])
            throw IncompatibleFamily("phi composition fails along " + std::to_string(p) +
                                     " <= " + std::to_string(q) + " <= " + std::to_string(r) +
                                     " at element " + std::to_string(a));
      }
    }
}

DirectedSystem decompose(const Algebra& a) {
  const ClassReport rep = check_ipo(a);
  if (!rep.ipo_semigroup) {
    CheckResult why{false, "ipo_semigroup", rep.witnesses.at("ipo_semigroup")};
    throw NotLocallyIntegral(std::move(why));
  }
  if (const CheckResult li = check_locally_integral(a); !li.ok) throw NotLocallyIntegral(li);

  const std::vector<int> pos = positives(a);
  const int d = int(pos.size());
  auto node_of_positive = [&pos](int p) {
    return int(std::lower_bound(pos.begin(), pos.end(), p) - pos.begin());
  };

  DirectedSystem sys;
  sys.d_size = d;
  sys.join.assign(size_t(d) * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // The join of positives is their product (A+ is a join-semilattice
      // under multiplication).
      const int pq = a.prod(pos[i], pos[j]);
      sys.join[size_t(i) * d + j] = node_of_positive(pq);
    }

  sys.components.resize(d);
  for (int i = 0; i < d; ++i) {
    IntegralComponent& comp = sys.components[i];
    for (int x = 0; x < a.n; ++x)
      if (component_index(a, x) == pos[i]) comp.carrier.push_back(x);
    const int m = int(comp.carrier.size());
    Algebra& alg = comp.algebra;
    alg.n = m;
    alg.leq.assign(size_t(m) * m, 0);
    alg.mul.assign(size_t(m) * m, 0);
    alg.tilde.resize(m);
    alg.minus.resize(m);
    auto local = [&comp](int parent) { return comp.local_of_parent(parent); };
    for (int x = 0; x < m; ++x) {
      const int px = comp.carrier[x];
      alg.tilde[x] = local(a.tld(px));
      alg.minus[x] = local(a.mns(px));
      for (int y = 0; y < m; ++y) {
        const int py = comp.carrier[y];
        alg.leq[size_t(x) * m + y] = a.le(px, py);
        alg.mul[size_t(x) * m + y] = local(a.prod(px, py));
      }
    }
    alg.unit = local(pos[i]);
  }

  sys.phi.assign(size_t(d) * d, {});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (!sys.node_le(i, j)) continue;
      const IntegralComponent&cp = sys.components[i], &cq = sys.components[j];
      std::vector<int> f(cp.carrier.size());
      for (int x = 0; x < int(f.size()); ++x)
        f[x] = cq.local_of_parent(a.prod(pos[j], cp.carrier[x]));
      sys.phi[size_t(i) * d + j] = std::move(f);
    }
  return sys;
}

int component_of(const Algebra& a, int x) {
  const std::vector<int> pos = positives(a);
  const int p = component_index(a, x);
  const auto it = std::lower_bound(pos.begin(), pos.end(), p);
  if (it == pos.end() || *it != p)
    throw std::logic_error("local identity of " + std::to_string(x) + " is not positive");
  return int(it - pos.begin());
}

std::vector<std::vector<int>> system_global_ids(const DirectedSystem& sys) {
  // Parent ids are reusable when they exist everywhere, partition 0..N-1 and
  // match component sizes; this keeps glue(decompose(x)) table-identical to x.
  int total = 0;
  bool parents_ok = true;
  for (const IntegralComponent& c : sys.components) {
    total += c.algebra.n;
    if (c.carrier.empty() || c.carrier.size() != size_t(c.algebra.n)) parents_ok = false;
  }
  if (parents_ok) {
    std::vector<uint8_t> seen(total, 0);
    for (const IntegralComponent& c : sys.components)
      for (int parent : c.carrier) {
        if (parent < 0 || parent >= total || seen[parent]) {
          parents_ok = false;
          break;
        }
        seen[parent] = 1;
      }
  }
  std::vector<std::vector<int>> ids(sys.components.size());
  int next = 0;
  for (size_t p = 0; p < sys.components.size(); ++p) {
    if (parents_ok) {
      ids[p] = sys.components[p].carrier;
    } else {
      ids[p].resize(sys.components[p].algebra.n);
      std::iota(ids[p].begin(), ids[p].end(), next);
      next += sys.components[p].algebra.n;
    }
  }
  return ids;
}

int system_size(const DirectedSystem& sys) {
  int total = 0;
  for (const IntegralComponent& c : sys.components) total += c.algebra.n;
  return total;
}

MorphismComponents morphism_components(const DirectedSystem& src, const DirectedSystem& dst,
                                       const std::vector<int>& h) {
  require_system(src);
  require_system(dst);
  const std::vector<std::vector<int>> src_ids = system_global_ids(src);
  const std::vector<std::vector<int>> dst_ids = system_global_ids(dst);
  const int src_n = system_size(src), dst_n = system_size(dst);
  if (h.size() != size_t(src_n))
    throw StructuralError("carrier map has " + std::to_string(h.size()) +
                          " entries, expected " + std::to_string(src_n));

  // Locate each dst global id.
  std::vector<std::pair<int, int>> dst_home(dst_n, {-1, -1});  // (node, local)
  for (int q = 0; q < dst.d_size; ++q)
    for (int b = 0; b < int(dst_ids[q].size()); ++b) dst_home[dst_ids[q][b]] = {q, b};

  MorphismComponents out;
  out.tau.resize(src.d_size);
  out.eta.resize(src.d_size);

  for (int p = 0; p < src.d_size; ++p) {
    const int unit_global = src_ids[p][src.local_unit(p)];
    const int image = h[unit_global];
    if (image < 0 || image >= dst_n)
      throw StructuralError("image " + std::to_string(image) + " of element " +
                            std::to_string(unit_global) + " is out of range");
    const auto [q, b] = dst_home[image];
    if (b != dst.local_unit(q))
      throw StructuralError("map does not send the local identity of node " +
                            std::to_string(p) + " to a local identity");
    out.tau[p] = q;
  }
  for (int p = 0; p < src.d_size; ++p)
    for (int q = 0; q < src.d_size; ++q)
      if (out.tau[src.join_of(p, q)] != dst.join_of(out.tau[p], out.tau[q]))
        throw StructuralError("induced node map is not a semilattice homomorphism at (" +
                              std::to_string(p) + "," + std::to_string(q) + ")");
  for (int p = 0; p < src.d_size; ++p) {
    const int q = out.tau[p];
    out.eta[p].resize(src.components[p].algebra.n);
    for (int a = 0; a < int(out.eta[p].size()); ++a) {
      const int image = h[src_ids[p][a]];
      const auto [node, local] = dst_home[image];
      if (node != q)
        throw StructuralError("map splits component " + std::to_string(p) +
                              ": element " + std::to_string(src_ids[p][a]) +
                              " lands outside node " + std::to_string(q));
      out.eta[p][a] = local;
    }
  }

  // Naturality: eta_q(phi^src_pq(a)) = phi^dst_tau(p)tau(q)(eta_p(a)).
  for (int p = 0; p < src.d_size; ++p)
    for (int q = 0; q < src.d_size; ++q) {
      if (!src.node_le(p, q)) continue;
      const std::vector<int>& f = src.map(p, q);
      const std::vector<int>& g = dst.map(out.tau[p], out.tau[q]);
      for (int a = 0; a < int(f.size()); ++a)
        if (out.eta[q][f[a]] != g[out.eta[p][a]]) {
          out.ok = false;
          out.failed_square = {p, q, a};
          return out;
        }
    }
  return out;
}

}  // namespace ipos
