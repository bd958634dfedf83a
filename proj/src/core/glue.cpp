#include "core/glue.hpp"

#include <numeric>
#include <utility>

namespace ipos {
namespace {

// Does a <= b hold in the glueing, for a local to node p and b local to q?
bool glue_le(const DirectedSystem& sys, int p, int a, int q, int b) {
  const int r = sys.join_of(p, q);
  const Algebra& cq = sys.components[q].algebra;
  const Algebra& cr = sys.components[r].algebra;
  return cr.prod(sys.map(p, r)[a], sys.map(q, r)[cq.tld(b)]) == sys.local_zero(r);
}

}  // namespace

CheckResult verify_za(const DirectedSystem& sys) {
  require_system(sys);
  for (int p = 0; p < sys.d_size; ++p)
    for (int q = 0; q < sys.d_size; ++q) {
      if (p == q || !sys.node_le(p, q)) continue;
      if (sys.map(p, q)[sys.local_zero(p)] == sys.local_zero(q))
        return {false, "za", {p, q}};
    }
  return {};
}

CheckResult verify_bal(const DirectedSystem& sys) {
  require_system(sys);
  for (int p = 0; p < sys.d_size; ++p)
    for (int q = 0; q < sys.d_size; ++q) {
      if (!sys.node_le(p, q)) continue;
      const Algebra& cp = sys.components[p].algebra;
      const Algebra& cq = sys.components[q].algebra;
      const std::vector<int>& f = sys.map(p, q);
      for (int a = 0; a < cp.n; ++a)
        if (cq.tld(f[cp.mns(a)]) != cq.mns(f[cp.tld(a)])) return {false, "bal", {p, q, a}};
    }
  return {};
}

CheckResult verify_mon(const DirectedSystem& sys) {
  require_system(sys);
  for (int p = 0; p < sys.d_size; ++p)
    for (int q = 0; q < sys.d_size; ++q) {
      if (!sys.node_le(p, q)) continue;
      const Algebra& cp = sys.components[p].algebra;
      const Algebra& cq = sys.components[q].algebra;
      const std::vector<int>& f = sys.map(p, q);
      for (int a = 0; a < cp.n; ++a)
        for (int b = 0; b < cp.n; ++b)
          if (cp.le(a, b) && !cq.le(f[a], f[b])) return {false, "mon", {p, q, a, b}};
    }
  return {};
}

CheckResult verify_lax(const DirectedSystem& sys) {
  require_system(sys);
  for (int p = 0; p < sys.d_size; ++p)
    for (int q = 0; q < sys.d_size; ++q) {
      if (!sys.node_le(p, q)) continue;
      for (int r = 0; r < sys.d_size; ++r) {
        if (!sys.node_le(p, r)) continue;
        const Algebra& cp = sys.components[p].algebra;
        const Algebra& cq = sys.components[q].algebra;
        for (int a = 0; a < cp.n; ++a) {
          const int x = cq.tld(sys.map(p, q)[a]);
          const int y = sys.map(p, r)[cp.tld(a)];
          if (!glue_le(sys, q, x, r, y)) return {false, "lax", {p, q, r, a}};
        }
      }
    }
  return {};
}

GlueOutcome glue(const DirectedSystem& sys) {
  require_system(sys);
  const int d = sys.d_size;
  const std::vector<std::vector<int>> ids = system_global_ids(sys);
  const int n = system_size(sys);
  std::vector<int> node_of(n), local_of(n);
  for (int p = 0; p < d; ++p)
    for (int x = 0; x < int(ids[p].size()); ++x) {
      node_of[ids[p][x]] = p;
      local_of[ids[p][x]] = x;
    }

  Algebra g;
  g.n = n;
  g.mul.assign(size_t(n) * n, 0);
  g.tilde.resize(n);
  g.minus.resize(n);
  for (int a = 0; a < n; ++a) {
    const int p = node_of[a], x = local_of[a];
    const Algebra& cp = sys.components[p].algebra;
    g.tilde[a] = ids[p][cp.tld(x)];
    g.minus[a] = ids[p][cp.mns(x)];
    for (int b = 0; b < n; ++b) {
      const int q = node_of[b], y = local_of[b];
      const int r = sys.join_of(p, q);
      const Algebra& cr = sys.components[r].algebra;
      g.mul[size_t(a) * n + b] = ids[r][cr.prod(sys.map(p, r)[x], sys.map(q, r)[y])];
    }
  }
  g.leq.assign(size_t(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int r = sys.join_of(node_of[a], node_of[b]);
      g.leq[size_t(a) * n + b] = g.prod(a, g.tld(b)) == ids[r][sys.local_zero(r)];
    }

  if (const int m = sys.minimum_node(); m >= 0) {
    const int u = ids[m][sys.local_unit(m)];
    bool is_identity = true;
    for (int x = 0; x < n && is_identity; ++x)
      is_identity = g.prod(u, x) == x && g.prod(x, u) == x;
    if (is_identity) g.unit = u;
  }

  std::vector<Defect> defects;
  if (const CheckResult za = verify_za(sys); !za.ok) defects.push_back({"za", za.witness});
  if (const CheckResult bal = verify_bal(sys); !bal.ok) defects.push_back({"bal", bal.witness});
  [&] {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!g.le(a, b)) continue;
        for (int c = 0; c < n; ++c)
          if (g.le(b, c) && !g.le(a, c)) {
            defects.push_back({"transitivity", {a, b, c}});
            return;
          }
      }
  }();
  [&] {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && g.le(a, b) && g.le(b, a)) {
          defects.push_back({"antisymmetry", {a, b}});
          return;
        }
  }();
  return {std::move(g), std::move(defects)};
}

GlueOutcome glue_linear(const std::vector<IntegralComponent>& monoids) {
  if (monoids.empty()) throw StructuralError("linear glueing needs at least one component");
  const int d = int(monoids.size());
  DirectedSystem sys;
  sys.d_size = d;
  sys.join.resize(size_t(d) * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) sys.join[size_t(p) * d + q] = std::max(p, q);
  sys.components = monoids;
  for (int p = 0; p < d; ++p) {
    sys.components[p].carrier.clear();
    if (sys.components[p].algebra.n < 2)
      throw StructuralError("component " + std::to_string(p) +
                            " is trivial; the linear glueing needs at least two elements");
  }
  sys.phi.assign(size_t(d) * d, {});
  for (int p = 0; p < d; ++p) {
    std::vector<int>& id = sys.phi[size_t(p) * d + p];
    id.resize(sys.components[p].algebra.n);
    std::iota(id.begin(), id.end(), 0);
    for (int q = p + 1; q < d; ++q)
      sys.phi[size_t(p) * d + q]
          .assign(sys.components[p].algebra.n, *sys.components[q].algebra.unit);
  }
  return glue(sys);
}

GlueOutcome glue_linear(const std::vector<Algebra>& monoids) {
  std::vector<IntegralComponent> comps(monoids.size());
  for (size_t i = 0; i < monoids.size(); ++i) comps[i].algebra = monoids[i];
  return glue_linear(comps);
}

CheckResult subreduct_check(const Algebra& alg) {
  const ClassReport rep = check_ipo(alg);
  if (!rep.ipo_semigroup)
    throw NotLocallyIntegral({false, "ipo_semigroup", rep.witnesses.at("ipo_semigroup")});
  if (const CheckResult li = check_locally_integral(alg); !li.ok) throw NotLocallyIntegral(li);
  const std::vector<int> pos = positives(alg);
  for (int p : pos) {
    const int zero_p = alg.prod(alg.mns(p), p);
    for (int q : pos)
      if (!alg.le(zero_p, q)) return {false, "zeros_below_units", {p, q}};
  }
  return {};
}

Algebra extend_to_monoid(const Algebra& alg, const Algebra& bottom) {
  if (const CheckResult sub = subreduct_check(alg); !sub.ok)
    throw SubreductConditionFails(sub.witness);

  for (int p : positives(alg))
    if (alg.prod(alg.mns(p), p) == p) {
      // A trivial component's element is both its local zero and its local
      // identity, which makes it the global identity of the whole algebra.
      const ClassReport rep = check_ipo(alg);
      if (!rep.discovered_unit)
        throw std::logic_error("trivial component without a global identity");
      Algebra out = alg;
      out.unit = rep.discovered_unit;
      return out;
    }

  DirectedSystem sys = decompose(alg);
  const int d = sys.d_size;
  DirectedSystem ext;
  ext.d_size = d + 1;
  ext.join.assign(size_t(d + 1) * (d + 1), 0);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) ext.join[size_t(p) * (d + 1) + q] = sys.join_of(p, q);
  for (int p = 0; p <= d; ++p) {
    ext.join[size_t(d) * (d + 1) + p] = p;
    ext.join[size_t(p) * (d + 1) + d] = p;
  }
  ext.join[size_t(d) * (d + 1) + d] = d;

  ext.components = sys.components;
  IntegralComponent bot;
  bot.algebra = bottom;
  bot.carrier.resize(bottom.n);
  std::iota(bot.carrier.begin(), bot.carrier.end(), alg.n);
  ext.components.push_back(std::move(bot));

  ext.phi.assign(size_t(d + 1) * (d + 1), {});
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      ext.phi[size_t(p) * (d + 1) + q] = sys.phi[size_t(p) * d + q];
  for (int p = 0; p < d; ++p)
    ext.phi[size_t(d) * (d + 1) + p].assign(bottom.n, sys.local_unit(p));
  std::vector<int>& id = ext.phi[size_t(d) * (d + 1) + d];
  id.resize(bottom.n);
  std::iota(id.begin(), id.end(), 0);

  GlueOutcome out = glue(ext);
  if (!out.defects.empty())
    throw std::logic_error("monoid extension produced a defective glueing (" +
                           out.defects.front().condition + ")");
  return std::move(out.algebra);
}

Algebra extend_to_monoid(const Algebra& alg) {
  Algebra two;
  two.n = 2;
  two.leq = {1, 1, 0, 1};
  two.mul = {0, 0, 0, 1};
  two.tilde = {1, 0};
  two.minus = {1, 0};
  two.unit = 1;
  return extend_to_monoid(alg, two);
}

}  // namespace ipos
