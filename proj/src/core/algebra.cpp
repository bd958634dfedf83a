#include "core/algebra.hpp"

#include <algorithm>

namespace ipos {

namespace {

std::string cell_name(const char* table, int i, int j) {
  return std::string(table) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

std::string entry_name(const char* table, int i) {
  return std::string(table) + "[" + std::to_string(i) + "]";
}

}  // namespace

std::optional<std::string> validate_structure(const Algebra& a) {
  if (a.n <= 0) return "carrier must be nonempty (n >= 1), got n = " + std::to_string(a.n);
  const size_t n = size_t(a.n), nn = n * n;
  if (a.leq.size() != nn)
    return "leq has " + std::to_string(a.leq.size()) + " entries, expected " + std::to_string(nn);
  if (a.mul.size() != nn)
    return "mul has " + std::to_string(a.mul.size()) + " entries, expected " + std::to_string(nn);
  if (a.tilde.size() != n)
    return "tilde has " + std::to_string(a.tilde.size()) + " entries, expected " + std::to_string(n);
  if (a.minus.size() != n)
    return "minus has " + std::to_string(a.minus.size()) + " entries, expected " + std::to_string(n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      const int v = a.mul[n * i + j];
      if (v < 0 || v >= a.n)
        return "out-of-range index " + std::to_string(v) + " at " + cell_name("mul", i, j);
    }
  for (int i = 0; i < a.n; ++i) {
    if (a.tilde[i] < 0 || a.tilde[i] >= a.n)
      return "out-of-range index " + std::to_string(a.tilde[i]) + " at " + entry_name("tilde", i);
    if (a.minus[i] < 0 || a.minus[i] >= a.n)
      return "out-of-range index " + std::to_string(a.minus[i]) + " at " + entry_name("minus", i);
  }
  if (a.unit && (*a.unit < 0 || *a.unit >= a.n))
    return "declared unit " + std::to_string(*a.unit) + " is out of range";
  return std::nullopt;
}

void require_structure(const Algebra& a) {
  if (auto err = validate_structure(a)) throw StructuralError(*err);
}

bool ClassReport::flag(const std::string& name) const {
  if (name == "poset") return poset;
  if (name == "semigroup") return semigroup;
  if (name == "dn") return dn;
  if (name == "antitone") return antitone;
  if (name == "rotation") return rotation;
  if (name == "ipo_semigroup") return ipo_semigroup;
  if (name == "cyclic") return cyclic;
  if (name == "commutative") return commutative;
  if (name == "idempotent") return idempotent;
  if (name == "has_local_identities") return has_local_identities;
  if (name == "locally_integral") return locally_integral;
  if (name == "integral") return integral;
  if (name == "has_global_identity") return has_global_identity;
  if (name == "lattice_ordered") return lattice_ordered;
  throw std::invalid_argument("unknown class flag: " + name);
}

namespace {

// Scans for the first poset-axiom violation: reflexivity over x, then
// antisymmetry over (x,y), then transitivity over (x,y,z).
CheckResult scan_poset(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    if (!a.le(x, x)) return {false, "reflexivity", {x}};
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (x != y && a.le(x, y) && a.le(y, x)) return {false, "antisymmetry", {x, y}};
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      if (!a.le(x, y)) continue;
      for (int z = 0; z < a.n; ++z)
        if (a.le(y, z) && !a.le(x, z)) return {false, "transitivity", {x, y, z}};
    }
  return {};
}

CheckResult scan_associativity(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      for (int z = 0; z < a.n; ++z)
        if (a.prod(a.prod(x, y), z) != a.prod(x, a.prod(y, z)))
          return {false, "associativity", {x, y, z}};
  return {};
}

CheckResult scan_dn(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    if (a.tld(a.mns(x)) != x || a.mns(a.tld(x)) != x) return {false, "dn", {x}};
  return {};
}

CheckResult scan_antitone(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      if (!a.le(x, y)) continue;
      if (!a.le(a.tld(y), a.tld(x))) return {false, "antitone_tilde", {x, y}};
      if (!a.le(a.mns(y), a.mns(x))) return {false, "antitone_minus", {x, y}};
    }
  return {};
}

// (rot) as the three-way equivalence on every triple.
CheckResult scan_rotation(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      for (int z = 0; z < a.n; ++z) {
        const bool r1 = a.le(a.prod(x, y), z);
        const bool r2 = a.le(a.prod(y, a.tld(z)), a.tld(x));
        const bool r3 = a.le(a.prod(a.mns(z), x), a.mns(y));
        if (r1 != r2 || r2 != r3) return {false, "rotation", {x, y, z}};
      }
  return {};
}

bool is_global_identity(const Algebra& a, int e) {
  for (int x = 0; x < a.n; ++x)
    if (a.prod(e, x) != x || a.prod(x, e) != x) return false;
  return true;
}

}  // namespace

ClassReport check_ipo(const Algebra& a) {
  require_structure(a);
  ClassReport r;
  auto record = [&r](const char* flag_name, const CheckResult& c) {
    if (!c.ok) r.witnesses[flag_name] = c.witness;
    return c.ok;
  };

  r.poset = record("poset", scan_poset(a));
  r.semigroup = record("semigroup", scan_associativity(a));
  r.dn = record("dn", scan_dn(a));
  r.antitone = record("antitone", scan_antitone(a));
  r.rotation = record("rotation", scan_rotation(a));
  r.ipo_semigroup = r.poset && r.semigroup && r.dn && r.antitone && r.rotation;
  if (!r.ipo_semigroup) {
    // The conjunction inherits the first failing constituent's witness.
    for (const char* part : {"poset", "semigroup", "dn", "antitone", "rotation"})
      if (auto it = r.witnesses.find(part); it != r.witnesses.end()) {
        r.witnesses["ipo_semigroup"] = it->second;
        break;
      }
  }

  {
    CheckResult c;
    for (int x = 0; x < a.n && c.ok; ++x)
      if (a.tld(x) != a.mns(x)) c = {false, "cyclic", {x}};
    r.cyclic = record("cyclic", c);
  }
  {
    CheckResult c;
    for (int x = 0; x < a.n && c.ok; ++x)
      for (int y = 0; y < a.n && c.ok; ++y)
        if (a.prod(x, y) != a.prod(y, x)) c = {false, "commutative", {x, y}};
    r.commutative = record("commutative", c);
  }
  {
    CheckResult c;
    for (int x = 0; x < a.n && c.ok; ++x)
      if (a.prod(x, x) != x) c = {false, "idempotent", {x}};
    r.idempotent = record("idempotent", c);
  }
  {
    // Local identities: x\x = x/x and (x\x).x = x for every x.
    CheckResult c;
    for (int x = 0; x < a.n && c.ok; ++x) {
      if (residual_right(a, x, x) != residual_left(a, x, x))
        c = {false, "local_identity_balance", {x}};
      else if (a.prod(residual_right(a, x, x), x) != x)
        c = {false, "local_identity_action", {x}};
    }
    r.has_local_identities = record("has_local_identities", c);
  }
  r.locally_integral = record("locally_integral", check_locally_integral(a));
  {
    const IntegralResult ir = check_integral(a);
    r.integral = ir.ok;
    if (!ir.ok) r.witnesses["integral"] = ir.witness;
  }
  {
    for (int e = 0; e < a.n; ++e)
      if (is_global_identity(a, e)) {
        r.discovered_unit = e;
        break;
      }
    r.has_global_identity = r.discovered_unit.has_value();
    if (!r.has_global_identity) {
      // Existential failure: witness lists, for each candidate e, the first
      // element disqualifying it.
      std::vector<int> w(a.n, -1);
      for (int e = 0; e < a.n; ++e)
        for (int x = 0; x < a.n; ++x)
          if (a.prod(e, x) != x || a.prod(x, e) != x) {
            w[e] = x;
            break;
          }
      r.witnesses["has_global_identity"] = w;
    }
  }
  r.lattice_ordered = record("lattice_ordered", check_lattice_ordered(a));

  if (a.unit) r.declared_unit_valid = is_global_identity(a, *a.unit);
  return r;
}

int residual_left(const Algebra& a, int z, int y) {
  return a.mns(a.prod(y, a.tld(z)));
}

int residual_right(const Algebra& a, int x, int z) {
  return a.tld(a.prod(a.mns(z), x));
}

int plus_op(const Algebra& a, int x, int y) {
  return a.tld(a.prod(a.mns(x), a.mns(y)));
}

std::vector<int> positives(const Algebra& a) {
  std::vector<int> out;
  for (int p = 0; p < a.n; ++p) {
    bool pos = true;
    for (int x = 0; x < a.n && pos; ++x) pos = a.le(x, a.prod(p, x));
    if (pos) out.push_back(p);
  }
  return out;
}

std::vector<int> negative_cone(const Algebra& a) {
  std::vector<int> out;
  for (int p : positives(a)) out.push_back(a.tld(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> local_identity(const Algebra& a, int x) {
  const int l = residual_right(a, x, x), r = residual_left(a, x, x);
  if (l != r) return std::nullopt;
  return l;
}

std::optional<int> local_zero(const Algebra& a, int x) {
  const int l = a.prod(a.mns(x), x), r = a.prod(x, a.tld(x));
  if (l != r) return std::nullopt;
  return l;
}

CheckResult check_locally_integral(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    if (a.prod(a.mns(x), x) != a.prod(x, a.tld(x)))
      return {false, "balance", {x}};
  for (int x = 0; x < a.n; ++x) {
    const int e = residual_left(a, x, x);
    for (int y = 0; y < a.n; ++y)
      if (!a.le(y, a.prod(e, y))) return {false, "positivity", {x, y}};
  }
  for (int x = 0; x < a.n; ++x)
    if (!a.le(a.prod(x, x), x)) return {false, "square_decreasing", {x}};
  for (int x = 0; x < a.n; ++x) {
    const int z = a.prod(x, a.tld(x));
    if (a.prod(z, z) != z) return {false, "zero_idempotent", {x}};
  }
  return {};
}

IntegralResult check_integral(const Algebra& a) {
  for (int x = 0; x < a.n; ++x)
    if (!a.le(x, a.prod(residual_left(a, x, x), x))) return {false, {x}, std::nullopt};
  for (int y = 0; y < a.n; ++y)
    for (int x = 0; x < a.n; ++x)
      if (!a.le(a.prod(y, x), x)) return {false, {y, x}, std::nullopt};
  // Both inequations hold, so the algebra is integral: x/x is a global
  // identity and the top element. Report it.
  IntegralResult res;
  for (int e = 0; e < a.n; ++e)
    if (is_global_identity(a, e)) {
      res.identity = e;
      break;
    }
  return res;
}

CheckResult check_lattice_ordered(const Algebra& a) {
  auto bound_exists = [&a](int x, int y, bool upper) {
    for (int c = 0; c < a.n; ++c) {
      const bool bounds = upper ? (a.le(x, c) && a.le(y, c)) : (a.le(c, x) && a.le(c, y));
      if (!bounds) continue;
      bool least = true;
      for (int d = 0; d < a.n && least; ++d) {
        const bool dbounds = upper ? (a.le(x, d) && a.le(y, d)) : (a.le(d, x) && a.le(d, y));
        if (dbounds && !(upper ? a.le(c, d) : a.le(d, c))) least = false;
      }
      if (least) return true;
    }
    return false;
  };
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (!bound_exists(x, y, true)) return {false, "join", {x, y}};
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (!bound_exists(x, y, false)) return {false, "meet", {x, y}};
  return {};
}

std::vector<int> subalgebra_generated(const Algebra& a, const std::vector<int>& X) {
  std::vector<uint8_t> in(a.n, 0);
  for (int x : X) {
    if (x < 0 || x >= a.n)
      throw StructuralError("generator index " + std::to_string(x) + " out of range");
    in[x] = 1;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < a.n; ++x) {
      if (!in[x]) continue;
      for (int u : {a.tld(x), a.mns(x)})
        if (!in[u]) in[u] = 1, grew = true;
      for (int y = 0; y < a.n; ++y) {
        if (!in[y]) continue;
        for (int u : {a.prod(x, y), a.prod(y, x)})
          if (!in[u]) in[u] = 1, grew = true;
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < a.n; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

CheckResult check_morphism(const Algebra& src, const Algebra& dst,
                           const std::vector<int>& h, bool embedding) {
  if (h.size() != size_t(src.n))
    throw StructuralError("morphism map has " + std::to_string(h.size()) +
                          " entries, expected " + std::to_string(src.n));
  for (int x = 0; x < src.n; ++x)
    if (h[x] < 0 || h[x] >= dst.n)
      throw StructuralError("out-of-range image " + std::to_string(h[x]) + " at " +
                            entry_name("h", x));
  for (int x = 0; x < src.n; ++x)
    for (int y = 0; y < src.n; ++y)
      if (src.le(x, y) && !dst.le(h[x], h[y])) return {false, "monotone", {x, y}};
  for (int x = 0; x < src.n; ++x)
    for (int y = 0; y < src.n; ++y)
      if (h[src.prod(x, y)] != dst.prod(h[x], h[y])) return {false, "product", {x, y}};
  for (int x = 0; x < src.n; ++x)
    if (h[src.tld(x)] != dst.tld(h[x])) return {false, "tilde", {x}};
  for (int x = 0; x < src.n; ++x)
    if (h[src.mns(x)] != dst.mns(h[x])) return {false, "minus", {x}};
  if (src.unit && dst.unit && h[*src.unit] != *dst.unit)
    return {false, "unit", {*src.unit}};
  if (embedding)
    for (int x = 0; x < src.n; ++x)
      for (int y = 0; y < src.n; ++y)
        if (dst.le(h[x], h[y]) && !src.le(x, y)) return {false, "order_reflection", {x, y}};
  return {};
}

int component_index(const Algebra& a, int x) {
  const auto e = local_identity(a, x);
  if (!e)
    throw std::logic_error("component_index: element " + std::to_string(x) +
                           " has no local identity (algebra not locally integral)");
  return *e;
}

}  // namespace ipos
