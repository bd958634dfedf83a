#include "core/io.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <utility>
#include <vector>

namespace ipos {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

std::string row_col(int row, int col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

const ojson& member(const ojson& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ctx + ": missing required key \"" + key + "\"");
  return *it;
}

void check_keys(const ojson& obj, std::initializer_list<const char*> allowed, bool strict,
                const std::string& ctx) {
  if (!obj.is_object()) fail(ctx + ": expected a JSON object");
  if (!strict) return;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return it.key() == k; });
    if (!known) fail(ctx + ": unknown key \"" + it.key() + "\"");
  }
}

int to_int(const ojson& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(ctx + ": expected an integer");
  long long v = j.get<long long>();
  if (v < INT_MIN || v > INT_MAX) fail(ctx + ": integer out of range");
  return int(v);
}

std::vector<int> int_list(const ojson& j, const std::string& ctx, long long expected) {
  if (!j.is_array()) fail(ctx + ": expected an array of integers");
  if ((long long)j.size() != expected)
    fail(ctx + ": expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  std::vector<int> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) out.push_back(to_int(j[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

Algebra parse_algebra(const ojson& p, bool strict, const std::string& ctx) {
  check_keys(p, {"size", "leq", "mul", "tilde", "minus", "unit"}, strict, ctx);
  Algebra a;
  a.n = to_int(member(p, "size", ctx), ctx + ".size");
  if (a.n < 1) fail(ctx + ".size must be at least 1");
  const long long n = a.n;

  std::vector<int> leq = int_list(member(p, "leq", ctx), ctx + ".leq", n * n);
  a.leq.resize(size_t(n) * n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      int v = leq[size_t(i) * n + j];
      if (v != 0 && v != 1) fail(ctx + ".leq: entry must be 0 or 1 at " + row_col(i, j));
      a.leq[size_t(i) * n + j] = uint8_t(v);
    }

  a.mul = int_list(member(p, "mul", ctx), ctx + ".mul", n * n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      int v = a.mul[size_t(i) * n + j];
      if (v < 0 || v >= a.n)
        fail(ctx + ".mul: entry " + std::to_string(v) + " out of range at " + row_col(i, j));
    }

  for (const char* key : {"tilde", "minus"}) {
    std::vector<int> neg = int_list(member(p, key, ctx), ctx + "." + key, n);
    for (int i = 0; i < a.n; ++i)
      if (neg[i] < 0 || neg[i] >= a.n)
        fail(ctx + "." + key + ": entry " + std::to_string(neg[i]) + " out of range at index " +
             std::to_string(i));
    (key[0] == 't' ? a.tilde : a.minus) = std::move(neg);
  }

  if (auto it = p.find("unit"); it != p.end()) {
    int u = to_int(*it, ctx + ".unit");
    if (u < 0 || u >= a.n) fail(ctx + ".unit: value " + std::to_string(u) + " out of range");
    a.unit = u;
  }
  return a;
}

std::vector<int> parse_join(const ojson& p, int d, bool, const std::string& ctx) {
  std::vector<int> join = int_list(member(p, "join", ctx), ctx + ".join", (long long)d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int v = join[size_t(i) * d + j];
      if (v < 0 || v >= d)
        fail(ctx + ".join: entry " + std::to_string(v) + " out of range at " + row_col(i, j));
    }
  return join;
}

/// Shared shape for the "maps" array: objects {"from", "to", "map"} keyed by
/// a node pair, at most one per pair. `length_of(p, q)` and `range_of(p, q)`
/// give the expected entry count and the exclusive upper bound (lower bound
/// is `lo`).
template <typename LengthOf, typename RangeOf>
std::vector<std::vector<int>> parse_maps(const ojson& p, int d, bool strict, const std::string& ctx,
                                         int lo, LengthOf length_of, RangeOf range_of) {
  const ojson& maps = member(p, "maps", ctx);
  if (!maps.is_array()) fail(ctx + ".maps: expected an array");
  std::vector<std::vector<int>> table(size_t(d) * d);
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < maps.size(); ++i) {
    const std::string mctx = ctx + ".maps[" + std::to_string(i) + "]";
    const ojson& m = maps[i];
    check_keys(m, {"from", "to", "map"}, strict, mctx);
    int from = to_int(member(m, "from", mctx), mctx + ".from");
    int to = to_int(member(m, "to", mctx), mctx + ".to");
    if (from < 0 || from >= d) fail(mctx + ".from: node " + std::to_string(from) + " out of range");
    if (to < 0 || to >= d) fail(mctx + ".to: node " + std::to_string(to) + " out of range");
    if (!seen.insert({from, to}).second)
      fail(mctx + ": duplicate map for nodes (" + std::to_string(from) + ", " + std::to_string(to) + ")");
    std::vector<int> map = int_list(member(m, "map", mctx), mctx + ".map", length_of(from, to));
    for (size_t k = 0; k < map.size(); ++k)
      if (map[k] < lo || map[k] >= range_of(from, to))
        fail(mctx + ".map: entry " + std::to_string(map[k]) + " out of range at index " + std::to_string(k));
    table[size_t(from) * d + to] = std::move(map);
  }
  return table;
}

DirectedSystem parse_system(const ojson& p, bool strict, const std::string& ctx) {
  check_keys(p, {"nodes", "join", "components", "maps"}, strict, ctx);
  DirectedSystem sys;
  sys.d_size = to_int(member(p, "nodes", ctx), ctx + ".nodes");
  if (sys.d_size < 1) fail(ctx + ".nodes must be at least 1");
  const int d = sys.d_size;
  sys.join = parse_join(p, d, strict, ctx);

  const ojson& comps = member(p, "components", ctx);
  if (!comps.is_array()) fail(ctx + ".components: expected an array");
  if (int(comps.size()) != d)
    fail(ctx + ".components: expected one component per node (" + std::to_string(d) + "), got " +
         std::to_string(comps.size()));
  sys.components.resize(d);
  for (int i = 0; i < d; ++i) {
    const std::string cctx = ctx + ".components[" + std::to_string(i) + "]";
    const ojson& c = comps[i];
    check_keys(c, {"carrier", "algebra"}, strict, cctx);
    sys.components[i].algebra = parse_algebra(member(c, "algebra", cctx), strict, cctx + ".algebra");
    if (auto it = c.find("carrier"); it != c.end()) {
      std::vector<int> carrier = int_list(*it, cctx + ".carrier", sys.components[i].algebra.n);
      for (size_t k = 0; k < carrier.size(); ++k)
        if (carrier[k] < 0)
          fail(cctx + ".carrier: negative element id at index " + std::to_string(k));
      sys.components[i].carrier = std::move(carrier);
    }
  }

  sys.phi = parse_maps(
      p, d, strict, ctx, 0, [&](int from, int) { return (long long)sys.components[from].algebra.n; },
      [&](int, int to) { return sys.components[to].algebra.n; });
  return sys;
}

DualSystem parse_dual(const ojson& p, bool strict, const std::string& ctx) {
  check_keys(p, {"nodes", "join", "atoms", "maps"}, strict, ctx);
  DualSystem dual;
  dual.d_size = to_int(member(p, "nodes", ctx), ctx + ".nodes");
  if (dual.d_size < 1) fail(ctx + ".nodes must be at least 1");
  const int d = dual.d_size;
  dual.join = parse_join(p, d, strict, ctx);

  dual.atoms = int_list(member(p, "atoms", ctx), ctx + ".atoms", d);
  for (int i = 0; i < d; ++i)
    if (dual.atoms[i] < 0) fail(ctx + ".atoms: negative count at index " + std::to_string(i));

  // The map attached to the pair (from, to) sends atoms of `to` to atoms of
  // `from` (or -1); its length is the atom count of `to`.
  dual.pmap = parse_maps(
      p, d, strict, ctx, -1, [&](int, int to) { return (long long)dual.atoms[to]; },
      [&](int from, int) { return dual.atoms[from]; });
  return dual;
}

const char* kind_name(DocKind k) {
  switch (k) {
    case DocKind::algebra: return "algebra";
    case DocKind::system: return "system";
    case DocKind::dual: return "dual";
  }
  return "";
}

ojson algebra_json(const Algebra& a) {
  ojson p = ojson::object();
  p["size"] = a.n;
  p["leq"] = std::vector<int>(a.leq.begin(), a.leq.end());
  p["mul"] = a.mul;
  p["tilde"] = a.tilde;
  p["minus"] = a.minus;
  if (a.unit) p["unit"] = *a.unit;
  return p;
}

template <typename Table>
ojson maps_json(int d, const Table& table) {
  ojson maps = ojson::array();
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const std::vector<int>& f = table[size_t(p) * d + q];
      if (f.empty()) continue;
      ojson m = ojson::object();
      m["from"] = p;
      m["to"] = q;
      m["map"] = f;
      maps.push_back(std::move(m));
    }
  return maps;
}

}  // namespace

const Algebra& AlgebraDocument::algebra() const { return std::get<Algebra>(payload); }
const DirectedSystem& AlgebraDocument::system() const { return std::get<DirectedSystem>(payload); }
const DualSystem& AlgebraDocument::dual() const { return std::get<DualSystem>(payload); }

AlgebraDocument parse(const std::string& text, bool strict) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) fail("empty input");
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());  // nlohmann annotates the byte position
  }
  if (!j.is_object()) fail("document: expected a JSON object");
  check_keys(j, {"format_version", "kind", "payload", "metadata"}, strict, "document");

  AlgebraDocument doc;
  doc.format_version = to_int(member(j, "format_version", "document"), "document.format_version");
  if (doc.format_version != 1)
    fail("document.format_version: unsupported version " + std::to_string(doc.format_version));

  const ojson& kind = member(j, "kind", "document");
  if (!kind.is_string()) fail("document.kind: expected a string");
  const std::string k = kind.get<std::string>();
  const ojson& payload = member(j, "payload", "document");
  if (k == "algebra")
    doc.payload = parse_algebra(payload, strict, "payload");
  else if (k == "system")
    doc.payload = parse_system(payload, strict, "payload");
  else if (k == "dual")
    doc.payload = parse_dual(payload, strict, "payload");
  else
    fail("document.kind: expected \"algebra\", \"system\", or \"dual\", got \"" + k + "\"");

  if (auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) fail("document.metadata: expected a JSON object");
    doc.metadata = *it;
  }
  return doc;
}

std::string serialize(const AlgebraDocument& doc) {
  ojson j = ojson::object();
  j["format_version"] = doc.format_version;
  j["kind"] = kind_name(doc.kind());
  if (doc.kind() == DocKind::algebra) {
    j["payload"] = algebra_json(doc.algebra());
  } else if (doc.kind() == DocKind::system) {
    const DirectedSystem& sys = doc.system();
    ojson p = ojson::object();
    p["nodes"] = sys.d_size;
    p["join"] = sys.join;
    ojson comps = ojson::array();
    for (const IntegralComponent& c : sys.components) {
      ojson cj = ojson::object();
      if (!c.carrier.empty()) cj["carrier"] = c.carrier;
      cj["algebra"] = algebra_json(c.algebra);
      comps.push_back(std::move(cj));
    }
    p["components"] = std::move(comps);
    p["maps"] = maps_json(sys.d_size, sys.phi);
    j["payload"] = std::move(p);
  } else {
    const DualSystem& dual = doc.dual();
    ojson p = ojson::object();
    p["nodes"] = dual.d_size;
    p["join"] = dual.join;
    p["atoms"] = dual.atoms;
    p["maps"] = maps_json(dual.d_size, dual.pmap);
    j["payload"] = std::move(p);
  }
  if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
  return j.dump(2) + "\n";
}

AlgebraDocument make_document(Algebra a) {
  AlgebraDocument doc;
  doc.payload = std::move(a);
  return doc;
}

AlgebraDocument make_document(DirectedSystem sys) {
  AlgebraDocument doc;
  doc.payload = std::move(sys);
  return doc;
}

AlgebraDocument make_document(DualSystem dual) {
  AlgebraDocument doc;
  doc.payload = std::move(dual);
  return doc;
}

std::optional<DiagramMode> diagram_mode_from_name(const std::string& name) {
  if (name == "order") return DiagramMode::order;
  if (name == "mult_order") return DiagramMode::mult_order;
  if (name == "dual") return DiagramMode::dual;
  return std::nullopt;
}

namespace {

/// Cover pairs (x, y) with y covering x, from an arbitrary le predicate.
template <typename Le>
std::vector<std::pair<int, int>> covers_of(int n, Le le) {
  std::vector<std::pair<int, int>> covers;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !le(x, y) || le(y, x)) continue;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z)
        if (z != x && z != y && le(x, z) && le(z, y) && !le(z, x) && !le(y, z)) cover = false;
      if (cover) covers.emplace_back(x, y);
    }
  return covers;
}

std::string hasse_dot(const char* name, int n, const std::vector<std::pair<int, int>>& covers) {
  std::string out = "digraph " + std::string(name) + " {\n  rankdir=BT;\n";
  for (int x = 0; x < n; ++x) out += "  e" + std::to_string(x) + " [label=\"" + std::to_string(x) + "\"];\n";
  for (auto [x, y] : covers) out += "  e" + std::to_string(x) + " -> e" + std::to_string(y) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace

std::string export_diagram(const AlgebraDocument& doc, DiagramMode mode) {
  if (mode == DiagramMode::order || mode == DiagramMode::mult_order) {
    if (doc.kind() != DocKind::algebra)
      throw StructuralError(std::string("diagram mode '") +
                            (mode == DiagramMode::order ? "order" : "mult_order") +
                            "' requires an algebra document, got kind \"" + kind_name(doc.kind()) + "\"");
    const Algebra& a = doc.algebra();
    require_structure(a);
    if (mode == DiagramMode::order) {
      auto covers = covers_of(a.n, [&](int x, int y) { return a.le(x, y); });
      return hasse_dot("order", a.n, covers);
    }
    std::vector<uint8_t> ord = multiplicative_order(a);
    auto covers = covers_of(a.n, [&](int x, int y) { return ord[size_t(x) * a.n + y] != 0; });
    return hasse_dot("mult_order", a.n, covers);
  }

  if (doc.kind() != DocKind::dual)
    throw StructuralError("diagram mode 'dual' requires a dual document, got kind \"" +
                          std::string(kind_name(doc.kind())) + "\"");
  const DualSystem& dual = doc.dual();
  require_dual_system(dual);
  const int d = dual.d_size;

  auto anchor = [&](int p) {
    return "a" + std::to_string(p) + (dual.atoms[p] == 0 ? "_empty" : "_0");
  };
  std::string out = "digraph dual {\n  rankdir=BT;\n  compound=true;\n";
  for (int p = 0; p < d; ++p) {
    out += "  subgraph cluster_" + std::to_string(p) + " {\n    label=\"" + std::to_string(p) + "\";\n";
    if (dual.atoms[p] == 0) {
      out += "    a" + std::to_string(p) + "_empty [label=\"∅\", shape=plaintext];\n";
    } else {
      for (int b = 0; b < dual.atoms[p]; ++b)
        out += "    a" + std::to_string(p) + "_" + std::to_string(b) + " [label=\"" + std::to_string(b) +
               "\"];\n";
    }
    out += "  }\n";
  }
  auto node_covers = covers_of(d, [&](int p, int q) { return dual.node_le(p, q); });
  for (auto [p, q] : node_covers) {
    const std::vector<int>& f = dual.map(p, q);
    bool empty_map = std::all_of(f.begin(), f.end(), [](int v) { return v == -1; });
    if (empty_map) {
      out += "  " + anchor(q) + " -> " + anchor(p) + " [ltail=cluster_" + std::to_string(q) +
             ", lhead=cluster_" + std::to_string(p) + ", style=dotted];\n";
    } else {
      for (int b = 0; b < dual.atoms[q]; ++b)
        if (f[b] != -1)
          out += "  a" + std::to_string(q) + "_" + std::to_string(b) + " -> a" + std::to_string(p) + "_" +
                 std::to_string(f[b]) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace ipos
