// The JSON document format and the DOT diagram exports.

#include <doctest.h>

#include <string>
#include <vector>

#include "core/duality.hpp"
#include "core/enumerate.hpp"
#include "core/io.hpp"
#include "fixtures.hpp"

using namespace ipos;
using namespace ipos::fixtures;

namespace {

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
    ++n;
  return n;
}

void check_parse_error(const std::string& text, const std::string& fragment) {
  CAPTURE(text);
  CAPTURE(fragment);
  try {
    parse(text);
    FAIL_CHECK("expected a parse error mentioning '" << fragment << "'");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("documents of every kind survive the round trip bit-exactly") {
  std::vector<AlgebraDocument> docs;
  for (const Algebra& a :
       {one(), two(), l3(), bool4(), commutative_noncyclic5(), loc_int_diamond4()})
    docs.push_back(make_document(a));
  docs.push_back(make_document(decompose(loc_int_diamond4())));
  docs.push_back(make_document(diamond_collapse_system()));
  docs.push_back(make_document(dualize(loc_int_diamond4())));
  docs.push_back(make_document(dualize(bool4())));

  AlgebraDocument with_meta = make_document(two());
  with_meta.metadata["source"] = "unit test";
  with_meta.metadata["tags"] = {"a", "b"};
  docs.push_back(with_meta);

  for (const AlgebraDocument& doc : docs) {
    const std::string text = serialize(doc);
    const AlgebraDocument back = parse(text);
    CHECK(back == doc);
    CHECK(serialize(back) == text);
    CHECK(parse(text, true) == doc);  // own output is strict-clean
  }
}

TEST_CASE("the serialized two-element algebra is stable") {
  const std::string expected = R"({
  "format_version": 1,
  "kind": "algebra",
  "payload": {
    "size": 2,
    "leq": [
      1,
      1,
      0,
      1
    ],
    "mul": [
      0,
      0,
      0,
      1
    ],
    "tilde": [
      1,
      0
    ],
    "minus": [
      1,
      0
    ],
    "unit": 1
  }
}
)";
  CHECK(serialize(make_document(two())) == expected);
}

TEST_CASE("parsing rejects malformed documents with located messages") {
  check_parse_error("", "empty input");
  check_parse_error("   \n\t ", "empty input");
  check_parse_error("{\"format_version\": 1,", "parse error");
  check_parse_error("[1, 2]", "object");
  check_parse_error(R"({"kind": "algebra", "payload": {}})", "format_version");
  check_parse_error(R"({"format_version": 2, "kind": "algebra", "payload": {}})",
                    "unsupported");
  check_parse_error(R"({"format_version": 1, "payload": {}})", "kind");
  check_parse_error(R"({"format_version": 1, "kind": "poem", "payload": {}})", "poem");
  check_parse_error(R"({"format_version": 1, "kind": "algebra"})", "payload");

  const std::string base =
      R"({"format_version": 1, "kind": "algebra", "payload": {"size": 2, )"
      R"("leq": [1, 1, 0, 1], "mul": [0, 0, 0, MUL], "tilde": [1, 0], "minus": [1, 0]UNIT}})";
  auto with = [&base](const std::string& mul, const std::string& unit) {
    std::string t = base;
    t.replace(t.find("MUL"), 3, mul);
    t.replace(t.find("UNIT"), 4, unit);
    return t;
  };
  CHECK(parse(with("1", ", \"unit\": 1")).algebra() == two());

  // Range violations name the table and the cell.
  check_parse_error(with("2", ""), "row 1");
  check_parse_error(with("2", ""), "column 1");
  check_parse_error(with("2", ""), "mul");
  check_parse_error(with("1", ", \"unit\": 7"), "unit");
  check_parse_error(with("1", ", \"unit\": -1"), "unit");

  // leq entries are bits, not arbitrary integers.
  std::string bad_leq = with("1", "");
  bad_leq.replace(bad_leq.find("[1, 1, 0, 1]"), 12, "[1, 3, 0, 1]");
  check_parse_error(bad_leq, "0 or 1");

  // Wrong element counts are reported for the right member.
  std::string short_tilde = with("1", "");
  short_tilde.replace(short_tilde.find("\"tilde\": [1, 0]"), 15, "\"tilde\": [1]");
  check_parse_error(short_tilde, "tilde");

  check_parse_error(R"({"format_version": 1, "kind": "algebra", "payload": {"size": 0,
    "leq": [], "mul": [], "tilde": [], "minus": []}})",
                    "at least 1");

  check_parse_error(
      R"({"format_version": 1, "kind": "algebra", "payload": {"size": 1, "leq": [1],
         "mul": [0], "tilde": [0], "minus": [0]}, "metadata": 5})",
      "metadata");
}

TEST_CASE("strict mode rejects unknown keys that lenient mode ignores") {
  const std::string text =
      R"({"format_version": 1, "kind": "algebra", "payload": {"size": 1, "leq": [1],
         "mul": [0], "tilde": [0], "minus": [0], "unit": 0, "color": "red"}})";
  CHECK(parse(text).algebra() == one());
  CHECK_THROWS_AS(parse(text, true), ParseError);

  // Metadata is the designated extension point even under strict parsing.
  const std::string meta =
      R"({"format_version": 1, "kind": "algebra", "payload": {"size": 1, "leq": [1],
         "mul": [0], "tilde": [0], "minus": [0]}, "metadata": {"color": "red"}})";
  CHECK_NOTHROW(parse(meta, true));
}

TEST_CASE("system documents reject duplicate and misdirected maps") {
  const std::string text = serialize(make_document(decompose(loc_int_diamond4())));
  const AlgebraDocument doc = parse(text);
  CHECK(doc.kind() == DocKind::system);
  CHECK(doc.system() == decompose(loc_int_diamond4()));

  // Duplicating the first map entry is caught.
  const size_t maps_at = text.find("\"maps\"");
  REQUIRE(maps_at != std::string::npos);
  const size_t first = text.find('{', maps_at);
  const size_t close = text.find('}', first);
  std::string dup = text;
  dup.insert(close + 1, ", " + text.substr(first, close + 1 - first));
  check_parse_error(dup, "duplicate");
}

TEST_CASE("dual documents round-trip their partial maps") {
  const DualSystem d = dualize(loc_int_diamond4());
  const AlgebraDocument doc = parse(serialize(make_document(d)));
  REQUIRE(doc.kind() == DocKind::dual);
  CHECK(doc.dual() == d);

  // A -2 entry is outside the undefined-or-atom range.
  std::string text = serialize(make_document(d));
  const size_t at = text.find("-1");
  REQUIRE(at != std::string::npos);
  text.replace(at, 2, "-2");
  check_parse_error(text, "map");
}

TEST_CASE("order diagrams draw the cover relation upward") {
  const std::string dot = export_diagram(make_document(loc_int_diamond4()), DiagramMode::order);
  CHECK(dot.find("digraph order {") == 0);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(count_occurrences(dot, "label=") == 4);
  CHECK(count_occurrences(dot, "->") == 4);
  CHECK(dot.find("e0 -> e1;") != std::string::npos);
  CHECK(dot.find("e1 -> e3;") != std::string::npos);
  CHECK(dot.find("e0 -> e3;") == std::string::npos);  // covers only, no transitive edges

  const std::string point = export_diagram(make_document(one()), DiagramMode::order);
  CHECK(count_occurrences(point, "label=") == 1);
  CHECK(count_occurrences(point, "->") == 0);
}

TEST_CASE("multiplicative order diagrams use the absorption order") {
  const std::string dot =
      export_diagram(make_document(loc_int_diamond4()), DiagramMode::mult_order);
  CHECK(dot.find("digraph mult_order {") == 0);
  // Under xy = x the top sits below the two middle elements.
  CHECK(dot.find("e0 -> e3;") != std::string::npos);
  CHECK(dot.find("e3 -> e1;") != std::string::npos);
  CHECK(dot.find("e3 -> e2;") != std::string::npos);
  CHECK(count_occurrences(dot, "->") == 3);

  CHECK_THROWS_AS(export_diagram(make_document(l3()), DiagramMode::mult_order),
                  StructuralError);
}

TEST_CASE("dual diagrams cluster atoms per node with dotted empty maps") {
  // The diamond's dual: one atom on top, empty fibers at the two leaves.
  const std::string dot =
      export_diagram(make_document(dualize(loc_int_diamond4())), DiagramMode::dual);
  CHECK(dot.find("digraph dual {") == 0);
  CHECK(count_occurrences(dot, "subgraph cluster_") == 3);
  CHECK(count_occurrences(dot, "∅") == 2);  // two empty fibers
  CHECK(count_occurrences(dot, "style=dotted") == 2);  // both maps are empty partials

  // The seven-element chain: three clusters, one dotted edge, one solid edge.
  const auto shells = enumerate_join_semilattices(3);
  for (const Algebra& s : shells) {
    if (cover_pairs(s) != std::vector<std::pair<int, int>>{{1, 0}, {2, 1}}) continue;
    const auto sys = assemble_system(
        s, {powerset_algebra(2), powerset_algebra(1), powerset_algebra(0)}, {{1, 3}, {1}});
    REQUIRE(sys.has_value());
    const DualSystem d = dualize(glue(*sys).algebra);
    const std::string chain_dot = export_diagram(make_document(d), DiagramMode::dual);
    CHECK(count_occurrences(chain_dot, "subgraph cluster_") == 3);
    CHECK(count_occurrences(chain_dot, "style=dotted") == 1);
    const int arrows = count_occurrences(chain_dot, "->");
    CHECK(arrows == 2);  // the dotted anchor edge plus one solid atom edge
  }
}

TEST_CASE("diagram modes are matched to document kinds") {
  CHECK(diagram_mode_from_name("order") == DiagramMode::order);
  CHECK(diagram_mode_from_name("mult_order") == DiagramMode::mult_order);
  CHECK(diagram_mode_from_name("dual") == DiagramMode::dual);
  CHECK(diagram_mode_from_name("picasso") == std::nullopt);

  CHECK_THROWS_AS(export_diagram(make_document(two()), DiagramMode::dual), StructuralError);
  CHECK_THROWS_AS(export_diagram(make_document(dualize(bool4())), DiagramMode::order),
                  StructuralError);
  CHECK_THROWS_AS(
      export_diagram(make_document(decompose(loc_int_diamond4())), DiagramMode::order),
      StructuralError);
}
