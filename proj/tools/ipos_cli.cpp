// Command-line front end. All domain work goes through the C API in ipos.h;
// this file only reads files, parses arguments, and formats output.

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipos.h"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;        // affirmative verdict / operation succeeded
constexpr int kExitNegative = 1;  // negative verdict (check fails, defects, not isomorphic)
constexpr int kExitUsage = 2;     // usage, parse, or any other error

struct DocDeleter {
  void operator()(ipos_doc* d) const { ipos_doc_free(d); }
};
using DocPtr = std::unique_ptr<ipos_doc, DocDeleter>;

struct StringDeleter {
  void operator()(char* s) const { ipos_string_free(s); }
};
using StrPtr = std::unique_ptr<char, StringDeleter>;

void report_error(const std::string& prefix) {
  std::fprintf(stderr, "error: %s: %s\n", prefix.c_str(), ipos_last_error());
}

/// Non-OK statuses keep their operation's semantics: a failed checked
/// condition is a negative verdict, everything else is a hard error.
int exit_code_for(ipos_status st) {
  return st == IPOS_ERR_CONDITION ? kExitNegative : kExitUsage;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return false;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

DocPtr load_doc(const std::string& path, bool strict, int& exit_code) {
  std::string text;
  if (!read_file(path, text)) {
    exit_code = kExitUsage;
    return nullptr;
  }
  ipos_doc* doc = nullptr;
  if (ipos_status st = ipos_parse(text.c_str(), strict ? 1 : 0, &doc); st != IPOS_OK) {
    report_error(path);
    exit_code = kExitUsage;
    return nullptr;
  }
  return DocPtr(doc);
}

void print_document(const ipos_doc* doc) {
  char* text = nullptr;
  if (ipos_serialize(doc, &text) == IPOS_OK) {
    StrPtr guard(text);
    std::fputs(text, stdout);
  }
}

std::string yes_no(const ojson& v) { return v.get<int>() != 0 ? "yes" : "no"; }

std::string tuple_text(const ojson& arr) {
  std::string out = "(";
  for (size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(arr[i].get<int>());
  }
  return out + ")";
}

void print_check_table(const ojson& report) {
  const std::string kind = report["kind"].get<std::string>();
  if (kind == "algebra") {
    std::printf("size: %d\n", report["size"].get<int>());
    const ojson& flags = report["flags"];
    const ojson& witnesses = report["witnesses"];
    for (auto it = flags.begin(); it != flags.end(); ++it) {
      std::printf("%-22s %s", it.key().c_str(), yes_no(*it).c_str());
      if (auto w = witnesses.find(it.key()); w != witnesses.end())
        std::printf("   witness %s", tuple_text(*w).c_str());
      std::printf("\n");
    }
    if (!report["discovered_unit"].is_null())
      std::printf("%-22s %d\n", "discovered_unit", report["discovered_unit"].get<int>());
    if (report["declared_unit_valid"].get<int>() == 0)
      std::printf("%-22s no\n", "declared_unit_valid");
    std::string classes;
    for (const ojson& c : report["classes"]) {
      if (!classes.empty()) classes += ", ";
      classes += c.get<std::string>();
    }
    std::printf("classes: %s\n", classes.empty() ? "(none)" : classes.c_str());
    return;
  }
  if (kind == "system") {
    if (report["family_consistent"].get<int>() == 0) {
      std::printf("family_consistent      no   (%s)\n", report["error"].get<std::string>().c_str());
      return;
    }
    std::printf("family_consistent      yes\n");
    for (const char* cond : {"za", "bal", "mon", "lax"}) {
      const ojson& r = report[cond];
      std::printf("%-22s %s", cond, yes_no(r["ok"]).c_str());
      if (r["ok"].get<int>() == 0) std::printf("   witness %s", tuple_text(r["witness"]).c_str());
      std::printf("\n");
    }
    std::printf("glued_size             %d\n", report["glued_size"].get<int>());
    const ojson& defects = report["defects"];
    if (defects.empty()) {
      std::printf("defects                none\n");
    } else {
      for (const ojson& d : defects)
        std::printf("defect                 %s   witness %s\n", d["condition"].get<std::string>().c_str(),
                    tuple_text(d["witness"]).c_str());
    }
    return;
  }
  if (report["valid"].get<int>() != 0)
    std::printf("valid                  yes\nprimal_size            %d\n",
                report["primal_size"].get<int>());
  else
    std::printf("valid                  no   (%s)\n", report["error"].get<std::string>().c_str());
}

int run_check(const std::string& path, bool strict, const std::string& format) {
  int code = kExitOk;
  DocPtr doc = load_doc(path, strict, code);
  if (!doc) return code;
  char* report = nullptr;
  int verdict = 0;
  if (ipos_status st = ipos_check(doc.get(), &report, &verdict); st != IPOS_OK) {
    report_error("check");
    return exit_code_for(st);
  }
  StrPtr guard(report);
  if (format == "json")
    std::fputs(report, stdout);
  else
    print_check_table(ojson::parse(report));
  return verdict != 0 ? kExitOk : kExitNegative;
}

int run_transform(const std::string& path, bool strict,
                  ipos_status (*op)(const ipos_doc*, ipos_doc**), const char* name) {
  int code = kExitOk;
  DocPtr doc = load_doc(path, strict, code);
  if (!doc) return code;
  ipos_doc* out = nullptr;
  if (ipos_status st = op(doc.get(), &out); st != IPOS_OK) {
    report_error(name);
    return exit_code_for(st);
  }
  DocPtr guard(out);
  print_document(out);
  return kExitOk;
}

int run_glue(const std::vector<std::string>& paths, bool linear, bool strict,
             const std::string& format) {
  int code = kExitOk;
  if (linear) {
    std::vector<DocPtr> docs;
    std::vector<const ipos_doc*> raw;
    for (const std::string& p : paths) {
      DocPtr doc = load_doc(p, strict, code);
      if (!doc) return code;
      raw.push_back(doc.get());
      docs.push_back(std::move(doc));
    }
    ipos_doc* out = nullptr;
    if (ipos_status st = ipos_glue_linear(raw.data(), raw.size(), &out); st != IPOS_OK) {
      report_error("glue --linear");
      return exit_code_for(st);
    }
    DocPtr guard(out);
    print_document(out);
    return kExitOk;
  }

  if (paths.size() != 1) {
    std::fprintf(stderr, "error: glue expects exactly one system document (or --linear)\n");
    return kExitUsage;
  }
  DocPtr doc = load_doc(paths[0], strict, code);
  if (!doc) return code;
  ipos_doc* out = nullptr;
  char* defects = nullptr;
  if (ipos_status st = ipos_glue(doc.get(), &out, &defects); st != IPOS_OK) {
    report_error("glue");
    return exit_code_for(st);
  }
  DocPtr out_guard(out);
  StrPtr defects_guard(defects);
  print_document(out);
  ojson defect_list = ojson::parse(defects);
  if (defect_list.empty()) return kExitOk;
  if (format == "json") {
    std::fputs(defects, stderr);
  } else {
    for (const ojson& d : defect_list)
      std::fprintf(stderr, "defect: %s at %s\n", d["condition"].get<std::string>().c_str(),
                   tuple_text(d["witness"]).c_str());
  }
  return kExitNegative;
}

int run_subreduct(const std::string& path, bool strict, const std::string& format) {
  int code = kExitOk;
  DocPtr doc = load_doc(path, strict, code);
  if (!doc) return code;
  char* witness = nullptr;
  int verdict = 0;
  if (ipos_status st = ipos_subreduct(doc.get(), &witness, &verdict); st != IPOS_OK) {
    report_error("subreduct");
    return exit_code_for(st);
  }
  StrPtr guard(witness);
  if (format == "json") {
    std::fputs(witness, stdout);
  } else if (verdict != 0) {
    std::printf("subreduct condition holds\n");
  } else {
    ojson r = ojson::parse(witness);
    std::printf("subreduct condition fails: %s at %s\n", r["condition"].get<std::string>().c_str(),
                tuple_text(r["witness"]).c_str());
  }
  return verdict != 0 ? kExitOk : kExitNegative;
}

int run_extend(const std::string& path, const std::string& bottom_path, bool strict) {
  int code = kExitOk;
  DocPtr doc = load_doc(path, strict, code);
  if (!doc) return code;
  DocPtr bottom;
  if (!bottom_path.empty()) {
    bottom = load_doc(bottom_path, strict, code);
    if (!bottom) return code;
  }
  ipos_doc* out = nullptr;
  if (ipos_status st = ipos_extend(doc.get(), bottom.get(), &out); st != IPOS_OK) {
    report_error("extend");
    return exit_code_for(st);
  }
  DocPtr guard(out);
  print_document(out);
  return kExitOk;
}

int run_enumerate(const std::string& cls, int size, bool retain, int workers,
                  const std::string& format) {
  char* report = nullptr;
  if (ipos_status st = ipos_enumerate(cls.c_str(), size, retain ? 1 : 0, workers, &report);
      st != IPOS_OK) {
    report_error("enumerate");
    return exit_code_for(st);
  }
  StrPtr guard(report);
  if (format == "json") {
    std::fputs(report, stdout);
    return kExitOk;
  }
  ojson j = ojson::parse(report);
  const std::string name = j["class"].get<std::string>();
  std::printf("class,size,count\n%s,%d,%lld\n\n", name.c_str(), j["size"].get<int>(),
              j["count"].get<long long>());
  std::printf("  %-24s %4s %8s\n", "class", "n", "count");
  std::printf("  %-24s %4d %8lld\n", name.c_str(), j["size"].get<int>(), j["count"].get<long long>());
  if (auto reps = j.find("representatives"); reps != j.end()) {
    int index = 0;
    for (const ojson& payload : *reps) {
      ojson doc = ojson::object();
      doc["format_version"] = 1;
      doc["kind"] = "algebra";
      doc["payload"] = payload;
      std::printf("\n# representative %d\n%s\n", index++, doc.dump(2).c_str());
    }
  }
  return kExitOk;
}

int run_export(const std::string& path, const std::string& mode, bool strict) {
  int code = kExitOk;
  DocPtr doc = load_doc(path, strict, code);
  if (!doc) return code;
  char* dot = nullptr;
  if (ipos_status st = ipos_export(doc.get(), mode.c_str(), &dot); st != IPOS_OK) {
    report_error("export");
    return exit_code_for(st);
  }
  StrPtr guard(dot);
  std::fputs(dot, stdout);
  return kExitOk;
}

int run_iso(const std::string& path1, const std::string& path2, bool strict,
            const std::string& format) {
  int code = kExitOk;
  DocPtr a = load_doc(path1, strict, code);
  if (!a) return code;
  DocPtr b = load_doc(path2, strict, code);
  if (!b) return code;
  int isomorphic = 0;
  if (ipos_status st = ipos_iso(a.get(), b.get(), &isomorphic); st != IPOS_OK) {
    report_error("iso");
    return exit_code_for(st);
  }
  if (format == "json")
    std::printf("{\n  \"isomorphic\": %d\n}\n", isomorphic);
  else
    std::printf("%s\n", isomorphic != 0 ? "isomorphic" : "not isomorphic");
  return isomorphic != 0 ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite involutive partially ordered semigroups: verification, "
               "decomposition, glueing, duality, and enumeration"};
  app.require_subcommand(1);

  bool strict = false;
  std::string format = "table";
  app.add_flag("--strict", strict, "reject unknown keys in documents");
  app.add_option("--format", format, "output format (json or table)")
      ->check(CLI::IsMember({"json", "table"}));

  std::string check_file;
  CLI::App* check = app.add_subcommand("check", "verify a document and print its report");
  check->add_option("file", check_file, "document to verify")->required();

  std::string decompose_file;
  CLI::App* decompose =
      app.add_subcommand("decompose", "decompose a locally integral algebra into a directed system");
  decompose->add_option("file", decompose_file, "algebra document")->required();

  std::vector<std::string> glue_files;
  bool glue_linear = false;
  CLI::App* glue = app.add_subcommand("glue", "glue a directed system (or a chain of monoids)");
  glue->add_flag("--linear", glue_linear, "glue algebra documents along a chain, first at the bottom");
  glue->add_option("files", glue_files, "system document, or algebra documents with --linear")
      ->required()
      ->expected(-1);

  std::string subreduct_file;
  CLI::App* subreduct =
      app.add_subcommand("subreduct", "test the subreduct condition on a locally integral algebra");
  subreduct->add_option("file", subreduct_file, "algebra document")->required();

  std::string extend_file, extend_bottom;
  CLI::App* extend =
      app.add_subcommand("extend", "extend a locally integral algebra to an ipo-monoid");
  extend->add_option("file", extend_file, "algebra document")->required();
  extend->add_option("--bottom", extend_bottom, "integral ipo-monoid for the adjoined minimum node");

  std::string enum_class;
  int enum_size = 0, enum_workers = 1;
  bool enum_retain = false;
  CLI::App* enumerate = app.add_subcommand("enumerate", "count a class up to isomorphism");
  enumerate->add_option("--class", enum_class, "class name")->required();
  enumerate->add_option("--size", enum_size, "carrier size")->required();
  enumerate->add_flag("--retain", enum_retain, "also print canonical representatives");
  enumerate->add_option("--workers", enum_workers, "worker threads (output is identical for any value)");

  std::string dualize_file;
  CLI::App* dualize = app.add_subcommand("dualize", "dual system of an idempotent locally integral "
                                                    "ipo-semilattice");
  dualize->add_option("file", dualize_file, "algebra document")->required();

  std::string primalize_file;
  CLI::App* primalize = app.add_subcommand("primalize", "rebuild the algebra of a dual system");
  primalize->add_option("file", primalize_file, "dual document")->required();

  std::string export_file, export_mode;
  CLI::App* exportCmd = app.add_subcommand("export", "render a document as a DOT diagram");
  exportCmd->add_option("--mode", export_mode, "order, mult_order, or dual")->required();
  exportCmd->add_option("file", export_file, "document to render")->required();

  std::string iso_file1, iso_file2;
  CLI::App* iso = app.add_subcommand("iso", "decide isomorphism of two algebra documents");
  iso->add_option("file1", iso_file1, "first algebra document")->required();
  iso->add_option("file2", iso_file2, "second algebra document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (check->parsed()) return run_check(check_file, strict, format);
  if (decompose->parsed())
    return run_transform(decompose_file, strict, ipos_decompose, "decompose");
  if (glue->parsed()) return run_glue(glue_files, glue_linear, strict, format);
  if (subreduct->parsed()) return run_subreduct(subreduct_file, strict, format);
  if (extend->parsed()) return run_extend(extend_file, extend_bottom, strict);
  if (enumerate->parsed())
    return run_enumerate(enum_class, enum_size, enum_retain, enum_workers, format);
  if (dualize->parsed()) return run_transform(dualize_file, strict, ipos_dualize, "dualize");
  if (primalize->parsed()) return run_transform(primalize_file, strict, ipos_primalize, "primalize");
  if (exportCmd->parsed()) return run_export(export_file, export_mode, strict);
  if (iso->parsed()) return run_iso(iso_file1, iso_file2, strict, format);
  return kExitUsage;
}
