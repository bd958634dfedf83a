#include "ipos.h"

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/algebra.hpp"
#include "core/canonical.hpp"
#include "core/decompose.hpp"
#include "core/duality.hpp"
#include "core/enumerate.hpp"
#include "core/glue.hpp"
#include "core/io.hpp"

using ojson = nlohmann::ordered_json;

struct ipos_doc {
  ipos::AlgebraDocument doc;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

/// Runs the body with every library exception translated to a status code
/// and the thread's last-error message.
template <typename F>
ipos_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const ipos::ParseError& e) {
    g_last_error = e.what();
    return IPOS_ERR_PARSE;
  } catch (const ipos::BudgetExceeded& e) {
    g_last_error = e.what();
    return IPOS_ERR_BUDGET;
  } catch (const ipos::NotIdempotentLocIntegral& e) {
    g_last_error = e.what();
    return IPOS_ERR_PRECONDITION;
  } catch (const ipos::NotLocallyIntegral& e) {
    g_last_error = e.what();
    return IPOS_ERR_PRECONDITION;
  } catch (const ipos::SubreductConditionFails& e) {
    g_last_error = e.what();
    return IPOS_ERR_CONDITION;
  } catch (const ipos::InvalidDualSystem& e) {
    g_last_error = e.what();
    return IPOS_ERR_CONDITION;
  } catch (const ipos::IncompatibleFamily& e) {
    g_last_error = e.what();
    return IPOS_ERR_INCOMPATIBLE;
  } catch (const ipos::StructuralError& e) {
    g_last_error = e.what();
    return IPOS_ERR_STRUCTURE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return IPOS_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IPOS_ERR_INTERNAL;
  }
}

ipos_status arg_error(const std::string& message) {
  g_last_error = message;
  return IPOS_ERR_ARGUMENT;
}

ipos_status kind_error(const std::string& message) {
  g_last_error = message;
  return IPOS_ERR_KIND;
}

bool require_kind(const ipos_doc* doc, ipos::DocKind kind) {
  return doc != nullptr && doc->doc.kind() == kind;
}

ojson check_result_json(const ipos::CheckResult& r) {
  ojson j = ojson::object();
  j["ok"] = r.ok ? 1 : 0;
  if (!r.ok) {
    j["condition"] = r.condition;
    j["witness"] = r.witness;
  }
  return j;
}

ojson algebra_report(const ipos::Algebra& a) {
  ipos::ClassReport report = ipos::check_ipo(a);
  ojson flags = ojson::object();
  static const std::vector<std::pair<const char*, bool ipos::ClassReport::*>> kFlags = {
      {"poset", &ipos::ClassReport::poset},
      {"semigroup", &ipos::ClassReport::semigroup},
      {"dn", &ipos::ClassReport::dn},
      {"antitone", &ipos::ClassReport::antitone},
      {"rotation", &ipos::ClassReport::rotation},
      {"ipo_semigroup", &ipos::ClassReport::ipo_semigroup},
      {"cyclic", &ipos::ClassReport::cyclic},
      {"commutative", &ipos::ClassReport::commutative},
      {"idempotent", &ipos::ClassReport::idempotent},
      {"has_local_identities", &ipos::ClassReport::has_local_identities},
      {"locally_integral", &ipos::ClassReport::locally_integral},
      {"integral", &ipos::ClassReport::integral},
      {"has_global_identity", &ipos::ClassReport::has_global_identity},
      {"lattice_ordered", &ipos::ClassReport::lattice_ordered},
  };
  for (const auto& [name, member] : kFlags) flags[name] = (report.*member) ? 1 : 0;

  ojson witnesses = ojson::object();
  for (const auto& [name, tuple] : report.witnesses) witnesses[name] = tuple;

  ojson j = ojson::object();
  j["kind"] = "algebra";
  j["size"] = a.n;
  j["flags"] = std::move(flags);
  j["witnesses"] = std::move(witnesses);
  if (report.discovered_unit)
    j["discovered_unit"] = *report.discovered_unit;
  else
    j["discovered_unit"] = nullptr;
  j["declared_unit_valid"] = report.declared_unit_valid ? 1 : 0;

  ojson classes = ojson::array();
  for (ipos::AlgebraClass c : ipos::classify(a)) classes.push_back(ipos::algebra_class_name(c));
  j["classes"] = std::move(classes);
  return j;
}

ojson defects_json_of(const std::vector<ipos::Defect>& defects) {
  ojson arr = ojson::array();
  for (const ipos::Defect& d : defects) {
    ojson dj = ojson::object();
    dj["condition"] = d.condition;
    dj["witness"] = d.witness;
    arr.push_back(std::move(dj));
  }
  return arr;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

extern "C" {

const char* ipos_last_error(void) { return g_last_error.c_str(); }

void ipos_string_free(char* s) { delete[] s; }

void ipos_doc_free(ipos_doc* doc) { delete doc; }

ipos_status ipos_parse(const char* text, int strict, ipos_doc** out) {
  if (text == nullptr || out == nullptr) return arg_error("ipos_parse: null argument");
  return guarded([&] {
    auto* doc = new ipos_doc{ipos::parse(text, strict != 0)};
    *out = doc;
    return IPOS_OK;
  });
}

ipos_status ipos_serialize(const ipos_doc* doc, char** out) {
  if (doc == nullptr || out == nullptr) return arg_error("ipos_serialize: null argument");
  return guarded([&] {
    *out = dup_string(ipos::serialize(doc->doc));
    return IPOS_OK;
  });
}

const char* ipos_doc_kind(const ipos_doc* doc) {
  if (doc == nullptr) return "";
  switch (doc->doc.kind()) {
    case ipos::DocKind::algebra: return "algebra";
    case ipos::DocKind::system: return "system";
    case ipos::DocKind::dual: return "dual";
  }
  return "";
}

ipos_status ipos_check(const ipos_doc* doc, char** report_json, int* verdict) {
  if (doc == nullptr || report_json == nullptr || verdict == nullptr)
    return arg_error("ipos_check: null argument");
  return guarded([&] {
    ojson j;
    int ok = 0;
    switch (doc->doc.kind()) {
      case ipos::DocKind::algebra: {
        j = algebra_report(doc->doc.algebra());
        ok = j["flags"]["ipo_semigroup"].get<int>();
        break;
      }
      case ipos::DocKind::system: {
        const ipos::DirectedSystem& sys = doc->doc.system();
        j = ojson::object();
        j["kind"] = "system";
        try {
          ipos::require_system(sys);
          j["family_consistent"] = 1;
          ipos::GlueOutcome out = ipos::glue(sys);
          j["za"] = check_result_json(ipos::verify_za(sys));
          j["bal"] = check_result_json(ipos::verify_bal(sys));
          j["mon"] = check_result_json(ipos::verify_mon(sys));
          j["lax"] = check_result_json(ipos::verify_lax(sys));
          j["defects"] = defects_json_of(out.defects);
          j["glued_size"] = out.algebra.n;
          ok = out.defects.empty() ? 1 : 0;
        } catch (const std::exception& e) {
          j["family_consistent"] = 0;
          j["error"] = e.what();
          ok = 0;
        }
        break;
      }
      case ipos::DocKind::dual: {
        j = ojson::object();
        j["kind"] = "dual";
        try {
          ipos::Algebra rebuilt = ipos::primalize(doc->doc.dual());
          j["valid"] = 1;
          j["primal_size"] = rebuilt.n;
          ok = 1;
        } catch (const std::exception& e) {
          j["valid"] = 0;
          j["error"] = e.what();
          ok = 0;
        }
        break;
      }
    }
    *report_json = dup_string(dump(j));
    *verdict = ok;
    return IPOS_OK;
  });
}

ipos_status ipos_canonical_key(const ipos_doc* doc, char** key_hex) {
  if (doc == nullptr || key_hex == nullptr) return arg_error("ipos_canonical_key: null argument");
  if (!require_kind(doc, ipos::DocKind::algebra))
    return kind_error("ipos_canonical_key: document does not hold an algebra");
  return guarded([&] {
    *key_hex = dup_string(ipos::canonical_key_hex(doc->doc.algebra()));
    return IPOS_OK;
  });
}

ipos_status ipos_iso(const ipos_doc* a, const ipos_doc* b, int* isomorphic) {
  if (a == nullptr || b == nullptr || isomorphic == nullptr)
    return arg_error("ipos_iso: null argument");
  if (!require_kind(a, ipos::DocKind::algebra) || !require_kind(b, ipos::DocKind::algebra))
    return kind_error("ipos_iso: both documents must hold algebras");
  return guarded([&] {
    *isomorphic =
        ipos::canonical_key(a->doc.algebra()) == ipos::canonical_key(b->doc.algebra()) ? 1 : 0;
    return IPOS_OK;
  });
}

ipos_status ipos_decompose(const ipos_doc* doc, ipos_doc** system_out) {
  if (doc == nullptr || system_out == nullptr) return arg_error("ipos_decompose: null argument");
  if (!require_kind(doc, ipos::DocKind::algebra))
    return kind_error("ipos_decompose: document does not hold an algebra");
  return guarded([&] {
    *system_out = new ipos_doc{ipos::make_document(ipos::decompose(doc->doc.algebra()))};
    return IPOS_OK;
  });
}

ipos_status ipos_glue(const ipos_doc* doc, ipos_doc** algebra_out, char** defects_json) {
  if (doc == nullptr || algebra_out == nullptr || defects_json == nullptr)
    return arg_error("ipos_glue: null argument");
  if (!require_kind(doc, ipos::DocKind::system))
    return kind_error("ipos_glue: document does not hold a directed system");
  return guarded([&] {
    ipos::GlueOutcome out = ipos::glue(doc->doc.system());
    *algebra_out = new ipos_doc{ipos::make_document(std::move(out.algebra))};
    *defects_json = dup_string(dump(defects_json_of(out.defects)));
    return IPOS_OK;
  });
}

ipos_status ipos_glue_linear(const ipos_doc* const* docs, size_t count, ipos_doc** algebra_out) {
  if (docs == nullptr || algebra_out == nullptr || count == 0)
    return arg_error("ipos_glue_linear: null argument or empty chain");
  for (size_t i = 0; i < count; ++i)
    if (docs[i] == nullptr || docs[i]->doc.kind() != ipos::DocKind::algebra)
      return kind_error("ipos_glue_linear: every document must hold an algebra");
  return guarded([&] {
    std::vector<ipos::Algebra> chain;
    chain.reserve(count);
    for (size_t i = 0; i < count; ++i) chain.push_back(docs[i]->doc.algebra());
    ipos::GlueOutcome out = ipos::glue_linear(chain);
    *algebra_out = new ipos_doc{ipos::make_document(std::move(out.algebra))};
    return IPOS_OK;
  });
}

ipos_status ipos_subreduct(const ipos_doc* doc, char** witness_json, int* verdict) {
  if (doc == nullptr || witness_json == nullptr || verdict == nullptr)
    return arg_error("ipos_subreduct: null argument");
  if (!require_kind(doc, ipos::DocKind::algebra))
    return kind_error("ipos_subreduct: document does not hold an algebra");
  return guarded([&] {
    ipos::CheckResult r = ipos::subreduct_check(doc->doc.algebra());
    *verdict = r.ok ? 1 : 0;
    *witness_json = dup_string(dump(check_result_json(r)));
    return IPOS_OK;
  });
}

ipos_status ipos_extend(const ipos_doc* doc, const ipos_doc* bottom, ipos_doc** algebra_out) {
  if (doc == nullptr || algebra_out == nullptr) return arg_error("ipos_extend: null argument");
  if (!require_kind(doc, ipos::DocKind::algebra))
    return kind_error("ipos_extend: document does not hold an algebra");
  if (bottom != nullptr && bottom->doc.kind() != ipos::DocKind::algebra)
    return kind_error("ipos_extend: bottom document does not hold an algebra");
  return guarded([&] {
    ipos::Algebra extended = bottom == nullptr
                                 ? ipos::extend_to_monoid(doc->doc.algebra())
                                 : ipos::extend_to_monoid(doc->doc.algebra(), bottom->doc.algebra());
    *algebra_out = new ipos_doc{ipos::make_document(std::move(extended))};
    return IPOS_OK;
  });
}

ipos_status ipos_dualize(const ipos_doc* doc, ipos_doc** dual_out) {
  if (doc == nullptr || dual_out == nullptr) return arg_error("ipos_dualize: null argument");
  if (!require_kind(doc, ipos::DocKind::algebra))
    return kind_error("ipos_dualize: document does not hold an algebra");
  return guarded([&] {
    *dual_out = new ipos_doc{ipos::make_document(ipos::dualize(doc->doc.algebra()))};
    return IPOS_OK;
  });
}

ipos_status ipos_primalize(const ipos_doc* doc, ipos_doc** algebra_out) {
  if (doc == nullptr || algebra_out == nullptr) return arg_error("ipos_primalize: null argument");
  if (!require_kind(doc, ipos::DocKind::dual))
    return kind_error("ipos_primalize: document does not hold a dual system");
  return guarded([&] {
    *algebra_out = new ipos_doc{ipos::make_document(ipos::primalize(doc->doc.dual()))};
    return IPOS_OK;
  });
}

ipos_status ipos_enumerate(const char* class_name, int size, int retain, int workers,
                           char** report_json) {
  if (class_name == nullptr || report_json == nullptr)
    return arg_error("ipos_enumerate: null argument");
  auto cls = ipos::algebra_class_from_name(class_name);
  if (!cls) return arg_error("ipos_enumerate: unknown class \"" + std::string(class_name) + "\"");
  return guarded([&] {
    ipos::EnumerationResult res =
        ipos::enumerate_class(*cls, size, retain != 0, workers, /*use_cache=*/true);
    ojson j = ojson::object();
    j["class"] = ipos::algebra_class_name(res.algebra_class);
    j["size"] = res.size;
    j["count"] = res.count;
    if (res.representatives) {
      ojson reps = ojson::array();
      for (const ipos::Algebra& a : *res.representatives) {
        ipos::AlgebraDocument rd = ipos::make_document(a);
        reps.push_back(ojson::parse(ipos::serialize(rd))["payload"]);
      }
      j["representatives"] = std::move(reps);
    }
    *report_json = dup_string(dump(j));
    return IPOS_OK;
  });
}

ipos_status ipos_export(const ipos_doc* doc, const char* mode, char** dot_out) {
  if (doc == nullptr || mode == nullptr || dot_out == nullptr)
    return arg_error("ipos_export: null argument");
  auto m = ipos::diagram_mode_from_name(mode);
  if (!m) return arg_error("ipos_export: unknown mode \"" + std::string(mode) + "\"");
  return guarded([&] {
    *dot_out = dup_string(ipos::export_diagram(doc->doc, *m));
    return IPOS_OK;
  });
}

}  // extern "C"
