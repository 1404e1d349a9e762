#include <cstdlib>
#include <cstring>
#include <string>

#include "rxnlab/errors.hpp"
#include "rxnlab/fingerprint.hpp"
#include "rxnlab/graph_record.hpp"
#include "rxnlab/pipeline.hpp"
#include "rxnlab/rxnlab.h"
#include "rxnlab/scaffold.hpp"
#include "rxnlab/smiles.hpp"
#include "rxnlab/templates.hpp"

struct rxl_molecule {
  rxnlab::Molecule mol;
};

struct rxl_fingerprint {
  rxnlab::BitFingerprint fp;
};

namespace {

thread_local std::string g_last_error;

rxl_status fail(rxl_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps the exception in flight to a status code.
rxl_status translate() {
  try {
    throw;
  } catch (const rxnlab::StrictModeFailure& e) {
    return fail(RXL_ERR_STRICT, e.what());
  } catch (const rxnlab::SyntaxError& e) {
    return fail(RXL_ERR_SYNTAX, e.what());
  } catch (const rxnlab::SchemaError& e) {
    return fail(RXL_ERR_SCHEMA, e.what());
  } catch (const rxnlab::InvalidArgument& e) {
    return fail(RXL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const rxnlab::IoError& e) {
    return fail(RXL_ERR_IO, e.what());
  } catch (const rxnlab::Error& e) {
    return fail(RXL_ERR_CHEMISTRY, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RXL_ERR_SCHEMA, e.what());
  } catch (const std::exception& e) {
    return fail(RXL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RXL_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
rxl_status guarded(Fn&& fn) {
  try {
    fn();
    return RXL_OK;
  } catch (...) {
    return translate();
  }
}

#define RXL_REQUIRE(cond, what) \
  if (!(cond)) return fail(RXL_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* rxl_version(void) { return "0.1.0"; }

const char* rxl_last_error(void) { return g_last_error.c_str(); }

const char* rxl_status_name(rxl_status status) {
  switch (status) {
    case RXL_OK: return "ok";
    case RXL_ERR_SYNTAX: return "syntax_error";
    case RXL_ERR_CHEMISTRY: return "chemistry_error";
    case RXL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RXL_ERR_SCHEMA: return "schema_error";
    case RXL_ERR_IO: return "io_error";
    case RXL_ERR_STRICT: return "strict_failure";
    case RXL_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void rxl_string_free(char* s) { std::free(s); }

rxl_status rxl_molecule_parse(const char* smiles, rxl_molecule** out) {
  RXL_REQUIRE(smiles && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rxl_molecule{rxnlab::parse_smiles(smiles)}; });
}

void rxl_molecule_free(rxl_molecule* mol) { delete mol; }

size_t rxl_molecule_atom_count(const rxl_molecule* mol) { return mol ? mol->mol.atom_count() : 0; }

rxl_status rxl_molecule_canonical_smiles(const rxl_molecule* mol, char** out) {
  RXL_REQUIRE(mol && out, "null argument");
  return guarded([&] { *out = dup(rxnlab::canonical_smiles(mol->mol)); });
}

rxl_status rxl_molecule_formula(const rxl_molecule* mol, char** out) {
  RXL_REQUIRE(mol && out, "null argument");
  return guarded([&] { *out = dup(rxnlab::molecular_formula(mol->mol)); });
}

rxl_status rxl_molecule_graph_json(const rxl_molecule* mol, char** out) {
  RXL_REQUIRE(mol && out, "null argument");
  return guarded([&] { *out = dup(rxnlab::graph_record_json(rxnlab::to_graph_record(mol->mol))); });
}

rxl_status rxl_molecule_scaffold(const rxl_molecule* mol, char** out) {
  RXL_REQUIRE(mol && out, "null argument");
  return guarded([&] { *out = dup(rxnlab::murcko_scaffold(mol->mol)); });
}

rxl_status rxl_validate(const char* smiles, int* verdict, char** detail) {
  RXL_REQUIRE(smiles && verdict, "null argument");
  return guarded([&] {
    const rxnlab::Validation v = rxnlab::validate(smiles);
    *verdict = static_cast<int>(v.verdict);
    if (detail) *detail = dup(v.detail);
  });
}

rxl_status rxl_fingerprint_compute(const rxl_molecule* mol, const char* spec_json, rxl_fingerprint** out) {
  RXL_REQUIRE(mol && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    rxnlab::FingerprintSpec spec;
    if (spec_json && *spec_json) {
      const auto j = nlohmann::json::parse(spec_json);
      if (!j.is_object()) throw rxnlab::InvalidArgument("fingerprint spec must be a JSON object");
      const auto kind = rxnlab::parse_fingerprint_kind(j.value("kind", std::string("circular")));
      const auto width = j.value("width", std::size_t{2048});
      switch (kind) {
        case rxnlab::FingerprintKind::Circular:
          spec = rxnlab::FingerprintSpec::circular(j.value("radius", 2), width);
          break;
        case rxnlab::FingerprintKind::Path:
          spec = rxnlab::FingerprintSpec::path(j.value("min_path", 1), j.value("max_path", 7), width);
          break;
        case rxnlab::FingerprintKind::Key:
          spec = rxnlab::FingerprintSpec::key();
          break;
      }
    }
    *out = new rxl_fingerprint{rxnlab::fingerprint(mol->mol, spec)};
  });
}

rxl_status rxl_fingerprint_parse(const char* text, rxl_fingerprint** out) {
  RXL_REQUIRE(text && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rxl_fingerprint{rxnlab::BitFingerprint::from_string(text)}; });
}

void rxl_fingerprint_free(rxl_fingerprint* fp) { delete fp; }

rxl_status rxl_fingerprint_to_string(const rxl_fingerprint* fp, char** out) {
  RXL_REQUIRE(fp && out, "null argument");
  return guarded([&] { *out = dup(fp->fp.to_string()); });
}

size_t rxl_fingerprint_width(const rxl_fingerprint* fp) { return fp ? fp->fp.width() : 0; }

size_t rxl_fingerprint_count(const rxl_fingerprint* fp) { return fp ? fp->fp.count() : 0; }

rxl_status rxl_tanimoto(const rxl_fingerprint* a, const rxl_fingerprint* b, double* out) {
  RXL_REQUIRE(a && b && out, "null argument");
  return guarded([&] { *out = rxnlab::tanimoto(a->fp, b->fp); });
}

rxl_status rxl_run(const char* command, const char* config_json, char** summary_json) {
  RXL_REQUIRE(command && config_json, "null argument");
  if (summary_json) *summary_json = nullptr;
  return guarded([&] {
    nlohmann::json config;
    try {
      config = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw rxnlab::InvalidArgument(std::string("configuration is not valid JSON: ") + e.what());
    }
    try {
      const auto summary = rxnlab::run_command(command, config);
      if (summary_json) *summary_json = dup(summary.dump());
    } catch (const rxnlab::StrictModeFailure& e) {
      if (summary_json) {
        nlohmann::ordered_json s;
        s["command"] = command;
        s["errors"] = nlohmann::ordered_json::array({rxnlab::to_json(e.failure())});
        *summary_json = dup(s.dump());
      }
      throw;
    }
  });
}

const char* rxl_command_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const std::string& n : rxnlab::command_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

rxl_status rxl_render(const char* request_json, char** out) {
  RXL_REQUIRE(request_json && out, "null argument");
  return guarded([&] {
    const auto req = nlohmann::json::parse(request_json);
    if (!req.is_object() || !req.contains("task") || !req["task"].is_string() || !req.contains("bindings")) {
      throw rxnlab::SchemaError("render request needs \"task\" and \"bindings\"");
    }
    rxnlab::TemplateRegistry registry = rxnlab::TemplateRegistry::builtin();
    if (req.contains("templates")) {
      registry = registry.merged(rxnlab::TemplateRegistry::load(req["templates"].get<std::string>()));
    }
    const std::string mode = req.value("mode", std::string("smiles"));
    if (mode != "smiles" && mode != "sentinel") throw rxnlab::InvalidArgument("mode must be smiles or sentinel");
    const auto& tmpl = registry.choose(req["task"].get<std::string>(), req.value("seed", std::uint64_t{0}),
                                       req.value("id", std::string()));
    const auto prompt = rxnlab::render(tmpl, rxnlab::parse_bindings(req["bindings"]),
                                       mode == "smiles" ? rxnlab::MoleculeMode::Smiles : rxnlab::MoleculeMode::Sentinel);
    *out = dup(rxnlab::to_json(prompt).dump());
  });
}

rxl_status rxl_templates_json(char** out) {
  RXL_REQUIRE(out, "null argument");
  return guarded([&] { *out = dup(rxnlab::TemplateRegistry::builtin().to_json().dump(2)); });
}

}  // extern "C"
