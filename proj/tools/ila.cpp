// ila: check FHE circuits, run them, infer modswitch placement, and run the
// desk-scale probes. Built twice: `ila`, and `ila-static` with every mode
// that needs key material compiled out.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ila/lower.hpp"
#include "ila/msinfer.hpp"
#include "ila/parser.hpp"
#include "ila/printer.hpp"
#include "ila/report.hpp"
#include "ila/schemes.hpp"
#include "ila/typecheck.hpp"

#ifndef ILA_STATIC_ONLY
#include "ila/oracle/axioms.hpp"
#include "ila/oracle/probes.hpp"
#include "ila/oracle/semantics.hpp"
#endif

namespace {

using namespace ila;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kRejected = 2;

struct RunConfig {
  std::string mode;
  std::string scheme_path;
  std::string circuit_path;
  std::uint64_t seed = 1;
  int trials = 0;  // 0: mode default
  bool json_out = false;
  bool trace = false;
  bool dump_keys = false;
  std::string output;
  std::vector<std::string> inputs;  // name=value
  std::vector<std::size_t> q_bits;
  std::string variant = "cipher";
  std::vector<int> ps;
  int runs = 5;
  int max_depth = 64;
};

// Errors the user caused: reported as "error: ..." with exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

struct Loaded {
  std::unique_ptr<Model> model;
  std::string source;
  SurfaceProgram surface;
  CoreProgram core;
};

Loaded load(const RunConfig& cfg, bool need_circuit) {
  Loaded l;
  l.model = make_model(load_params(cfg.scheme_path));
  if (need_circuit) {
    if (cfg.circuit_path.empty()) throw UsageError(cfg.mode + " needs --circuit");
    l.source = read_file(cfg.circuit_path);
    l.surface = parse(l.source);
    l.core = lower(l.surface);
  }
  return l;
}

void print_types(const Model& model, const Context& ctx) {
  for (const auto& [name, type] : ctx) {
    std::cout << "  " << name << " : " << describe(type);
    if (auto bits = budget_bits(model, type)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "  (budget %.1f bits)", *bits);
      std::cout << buf;
    }
    std::cout << "\n";
  }
}

int cmd_check(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Loaded l = load(cfg, true);
  auto r = check_program(*l.model, l.core);
  double ms = elapsed_ms(start);
  if (cfg.json_out) {
    if (!r) emit(diagnosis_json(r.error(), cfg.circuit_path));
    json v = {{"type", "verdict"},
              {"file", cfg.circuit_path},
              {"scheme", l.model->params().name},
              {"verdict", r ? "well-typed" : "rejected"},
              {"time_ms", ms}};
    if (r) v["types"] = context_json(*l.model, r->ctx);
    emit(v);
  } else if (r) {
    std::cout << cfg.circuit_path << ": well-typed under " << l.model->params().name << "\n";
    print_types(*l.model, r->ctx);
  } else {
    std::cerr << diagnosis_text(r.error(), cfg.circuit_path, l.source, use_color(stderr));
  }
  return r ? kOk : kRejected;
}

int cmd_infer_ms(const RunConfig& cfg) {
  Loaded l = load(cfg, true);
  InferResult r = infer_modswitch(*l.model, l.core);
  std::string text = print(r.program);
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw UsageError("cannot write " + cfg.output);
    out << text;
  }
  if (cfg.json_out) {
    json j = {{"type", "infer-ms"},
              {"file", cfg.circuit_path},
              {"success", r.success},
              {"changed", r.changed},
              {"inserted", r.inserted},
              {"multiplies", r.multiplies},
              {"chain_length", r.chain_length},
              {"log", r.log}};
    if (!r.success) j["failure"] = r.failure;
    if (r.diagnosis) j["diagnosis"] = diagnosis_json(*r.diagnosis, cfg.circuit_path);
    if (cfg.output.empty()) j["program"] = text;
    emit(j);
  } else {
    for (const auto& line : r.log) std::cerr << line << "\n";
    if (r.success) {
      std::cerr << "inserted " << r.inserted << " modswitch(es)\n";
      if (cfg.output.empty()) std::cout << text;
    } else {
      std::cerr << "inference failed: " << r.failure << "\n";
      if (r.diagnosis) std::cerr << diagnosis_text(*r.diagnosis, cfg.circuit_path, l.source, use_color(stderr));
    }
  }
  return r.success ? kOk : kRejected;
}

#ifndef ILA_STATIC_ONLY

std::map<std::string, std::int64_t> input_values(const RunConfig& cfg, const CoreProgram& p, oracle::Rng& rng) {
  auto values = oracle::choose_inputs(p, rng);
  for (const auto& kv : cfg.inputs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--input expects name=value, got " + kv);
    std::string name = kv.substr(0, eq);
    if (!values.count(name)) throw UsageError("no input named " + name);
    values[name] = std::stoll(kv.substr(eq + 1));
  }
  return values;
}

void print_outputs(const RunConfig& cfg, const Model& model, const oracle::MsgSubstitution& out, bool typed) {
  if (cfg.json_out) {
    json o = json::object();
    for (const auto& [name, m] : out) {
      json slots = json::array();
      for (auto s : m.slots) slots.push_back(zt::centered(s, model.t()));
      o[name] = slots;
    }
    emit({{"type", "result"}, {"mode", cfg.mode}, {"well_typed", typed}, {"outputs", o}});
    return;
  }
  if (!typed) std::cerr << "warning: the circuit does not typecheck; results may be corrupted\n";
  for (const auto& [name, m] : out) std::cout << name << " = " << describe(m, model.t()) << "\n";
}

int cmd_run(const RunConfig& cfg, bool native) {
  Loaded l = load(cfg, true);
  bool typed = static_cast<bool>(check_program(*l.model, l.core));
  oracle::Rng rng(cfg.seed);
  auto values = input_values(cfg, l.core, rng);
  oracle::MsgSubstitution out;
  if (native) {
    oracle::SecretModel sm(*l.model, cfg.seed);
    if (cfg.dump_keys) {
      std::cerr << "warning: dumping INSECURE toy key material\n";
      emit({{"type", "keys"}, {"keys", sm.dump_keys()}});
    }
    auto gamma = oracle::encrypt_inputs(sm, l.core, values, rng);
    oracle::EvalTrace trace;
    auto result = oracle::eval_native(sm, gamma, *l.core.body, cfg.trace ? &trace : nullptr);
    for (const auto& e : trace) emit(oracle::trace_json(sm, e));
    out = oracle::interp_substitution(sm, result);
  } else {
    out = oracle::eval_msg(*l.model, oracle::message_inputs(*l.model, l.core, values), *l.core.body);
  }
  print_outputs(cfg, *l.model, out, typed);
  return typed ? kOk : kRejected;
}

int cmd_depth_probe(const RunConfig& cfg) {
  Loaded l = load(cfg, false);
  const SchemeParams& base = l.model->params();
  if (base.scheme == SchemeKind::Tfhe) throw UsageError("depth-probe needs a BGV or BFV scheme");
  oracle::DepthProbeOptions opts;
  opts.q_bits = cfg.q_bits;
  if (opts.q_bits.empty())
    for (std::size_t b = 20; b <= 60; b += 5) opts.q_bits.push_back(b);
  opts.trials = cfg.trials > 0 ? cfg.trials : 3;
  opts.seed = cfg.seed;
  opts.max_depth = cfg.max_depth;

  std::vector<std::pair<std::string, bool>> variants;
  if (cfg.variant == "cipher" || cfg.variant == "both") variants.push_back({"cipher", false});
  if (cfg.variant == "plain" || cfg.variant == "both") variants.push_back({"plain", true});
  if (variants.empty()) throw UsageError("--variant must be cipher, plain or both");

  if (!cfg.json_out) std::cout << "variant,q_bits,d_static,d_max,static_ms,oracle_ms\n";
  bool ok = true;
  for (const auto& [name, plain] : variants) {
    opts.plain = plain;
    for (const auto& row : oracle::depth_probe(base, opts)) {
      ok = ok && row.d_static <= row.d_max;
      if (cfg.json_out) {
        emit({{"type", "depth"},
              {"scheme", base.name},
              {"variant", name},
              {"q_bits", row.q_bits},
              {"d_static", row.d_static},
              {"d_max", row.d_max},
              {"static_ms", row.static_ms},
              {"oracle_ms", row.oracle_ms}});
      } else {
        std::cout << name << "," << row.q_bits << "," << row.d_static << "," << row.d_max << "," << row.static_ms
                  << "," << row.oracle_ms << "\n";
      }
    }
  }
  return ok ? kOk : kRejected;
}

int cmd_tfhe_overflow_probe(const RunConfig& cfg) {
  Loaded l = load(cfg, false);
  if (l.model->scheme() != SchemeKind::Tfhe) throw UsageError("tfhe-overflow-probe needs a TFHE scheme");
  std::vector<int> ps = cfg.ps;
  if (ps.empty())
    for (int p = 2; p <= 12; ++p) ps.push_back(p);
  auto rows = oracle::tfhe_overflow_probe(l.model->params(), ps, cfg.runs, cfg.seed);
  if (!cfg.json_out) std::cout << "p,t,rejected_at,kind,simulated_wrap_at,static_ms,simulated_ms\n";
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.rejected_at == r.t;
    if (cfg.json_out) {
      emit({{"type", "tfhe-overflow"},
            {"p", r.p},
            {"t", r.t},
            {"rejected_at", r.rejected_at},
            {"kind", r.kind},
            {"simulated_wrap_at", r.dynamic_wrap_at},
            {"static_ms", r.static_ms},
            {"simulated_ms", r.dynamic_ms}});
    } else {
      std::cout << r.p << "," << r.t << "," << r.rejected_at << "," << r.kind << "," << r.dynamic_wrap_at << ","
                << r.static_ms << "," << r.dynamic_ms << "\n";
    }
  }
  return ok ? kOk : kRejected;
}

int cmd_axiom_check(const RunConfig& cfg) {
  Loaded l = load(cfg, false);
  oracle::SecretModel sm(*l.model, cfg.seed);
  oracle::AxiomSuiteOptions opts;
  opts.seed = cfg.seed;
  if (cfg.trials > 0) {
    opts.comm_defined = cfg.trials;
    opts.dc_samples = cfg.trials;
    opts.dc_defined = cfg.trials;
  }
  auto stats = oracle::run_axiom_suite(sm, opts);
  bool ok = true;
  if (!cfg.json_out) std::cout << "op,comm_samples,comm_defined,comm_failures,dc_samples,dc_defined,dc_failures\n";
  for (const auto& s : stats) {
    ok = ok && s.passed();
    std::string name(op_info(s.op).name);
    if (cfg.json_out) {
      json j = {{"type", "axioms"},       {"scheme", l.model->params().name}, {"op", name},
                {"comm_samples", s.comm_samples}, {"comm_defined", s.comm_defined}, {"comm_failures", s.comm_failures},
                {"dc_samples", s.dc_samples},     {"dc_defined", s.dc_defined},     {"dc_failures", s.dc_failures},
                {"passed", s.passed()}};
      if (!s.first_failure.empty()) j["first_failure"] = s.first_failure;
      emit(j);
    } else {
      std::cout << name << "," << s.comm_samples << "," << s.comm_defined << "," << s.comm_failures << ","
                << s.dc_samples << "," << s.dc_defined << "," << s.dc_failures << "\n";
      if (!s.first_failure.empty()) std::cerr << name << ": " << s.first_failure << "\n";
    }
  }
  return ok ? kOk : kRejected;
}

#endif  // ILA_STATIC_ONLY

int dispatch(const RunConfig& cfg) {
  if (cfg.mode == "check") return cmd_check(cfg);
  if (cfg.mode == "infer-ms") return cmd_infer_ms(cfg);
#ifndef ILA_STATIC_ONLY
  if (cfg.mode == "run") return cmd_run(cfg, true);
  if (cfg.mode == "run-msg") return cmd_run(cfg, false);
  if (cfg.mode == "depth-probe") return cmd_depth_probe(cfg);
  if (cfg.mode == "tfhe-overflow-probe") return cmd_tfhe_overflow_probe(cfg);
  if (cfg.mode == "axiom-check") return cmd_axiom_check(cfg);
#endif
  throw UsageError("unknown mode " + cfg.mode);
}

void report_error(const RunConfig& cfg, const std::string& where, const std::string& what) {
  if (cfg.json_out) {
    emit({{"type", "error"}, {"where", where}, {"message", what}});
  } else {
    std::cerr << (where.empty() ? "" : where + ": ") << "error: " << what << "\n";
  }
}

std::string at(const std::string& file, SourcePos pos) {
  return file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ila: static noise and value checker for FHE circuits"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool circuit) {
    sub->add_option("--scheme", cfg.scheme_path, "scheme parameters (JSON)")->required()->check(CLI::ExistingFile);
    auto* c = sub->add_option("--circuit", cfg.circuit_path, "circuit source");
    if (circuit) c->required();
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--trials", cfg.trials, "trials or samples");
    sub->add_flag("--json", cfg.json_out, "emit JSON lines");
    sub->add_flag("--trace", cfg.trace, "emit the evaluation trace (run)");
  };

  auto* check = app.add_subcommand("check", "typecheck a circuit; needs no key material");
  common(check, true);
  auto* infer = app.add_subcommand("infer-ms", "insert modswitch operations until the circuit typechecks");
  common(infer, true);
  infer->add_option("-o,--output", cfg.output, "write the rewritten circuit here");

#ifndef ILA_STATIC_ONLY
  for (const char* name : {"run", "run-msg"}) {
    auto* run = app.add_subcommand(name, std::string(name) == "run" ? "evaluate under the insecure toy scheme"
                                                                    : "evaluate at message level");
    common(run, true);
    run->add_option("--input", cfg.inputs, "override an input value (name=value)");
    if (std::string(name) == "run") run->add_flag("--dump-keys", cfg.dump_keys, "print the INSECURE toy keys");
  }
  auto* depth = app.add_subcommand("depth-probe", "static vs oracle multiplicative depth over a q sweep");
  common(depth, false);
  depth->add_option("--q-bits", cfg.q_bits, "modulus sizes in bits")->delimiter(',');
  depth->add_option("--variant", cfg.variant, "cipher, plain or both");
  depth->add_option("--max-depth", cfg.max_depth, "probe cap");
  auto* tfhe = app.add_subcommand("tfhe-overflow-probe", "where the checker rejects t = 2^p additions");
  common(tfhe, false);
  tfhe->add_option("--p", cfg.ps, "exponents")->delimiter(',');
  tfhe->add_option("--runs", cfg.runs, "timing runs (median)");
  auto* axioms = app.add_subcommand("axiom-check", "sample the model validity axioms");
  common(axioms, false);
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }
  cfg.mode = app.get_subcommands().front()->get_name();

  try {
    return dispatch(cfg);
  } catch (const ParseError& e) {
    report_error(cfg, at(cfg.circuit_path, e.pos()), e.what());
  } catch (const LowerError& e) {
    report_error(cfg, at(cfg.circuit_path, e.pos()), e.what());
#ifndef ILA_STATIC_ONLY
  } catch (const oracle::StuckError& e) {
    report_error(cfg, at(cfg.circuit_path, e.pos()), std::string("stuck: ") + e.what());
#endif
  } catch (const std::exception& e) {
    report_error(cfg, "", e.what());
  }
  return kError;
}
