#include "ila/oracle/probes.hpp"

#include <algorithm>
#include <chrono>

#include "ila/lower.hpp"
#include "ila/parser.hpp"
#include "ila/schemes.hpp"
#include "ila/oracle/semantics.hpp"

namespace ila::oracle {

double median_ms(const std::function<void()>& fn, int runs) {
  std::vector<double> times;
  for (int i = 0; i < std::max(1, runs); ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto end = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(end - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

SchemeParams with_single_modulus(const SchemeParams& base, std::size_t bits) {
  SchemeParams p = base;
  const BigInt t(static_cast<long>(base.t));
  BigInt low = 1;
  mpz_mul_2exp(low.get_mpz_t(), low.get_mpz_t(), static_cast<mp_bitcnt_t>(bits - 1));
  BigInt q;
  if (base.scheme == SchemeKind::Bfv) {
    q = ((low + t - 1) / t) * t;
  } else {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), low.get_mpz_t(), t.get_mpz_t());
    q = low - r + 1;  // = 1 mod t
    if (q < low) q += t;
    if (q % 2 == 0) q += t;  // keep q odd; only reachable for odd t
  }
  p.moduli = {q};
  p.name = base.name + "-q" + std::to_string(bits);
  return p;
}

CoreProgram product_chain(int depth, bool plain) {
  CoreProgram p;
  int ciphers = plain ? 1 : depth + 1;
  for (int i = 0; i < ciphers; ++i)
    p.inputs.push_back(InputDecl{"c" + std::to_string(i), Sort::Cipher, CipherKind::Lwe, -1, 1, std::nullopt, {i + 1, 1}});
  std::vector<CmdPtr> body;
  for (int k = 0; k < depth; ++k) {
    ExprPtr lhs = make_var(k == 0 ? "c0" : "acc");
    ExprPtr rhs = plain ? make_plain(1) : make_var("c" + std::to_string(k + 1));
    body.push_back(make_assign("acc", make_op(OpCode::Mul, {lhs, rhs}), k, {ciphers + k + 1, 1}));
  }
  p.body = make_seq(std::move(body));
  return p;
}

int static_depth(const Model& model, bool plain, int max_depth) {
  auto r = check_program(model, product_chain(max_depth, plain));
  if (r) return max_depth;
  return std::max(0, r.error().stmt);
}

int oracle_depth(const SecretModel& sm, bool plain, int max_depth, int trials, Rng& rng) {
  const Model& model = sm.model();
  const std::int64_t t = model.t();
  int best = max_depth;
  for (int trial = 0; trial < trials; ++trial) {
    std::int64_t m = rng.coin() ? 1 : -1;
    Value acc = sm.encrypt(m, CipherKind::Lwe, rng);
    Value one = Plaintext{zt::constant(1, model.d(), t)};
    int ok = 0;
    for (int k = 0; k < max_depth && ok < best; ++k) {
      std::int64_t f = plain ? 1 : (rng.coin() ? 1 : -1);
      Value rhs = plain ? one : sm.encrypt(f, CipherKind::Lwe, rng);
      Value args[2] = {acc, rhs};
      acc = sm.apply(OpCode::Mul, args);
      m *= f;
      if (!(sm.interp(acc) == Message{zt::constant(m, model.d(), t)})) break;
      ++ok;
    }
    best = std::min(best, ok);
  }
  return best;
}

std::vector<DepthRow> depth_probe(const SchemeParams& base, const DepthProbeOptions& opts) {
  std::vector<DepthRow> rows;
  Rng rng(opts.seed);
  for (std::size_t bits : opts.q_bits) {
    SchemeParams p = with_single_modulus(base, bits);
    auto model = make_model(p);
    SecretModel sm(*model, rng.fork());
    DepthRow row;
    row.q_bits = bits;
    row.static_ms = median_ms([&] { row.d_static = static_depth(*model, opts.plain, opts.max_depth); }, 1);
    row.oracle_ms = median_ms([&] { row.d_max = oracle_depth(sm, opts.plain, opts.max_depth, opts.trials, rng); }, 1);
    rows.push_back(row);
  }
  return rows;
}

std::string tfhe_addition_source(std::int64_t t, std::int64_t additions) {
  std::string s;
  s += "# acc starts at -t/2 and gains 1 per addition\n";
  s += "acc := cipher_init(" + std::to_string(-(t / 2)) + ")\n";
  s += "one := cipher_init(1)\n";
  s += "i := 0\n";
  s += "while i < " + std::to_string(additions) + " {\n";
  s += "  acc := acc (+) one\n";
  s += "  i := i + 1\n";
  s += "}\n";
  return s;
}

std::vector<TfheOverflowRow> tfhe_overflow_probe(const SchemeParams& base, const std::vector<int>& ps,
                                                 int timing_runs, std::uint64_t seed) {
  std::vector<TfheOverflowRow> rows;
  Rng rng(seed);
  for (int p : ps) {
    TfheOverflowRow row;
    row.p = p;
    row.t = std::int64_t{1} << p;
    SchemeParams params = base;
    params.t = row.t;
    params.name = base.name + "-p" + std::to_string(p);
    auto model = make_model(params);
    std::string src = tfhe_addition_source(row.t, row.t + 1);

    std::optional<Diagnosis> diag;
    CoreProgram core;
    row.static_ms = median_ms(
        [&] {
          core = lower(parse(src));
          auto r = check_program(*model, core);
          diag = r ? std::nullopt : std::optional<Diagnosis>(r.error());
        },
        timing_runs);
    if (diag) {
      row.kind = std::string(failure_kind_name(diag->kind));
      std::int64_t n = 0;
      for (const auto* a : assignments(*core.body)) {
        if (a->var == "acc") ++n;
        if (a->id == diag->stmt) break;
      }
      row.rejected_at = n;
    }

    SecretModel sm(*model, seed);
    row.dynamic_ms = median_ms(
        [&] {
          const TfheSim& sim = *sm.tfhe();
          TfheValue acc = sim.encrypt(CipherKind::Lwe, -(row.t / 2), rng);
          TfheValue one = sim.encrypt(CipherKind::Lwe, 1, rng);
          row.dynamic_wrap_at = -1;
          for (std::int64_t k = 1; k <= row.t + 1; ++k) {
            acc = sim.add(acc, one);
            if ((acc.wrapped || acc.corrupted) && row.dynamic_wrap_at < 0) row.dynamic_wrap_at = k;
          }
        },
        timing_runs);
    rows.push_back(row);
  }
  return rows;
}

std::string power_source(int k) {
  std::string s = "c1 := cipher_input(-1, 1)\n";
  for (int i = 1; i <= k; ++i)
    s += "c" + std::to_string(i + 1) + " := c" + std::to_string(i) + " (*) c" + std::to_string(i) + "\n";
  return s;
}

std::vector<MsGainRow> ms_gain(const Model& model, int max_k) {
  std::vector<MsGainRow> rows;
  for (int k = 1; k <= max_k; ++k) {
    CoreProgram prog = lower(parse(power_source(k)));
    MsGainRow row;
    row.k = k;
    row.original_ok = static_cast<bool>(check_program(model, prog));
    InferResult r = infer_modswitch(model, prog);
    row.inferred_ok = r.success;
    row.inserted = r.inserted;
    row.multiplies = r.multiplies;
    row.chain_length = r.chain_length;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ila::oracle
