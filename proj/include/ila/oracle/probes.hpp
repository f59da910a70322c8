#pragma once

// Desk-scale experiments: static vs oracle multiplicative depth over a q
// sweep, plain-cipher vs cipher-cipher depth, TFHE value-overflow detection
// timing, and depth gained by modulus-switch inference.

#include <functional>
#include <string>
#include <vector>

#include "ila/msinfer.hpp"
#include "ila/oracle/secret_model.hpp"

namespace ila::oracle {

// Median wall-clock milliseconds over runs calls.
double median_ms(const std::function<void()>& fn, int runs);

// Copy of base with a single modulus of the given bit length: q = 1 mod t
// for BGV, a multiple of t for BFV.
SchemeParams with_single_modulus(const SchemeParams& base, std::size_t bits);

// acc := c0 (*) c1; acc := acc (*) c2; ... (depth multiplications) over
// fresh ciphertexts in [-1, 1], or acc := acc (*) plain(1) when plain.
CoreProgram product_chain(int depth, bool plain);

// Multiplications the checker accepts before the first rejection.
int static_depth(const Model& model, bool plain, int max_depth);
// Multiplications that decrypt correctly before the first corruption,
// minimum over trials.
int oracle_depth(const SecretModel& sm, bool plain, int max_depth, int trials, Rng& rng);

struct DepthRow {
  std::size_t q_bits = 0;
  int d_static = 0;
  int d_max = 0;
  double static_ms = 0;
  double oracle_ms = 0;
};

struct DepthProbeOptions {
  std::vector<std::size_t> q_bits;
  bool plain = false;
  int max_depth = 64;
  int trials = 3;
  std::uint64_t seed = 1;
};

std::vector<DepthRow> depth_probe(const SchemeParams& base, const DepthProbeOptions& opts);

// TFHE: acc starts at -t/2 and adds an encryption of 1, additions times.
std::string tfhe_addition_source(std::int64_t t, std::int64_t additions);

struct TfheOverflowRow {
  int p = 0;
  std::int64_t t = 0;
  std::int64_t rejected_at = -1;  // 1-based addition the checker rejects; -1 if none
  std::string kind;               // failure kind of that rejection
  std::int64_t dynamic_wrap_at = -1;  // first addition the simulator flags as wrapped
  double static_ms = 0;   // parse, lower and check (median)
  double dynamic_ms = 0;  // simulated evaluation (median)
};

std::vector<TfheOverflowRow> tfhe_overflow_probe(const SchemeParams& base, const std::vector<int>& ps,
                                                 int timing_runs = 5, std::uint64_t seed = 1);

// c1 := cipher_input(-1, 1); c2 := c1 (*) c1; ... k squarings.
std::string power_source(int k);

struct MsGainRow {
  int k = 0;
  bool original_ok = false;
  bool inferred_ok = false;
  int inserted = 0;
  int multiplies = 0;
  int chain_length = 0;
};

std::vector<MsGainRow> ms_gain(const Model& model, int max_k);

}  // namespace ila::oracle
