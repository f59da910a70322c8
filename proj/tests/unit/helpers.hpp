#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ila/lower.hpp"
#include "ila/parser.hpp"
#include "ila/schemes.hpp"
#include "json.hpp"

namespace ila::test {

inline std::string source_path(const std::string& rel) { return std::string(ILA_SOURCE_DIR) + "/" + rel; }

inline CoreProgram core(std::string_view src) { return lower(parse(src)); }

inline SchemeParams preset(const std::string& name) { return load_params(source_path("presets/" + name + ".json")); }

// Moduli given low to high; each is 2^bits rounded up to 1 mod t.
inline SchemeParams bgv_params(std::int64_t t, std::size_t d, std::initializer_list<unsigned> bits) {
  SchemeParams p;
  p.name = "test-bgv";
  p.scheme = SchemeKind::Bgv;
  p.t = t;
  p.d = d;
  for (unsigned b : bits) {
    BigInt q = 1;
    mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), b);
    while (q % t != 1 % t || q % 2 == 0) ++q;
    p.moduli.push_back(q);
  }
  return p;
}

inline SchemeParams tfhe_params(std::int64_t t, unsigned q_bits = 64) {
  SchemeParams p;
  p.name = "test-tfhe";
  p.scheme = SchemeKind::Tfhe;
  p.t = t;
  p.d = 1;
  BigInt q = 1;
  mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), q_bits);
  p.moduli = {q};
  p.tfhe_fresh_noise = 1024;
  return p;
}

inline const nlohmann::json& frozen() {
  static const nlohmann::json j = [] {
    std::ifstream in(source_path("tests/oracles/frozen.json"));
    return nlohmann::json::parse(in);
  }();
  return j;
}

struct Proc {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing stdout (stderr is discarded unless the
// command redirects it).
inline Proc run(const std::string& cmd) {
  Proc p;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((cmd + " 2>/dev/null").c_str(), "r"), pclose);
  if (!pipe) return p;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) p.out.append(buf.data(), n);
  int raw = pclose(pipe.release());
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return p;
}

inline std::vector<nlohmann::json> json_lines(const std::string& out) {
  std::vector<nlohmann::json> v;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

}  // namespace ila::test
