#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "ila/ast.hpp"

namespace ila {

class LowerError : public std::runtime_error {
 public:
  LowerError(SourcePos pos, const std::string& what) : std::runtime_error(what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct LowerOptions {
  std::size_t unroll_budget = 1'000'000;  // max emitted core statements
};

// Unrolls loops, resolves vector/matrix indices to scalar variables
// (A[i] -> A_i, M[i][j] -> M_{i*cols+j}) and collects ciphertext inputs.
// Loop conditions and indices are evaluated over plain integers.
CoreProgram lower(const SurfaceProgram& program, const LowerOptions& options = {});

std::string element_name(const std::string& base, std::size_t flat_index);

}  // namespace ila
