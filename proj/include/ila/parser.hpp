#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ila/ast.hpp"

namespace ila {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& what)
      : std::runtime_error(what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

SurfaceProgram parse(std::string_view source);

// Keywords that introduce initializers (cipher_init[...], plain_init(3), ...).
bool is_init_keyword(std::string_view word);

}  // namespace ila
