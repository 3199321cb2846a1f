#pragma once

#include <stdexcept>
#include <string>

namespace tameline {

// Operational errors carry a stable name that surfaces through the C API
// and in CLI messages. Syntax errors additionally carry a byte position.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& msg)
      : std::runtime_error(msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(size_t pos, const std::string& msg)
      : Error("SyntaxError", msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

}  // namespace tameline
