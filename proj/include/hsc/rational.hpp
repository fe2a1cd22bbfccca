#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hsc {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

// Errors carry the name of the module that raised them.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsc
