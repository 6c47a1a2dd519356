#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/ast.hpp"
#include "core/signature.hpp"

namespace sk {

// Order over declared Moment constants. Two moments compare when they share
// the same alphabetic prefix and both end in a decimal index (t0 < t1 < t12);
// a moment always compares equal to itself. Everything else is incomparable
// and callers are expected to log that rather than guess.
class Timeline {
 public:
  explicit Timeline(const Signature& sig);

  bool comparable(const Term& a, const Term& b) const;
  // Requires comparable(a, b).
  bool leq(const Term& a, const Term& b) const;

  // Declared Moment-sorted constants, declaration order.
  const std::vector<Term>& moments() const { return moments_; }

 private:
  std::vector<Term> moments_;
};

// Splits "t12" into ("t", 12). No digit suffix: nullopt.
std::optional<std::pair<std::string, long>> momentIndex(const std::string& name);

}  // namespace sk
