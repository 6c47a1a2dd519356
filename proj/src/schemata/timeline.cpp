#include "schemata/timeline.hpp"

#include <cctype>

namespace sk {

std::optional<std::pair<std::string, long>> momentIndex(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  if (i == name.size()) return std::nullopt;
  if (name.size() - i > 9) return std::nullopt;
  return std::make_pair(name.substr(0, i), std::stol(name.substr(i)));
}

Timeline::Timeline(const Signature& sig) {
  for (const ConstDecl& c : sig.consts()) {
    if (sig.subsort(c.sort, sig.momentSort())) moments_.push_back(Term::constant(c.name, c.sort));
  }
}

bool Timeline::comparable(const Term& a, const Term& b) const {
  if (!a.isConst() || !b.isConst()) return false;
  if (a.name == b.name) return true;
  auto ia = momentIndex(a.name);
  auto ib = momentIndex(b.name);
  return ia && ib && ia->first == ib->first;
}

bool Timeline::leq(const Term& a, const Term& b) const {
  if (a.name == b.name) return true;
  auto ia = momentIndex(a.name);
  auto ib = momentIndex(b.name);
  return ia && ib && ia->first == ib->first && ia->second <= ib->second;
}

}  // namespace sk
