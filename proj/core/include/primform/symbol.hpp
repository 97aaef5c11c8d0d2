#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace primform {

/// Interned name of a variable, coordinate or formal parameter.
///
/// Symbols compare by interning rank. A fixed set of common names (z, x, y,
/// t0.., a0.., q, E1..) is registered up front so the lexicographic monomial
/// order, and therefore printing, does not depend on construction history.
class Symbol {
 public:
  Symbol() = default;

  static Symbol intern(std::string_view name);
  static Symbol from_id(std::uint32_t id) { return Symbol(id); }

  std::uint32_t id() const { return id_; }
  const std::string& name() const;

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

inline Symbol sym(std::string_view name) { return Symbol::intern(name); }

}  // namespace primform
