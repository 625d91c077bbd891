#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace cayley {

enum class VarKind : std::uint8_t {
  X = 0,      // matrix entries x[i][j]
  Y = 1,      // second matrix family y[i][j]
  S = 2,      // the formal exponent symbol s
  T = 3,      // diagonal parameters t[i]
  Alpha = 4,  // rational parameters alpha[i]
  Param = 5,  // named parameter families, e.g. a[i][j], b[i][j]
};

// A variable identity packed into one word: two VarIds are the same
// variable iff kind, name tag and indices all coincide.  The packed
// code also provides the total order used by the monomial order.
struct VarId {
  std::uint64_t code = 0;

  static constexpr unsigned kIndexBits = 24;

  static VarId make(VarKind k, char name, std::uint32_t i, std::uint32_t j) {
    VarId v;
    v.code = (static_cast<std::uint64_t>(k) << 56) |
             (static_cast<std::uint64_t>(static_cast<std::uint8_t>(name)) << 48) |
             (static_cast<std::uint64_t>(i) << kIndexBits) | static_cast<std::uint64_t>(j);
    return v;
  }

  static VarId x(std::uint32_t i, std::uint32_t j) { return make(VarKind::X, 0, i, j); }
  static VarId y(std::uint32_t i, std::uint32_t j) { return make(VarKind::Y, 0, i, j); }
  static VarId s() { return make(VarKind::S, 0, 0, 0); }
  static VarId t(std::uint32_t i) { return make(VarKind::T, 0, i, 0); }
  static VarId alpha(std::uint32_t i) { return make(VarKind::Alpha, 0, i, 0); }
  static VarId param(char name, std::uint32_t i, std::uint32_t j) {
    return make(VarKind::Param, name, i, j);
  }

  VarKind kind() const { return static_cast<VarKind>(code >> 56); }
  char name() const { return static_cast<char>((code >> 48) & 0xff); }
  std::uint32_t i() const { return static_cast<std::uint32_t>((code >> kIndexBits) & 0xffffff); }
  std::uint32_t j() const { return static_cast<std::uint32_t>(code & 0xffffff); }

  friend auto operator<=>(const VarId&, const VarId&) = default;

  std::string str() const;
};

}  // namespace cayley
