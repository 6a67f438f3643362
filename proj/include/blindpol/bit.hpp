#pragma once

namespace blindpol {

/// Classical bit, closed under addition modulo 2.
class Bit {
public:
  constexpr Bit() = default;
  constexpr explicit Bit(bool value) : value_(value) {}

  constexpr int value() const { return value_ ? 1 : 0; }
  constexpr bool as_bool() const { return value_; }
  constexpr Bit flipped() const { return Bit(!value_); }

  friend constexpr Bit operator^(Bit a, Bit b) { return Bit(a.value_ != b.value_); }
  friend constexpr bool operator==(Bit, Bit) = default;

private:
  bool value_ = false;
};

}  // namespace blindpol
