#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace graphonlab {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// x = 1 belongs to no level interval; callers treat it as a measure-zero point.
struct no_level_error : error {
  no_level_error() : error("x = 1 belongs to no dyadic level interval") {}
};

// A value would need more fractional bits than the representation carries.
struct precision_error : error {
  explicit precision_error(const std::string& what) : error(what) {}
};

struct layout_error : error {
  explicit layout_error(const std::string& what) : error(what) {}
};

// A point of [0,1] stored exactly as numerator / 2^53.
//
// Every coordinate the library touches lives on this lattice, so interval
// membership, the level decomposition below and the digit operations of the
// recipe maps are integer arithmetic with no rounding.  Conversion to double
// is exact as well (53-bit numerators fit a double's significand).
class UnitCoord {
 public:
  static constexpr int precision = 53;
  static constexpr std::uint64_t one = std::uint64_t{1} << precision;

  constexpr UnitCoord() = default;
  constexpr explicit UnitCoord(std::uint64_t numerator) : num_(numerator) {
    if (num_ > one) throw error("UnitCoord numerator out of range");
  }

  static UnitCoord from_double(double v) {
    if (!(v >= 0.0) || v > 1.0) throw error("coordinate outside [0,1]");
    double scaled = v * 9007199254740992.0;  // 2^53
    auto n = static_cast<std::uint64_t>(scaled + 0.5);
    return UnitCoord(n > one ? one : n);
  }

  constexpr std::uint64_t numerator() const { return num_; }
  constexpr double value() const { return static_cast<double>(num_) * 0x1p-53; }

  // Binary digit of weight 2^-p, p in [1, precision].
  constexpr bool bit(int p) const {
    return (num_ >> (precision - p)) & 1u;
  }

  friend constexpr bool operator==(UnitCoord a, UnitCoord b) { return a.num_ == b.num_; }
  friend constexpr bool operator!=(UnitCoord a, UnitCoord b) { return a.num_ != b.num_; }
  friend constexpr bool operator<(UnitCoord a, UnitCoord b) { return a.num_ < b.num_; }
  friend constexpr bool operator<=(UnitCoord a, UnitCoord b) { return a.num_ <= b.num_; }
  friend constexpr bool operator>(UnitCoord a, UnitCoord b) { return a.num_ > b.num_; }
  friend constexpr bool operator>=(UnitCoord a, UnitCoord b) { return a.num_ >= b.num_; }

 private:
  std::uint64_t num_ = 0;
};

// Position of x within the level decomposition of [0,1): level k covers the
// half-open interval [1 - 2^(1-k), 1 - 2^(-k)), and rel is the position of x
// rescaled to [0,1) within that interval.
struct LevelPos {
  int level = 1;
  UnitCoord rel;

  friend bool operator==(const LevelPos& a, const LevelPos& b) {
    return a.level == b.level && a.rel == b.rel;
  }
};

// <x> and <x>_rel.  Exact: the level is the run of leading one bits plus one,
// and rel is the remaining bit string shifted up.
inline LevelPos level_of(UnitCoord x) {
  if (x.numerator() == UnitCoord::one) throw no_level_error();
  const int ones = std::countl_one(x.numerator() << (64 - UnitCoord::precision));
  const std::uint64_t base = UnitCoord::one - (UnitCoord::one >> ones);
  const std::uint64_t delta = x.numerator() - base;
  const int shift = ones + 1;
  const std::uint64_t rel = shift >= 64 ? 0 : (delta << shift);
  return LevelPos{ones + 1, UnitCoord(rel)};
}

// Inverse of level_of: x = 1 - 2^(1-level) + rel * 2^(-level).
// rel must be representable with `level` fewer bits, otherwise the result
// would fall off the coordinate lattice.
inline UnitCoord reconstruct(const LevelPos& p) {
  if (p.level < 1 || p.level > UnitCoord::precision + 1)
    throw error("level out of range");
  if (p.rel.numerator() >= UnitCoord::one && p.rel.numerator() != 0)
    throw error("rel out of [0,1)");
  const std::uint64_t low_mask = (p.level >= 64) ? ~std::uint64_t{0}
                                                 : ((std::uint64_t{1} << p.level) - 1);
  if (p.rel.numerator() & low_mask)
    throw precision_error("rel not representable at this level");
  const std::uint64_t base =
      UnitCoord::one - (p.level - 1 >= 64 ? 0 : (UnitCoord::one >> (p.level - 1)));
  return UnitCoord(base + (p.rel.numerator() >> p.level));
}

// Measure of the k-th level interval of [0,1): 2^-k.
inline double level_measure(int k) {
  if (k < 1) throw error("level index must be positive");
  return std::ldexp(1.0, -k);
}

// Measure of the k-th level inside one part of the hypercubical layout,
// where every small part has measure 1/27.
inline double part_level_measure(int k) {
  return level_measure(k) / 27.0;
}

}  // namespace graphonlab
