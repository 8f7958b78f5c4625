#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dihsum {

/// A finite abelian group G = Z_{q_1} x ... x Z_{q_r}, optionally with leading
/// factors that stand in for truncated copies of Z (coordinates in [0, alpha)).
///
/// Factors equal to 1 are dropped at construction, so the trivial group has no
/// moduli at all. `order()` is n = |G| and `involutions()` is
/// j = #{g : g + g = 0}.
class GroupSpec {
public:
  GroupSpec() = default;

  static GroupSpec cyclic(std::uint64_t n);
  static GroupSpec product(std::vector<std::uint64_t> moduli, std::size_t truncated_count = 0);

  /// Grammar: `Z<n>` factors joined by `x`, `Z@<alpha>` for a truncated Z
  /// factor (these must come first). Case-insensitive; no whitespace.
  static GroupSpec parse(std::string_view text);

  const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
  std::size_t truncated_count() const noexcept { return truncated_; }
  std::size_t arity() const noexcept { return moduli_.size(); }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t involutions() const noexcept { return involutions_; }
  bool is_cyclic() const noexcept { return moduli_.size() <= 1; }

  /// G': the same factors with every truncated Z replaced by Z_alpha.
  GroupSpec as_modular() const;

  /// Round-trips through parse().
  std::string to_string() const;

  bool operator==(const GroupSpec&) const = default;

private:
  std::vector<std::uint64_t> moduli_;
  std::size_t truncated_ = 0;
  std::uint64_t order_ = 1;
  std::uint64_t involutions_ = 1;
};

struct AbelianElement {
  std::vector<std::uint64_t> coords;
  bool operator==(const AbelianElement&) const = default;
};

/// (z, g) in Dih(G) = Z_2 |x G; z = 1 marks a flip.
struct DihElement {
  std::uint8_t z = 0;
  AbelianElement g;
  bool operator==(const DihElement&) const = default;
};

/// Element of the truncated box Dih(G_alpha) under ambient arithmetic: the
/// truncated coordinates live in Z, the rest are residues.
struct AmbientElement {
  std::uint8_t z = 0;
  std::vector<std::int64_t> coords;
  bool operator==(const AmbientElement&) const = default;
};

DihElement identity(const GroupSpec& spec);
void validate(const DihElement& a, const GroupSpec& spec);

/// (z1, g1)(z2, g2) = (z1 ^ z2, g1 + (-1)^z1 g2).
DihElement dih_mul(const DihElement& a, const DihElement& b, const GroupSpec& spec);
DihElement dih_inv(const DihElement& a, const GroupSpec& spec);

/// Rotations occupy [0, n), flips [n, 2n); G is mixed-radix with the last
/// modulus varying fastest.
std::uint64_t element_index(const DihElement& a, const GroupSpec& spec);
DihElement index_element(std::uint64_t index, const GroupSpec& spec);

std::uint64_t count_involutions(const GroupSpec& spec);

/// Coordinate identity Dih(G_alpha) -> Dih(G'). `alpha_spec` carries the
/// truncated factors, `prime_spec` is its modular counterpart.
DihElement phi_map(const DihElement& a, const GroupSpec& alpha_spec, const GroupSpec& prime_spec);

AmbientElement to_ambient(const DihElement& a);
AmbientElement ambient_mul(const AmbientElement& a, const AmbientElement& b, const GroupSpec& alpha_spec);

/// Index-level Dih(G) for hot loops. Elements are the encodings of
/// element_index(); a Cayley table is cached for small non-cyclic groups.
class Dihedral {
public:
  explicit Dihedral(GroupSpec spec);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return 2 * n_; }
  bool cyclic() const noexcept { return cyclic_; }
  bool is_flip(std::uint32_t a) const noexcept { return a >= n_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * size() + b];
    return mul_direct(a, b);
  }

  std::uint32_t inv(std::uint32_t a) const noexcept {
    if (a >= n_) return a;
    return g_neg(a);
  }

  /// Group-level arithmetic on G-indices in [0, n).
  std::uint32_t g_add(std::uint32_t x, std::uint32_t y) const noexcept;
  std::uint32_t g_sub(std::uint32_t x, std::uint32_t y) const noexcept;
  std::uint32_t g_neg(std::uint32_t x) const noexcept;

private:
  std::uint32_t mul_direct(std::uint32_t a, std::uint32_t b) const noexcept;

  GroupSpec spec_;
  std::uint32_t n_ = 1;
  bool cyclic_ = true;
  std::vector<std::uint32_t> radix_;
  std::vector<std::uint32_t> table_;
};

}  // namespace dihsum
