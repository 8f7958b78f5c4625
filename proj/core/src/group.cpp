#include "dihsum/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "dihsum/errors.hpp"

namespace dihsum {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 30;

std::uint64_t parse_number(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw StructuralError("bad group factor in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::uint64_t n) { return product({n}, 0); }

GroupSpec GroupSpec::product(std::vector<std::uint64_t> moduli, std::size_t truncated_count) {
  if (truncated_count > moduli.size()) throw StructuralError("truncated_count exceeds factor count");
  GroupSpec g;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t q = moduli[i];
    if (q == 0) throw DomainError("group modulus must be >= 1");
    if (q == 1) continue;
    g.moduli_.push_back(q);
    if (i < truncated_count) ++g.truncated_;
    if (g.order_ > kMaxOrder / q) throw DomainError("group order too large");
    g.order_ *= q;
    if (q % 2 == 0) g.involutions_ *= 2;
  }
  return g;
}

GroupSpec GroupSpec::parse(std::string_view text) {
  if (text.empty()) throw StructuralError("empty group spec");
  std::vector<std::uint64_t> moduli;
  std::size_t truncated = 0;
  bool seen_plain = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = pos;
    while (end < text.size() && text[end] != 'x' && text[end] != 'X') ++end;
    const std::string_view factor = text.substr(pos, end - pos);
    if (factor.size() < 2 || (factor[0] != 'z' && factor[0] != 'Z'))
      throw StructuralError("bad group factor in '" + std::string(text) + "'");
    if (factor[1] == '@') {
      if (seen_plain) throw StructuralError("truncated Z factors must precede cyclic factors");
      const std::uint64_t alpha = parse_number(factor.substr(2), text);
      if (alpha == 0) throw DomainError("truncation bound must be >= 1");
      moduli.push_back(alpha);
      ++truncated;
    } else {
      seen_plain = true;
      moduli.push_back(parse_number(factor.substr(1), text));
    }
    if (end == text.size()) break;
    pos = end + 1;
    if (pos == text.size()) throw StructuralError("trailing separator in '" + std::string(text) + "'");
  }
  return product(std::move(moduli), truncated);
}

GroupSpec GroupSpec::as_modular() const {
  GroupSpec g = *this;
  g.truncated_ = 0;
  return g;
}

std::string GroupSpec::to_string() const {
  if (moduli_.empty()) return "Z1";
  std::string out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out += 'x';
    out += i < truncated_ ? "Z@" : "Z";
    out += std::to_string(moduli_[i]);
  }
  return out;
}

DihElement identity(const GroupSpec& spec) {
  return DihElement{0, AbelianElement{std::vector<std::uint64_t>(spec.arity(), 0)}};
}

void validate(const DihElement& a, const GroupSpec& spec) {
  if (a.g.coords.size() != spec.arity())
    throw StructuralError("element arity " + std::to_string(a.g.coords.size()) + " does not match group arity " +
                          std::to_string(spec.arity()));
  if (a.z > 1) throw DomainError("z must be 0 or 1");
  for (std::size_t i = 0; i < a.g.coords.size(); ++i)
    if (a.g.coords[i] >= spec.moduli()[i]) throw DomainError("coordinate out of range");
}

DihElement dih_mul(const DihElement& a, const DihElement& b, const GroupSpec& spec) {
  validate(a, spec);
  validate(b, spec);
  DihElement r;
  r.z = a.z ^ b.z;
  r.g.coords.resize(spec.arity());
  for (std::size_t i = 0; i < spec.arity(); ++i) {
    const std::uint64_t q = spec.moduli()[i];
    const std::uint64_t y = b.g.coords[i];
    r.g.coords[i] = a.z == 0 ? (a.g.coords[i] + y) % q : (a.g.coords[i] + q - y) % q;
  }
  return r;
}

DihElement dih_inv(const DihElement& a, const GroupSpec& spec) {
  validate(a, spec);
  if (a.z == 1) return a;
  DihElement r = a;
  for (std::size_t i = 0; i < spec.arity(); ++i) {
    const std::uint64_t q = spec.moduli()[i];
    r.g.coords[i] = (q - a.g.coords[i]) % q;
  }
  return r;
}

std::uint64_t element_index(const DihElement& a, const GroupSpec& spec) {
  validate(a, spec);
  std::uint64_t g = 0;
  for (std::size_t i = 0; i < spec.arity(); ++i) g = g * spec.moduli()[i] + a.g.coords[i];
  return a.z * spec.order() + g;
}

DihElement index_element(std::uint64_t index, const GroupSpec& spec) {
  if (index >= 2 * spec.order()) throw DomainError("element index out of range");
  DihElement r;
  r.z = index >= spec.order() ? 1 : 0;
  std::uint64_t g = index - r.z * spec.order();
  r.g.coords.resize(spec.arity());
  for (std::size_t i = spec.arity(); i-- > 0;) {
    r.g.coords[i] = g % spec.moduli()[i];
    g /= spec.moduli()[i];
  }
  return r;
}

std::uint64_t count_involutions(const GroupSpec& spec) { return spec.involutions(); }

DihElement phi_map(const DihElement& a, const GroupSpec& alpha_spec, const GroupSpec& prime_spec) {
  if (alpha_spec.moduli() != prime_spec.moduli() || prime_spec.truncated_count() != 0)
    throw StructuralError("prime_spec must be the modular counterpart of alpha_spec");
  if (a.g.coords.size() != alpha_spec.arity()) throw StructuralError("element arity mismatch");
  for (std::size_t i = 0; i < alpha_spec.arity(); ++i)
    if (a.g.coords[i] >= alpha_spec.moduli()[i])
      throw DomainError(i < alpha_spec.truncated_count() ? "truncated coordinate must lie in [0, alpha)"
                                                          : "coordinate out of range");
  if (a.z > 1) throw DomainError("z must be 0 or 1");
  return a;
}

AmbientElement to_ambient(const DihElement& a) {
  AmbientElement r;
  r.z = a.z;
  r.coords.assign(a.g.coords.begin(), a.g.coords.end());
  return r;
}

AmbientElement ambient_mul(const AmbientElement& a, const AmbientElement& b, const GroupSpec& alpha_spec) {
  if (a.coords.size() != alpha_spec.arity() || b.coords.size() != alpha_spec.arity())
    throw StructuralError("element arity mismatch");
  AmbientElement r;
  r.z = a.z ^ b.z;
  r.coords.resize(a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const std::int64_t v = a.z == 0 ? a.coords[i] + b.coords[i] : a.coords[i] - b.coords[i];
    if (i < alpha_spec.truncated_count()) {
      r.coords[i] = v;
    } else {
      const auto q = static_cast<std::int64_t>(alpha_spec.moduli()[i]);
      r.coords[i] = ((v % q) + q) % q;
    }
  }
  return r;
}

Dihedral::Dihedral(GroupSpec spec) : spec_(std::move(spec)) {
  n_ = static_cast<std::uint32_t>(spec_.order());
  cyclic_ = spec_.is_cyclic();
  for (auto q : spec_.moduli()) radix_.push_back(static_cast<std::uint32_t>(q));
  const std::uint64_t cells = std::uint64_t{size()} * size();
  if (!cyclic_ && cells <= (std::uint64_t{1} << 22)) {
    table_.resize(cells);
    for (std::uint32_t a = 0; a < size(); ++a)
      for (std::uint32_t b = 0; b < size(); ++b) table_[std::size_t{a} * size() + b] = mul_direct(a, b);
  }
}

std::uint32_t Dihedral::g_add(std::uint32_t x, std::uint32_t y) const noexcept {
  if (cyclic_) {
    const std::uint32_t s = x + y;
    return s >= n_ ? s - n_ : s;
  }
  std::uint32_t out = 0, place = 1;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    const std::uint32_t q = radix_[i];
    const std::uint32_t s = (x % q + y % q) % q;
    out += s * place;
    place *= q;
    x /= q;
    y /= q;
  }
  return out;
}

std::uint32_t Dihedral::g_neg(std::uint32_t x) const noexcept {
  if (cyclic_) return x == 0 ? 0 : n_ - x;
  std::uint32_t out = 0, place = 1;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    const std::uint32_t q = radix_[i];
    out += ((q - x % q) % q) * place;
    place *= q;
    x /= q;
  }
  return out;
}

std::uint32_t Dihedral::g_sub(std::uint32_t x, std::uint32_t y) const noexcept { return g_add(x, g_neg(y)); }

std::uint32_t Dihedral::mul_direct(std::uint32_t a, std::uint32_t b) const noexcept {
  const bool fa = a >= n_, fb = b >= n_;
  const std::uint32_t ga = fa ? a - n_ : a;
  const std::uint32_t gb = fb ? b - n_ : b;
  const std::uint32_t g = fa ? g_sub(ga, gb) : g_add(ga, gb);
  return (fa != fb) ? g + n_ : g;
}

}  // namespace dihsum
