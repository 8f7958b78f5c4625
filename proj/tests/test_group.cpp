#include <doctest.h>

#include <dihsum/errors.hpp>
#include <dihsum/group.hpp>

#include "oracles.hpp"

using namespace dihsum;

namespace {

DihElement el(std::uint8_t z, std::vector<std::uint64_t> g) { return DihElement{z, AbelianElement{std::move(g)}}; }

std::vector<std::vector<std::uint64_t>> small_groups(std::uint64_t max_order) {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t a = 1; a <= max_order; ++a) out.push_back({a});
  for (std::uint64_t a = 2; a <= max_order; ++a)
    for (std::uint64_t b = 2; a * b <= max_order; ++b) out.push_back({a, b});
  for (std::uint64_t a = 2; a <= max_order; ++a)
    for (std::uint64_t b = 2; a * b <= max_order; ++b)
      for (std::uint64_t c = 2; a * b * c <= max_order; ++c) out.push_back({a, b, c});
  return out;
}

oracle::Group as_oracle(const GroupSpec& s) {
  oracle::Group g;
  for (auto q : s.moduli()) g.mod.push_back(static_cast<int>(q));
  return g;
}

}  // namespace

TEST_CASE("multiplication follows the semidirect law") {
  const auto z5 = GroupSpec::cyclic(5);
  CHECK(dih_mul(el(0, {2}), el(1, {3}), z5) == el(1, {0}));
  CHECK(dih_mul(el(1, {3}), el(0, {2}), z5) == el(1, {1}));
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto x = index_element(i, z5);
    CHECK(dih_mul(identity(z5), x, z5) == x);
    CHECK(dih_mul(x, identity(z5), z5) == x);
  }
  CHECK_THROWS_AS(dih_mul(el(0, {1, 2}), el(0, {1}), z5), StructuralError);
}

TEST_CASE("inverses") {
  const auto z5 = GroupSpec::cyclic(5);
  CHECK(dih_inv(el(0, {2}), z5) == el(0, {3}));
  CHECK(dih_inv(el(1, {4}), z5) == el(1, {4}));
  CHECK(dih_inv(el(0, {0}), z5) == el(0, {0}));
}

TEST_CASE("element encoding") {
  const auto z3 = GroupSpec::cyclic(3);
  CHECK(element_index(el(0, {0}), z3) == 0);
  CHECK(element_index(el(1, {0}), z3) == 3);
  const auto z2z3 = GroupSpec::product({2, 3});
  CHECK(element_index(el(0, {1, 2}), z2z3) == 5);
  const auto z4 = GroupSpec::cyclic(4);
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(element_index(index_element(i, z4), z4) == i);
  CHECK_THROWS_AS(index_element(8, z4), DomainError);
}

TEST_CASE("involution count") {
  CHECK(count_involutions(GroupSpec::cyclic(7)) == 1);
  CHECK(count_involutions(GroupSpec::cyclic(8)) == 2);
  CHECK(count_involutions(GroupSpec::product({2, 2, 3})) == 4);
  for (const auto& mods : small_groups(64)) {
    const auto spec = GroupSpec::product(mods);
    const auto G = as_oracle(spec);
    std::uint64_t brute = 0;
    for (int x = 0; x < G.order(); ++x) {
      const auto e = G.decode(x);
      bool two_torsion = true;
      for (std::size_t i = 0; i < e.g.size(); ++i) two_torsion &= (2 * e.g[i]) % G.mod[i] == 0;
      brute += two_torsion;
    }
    CHECK(count_involutions(spec) == brute);
    CHECK(spec.involutions() == brute);
  }
}

TEST_CASE("group axioms hold exhaustively for |G| <= 12") {
  for (const auto& mods : small_groups(12)) {
    const auto spec = GroupSpec::product(mods);
    const Dihedral D(spec);
    const auto G = as_oracle(spec);
    const std::uint32_t s = D.size();
    bool ok_table = true, ok_assoc = true, ok_inv = true, ok_flip = true;
    for (std::uint32_t a = 0; a < s; ++a) {
      ok_inv &= D.mul(a, D.inv(a)) == 0 && D.inv(D.inv(a)) == a;
      if (D.is_flip(a)) ok_flip &= D.mul(a, a) == 0;
      for (std::uint32_t b = 0; b < s; ++b) {
        const auto ab = D.mul(a, b);
        ok_table &= static_cast<int>(ab) == G.mul(static_cast<int>(a), static_cast<int>(b));
        ok_inv &= D.inv(ab) == D.mul(D.inv(b), D.inv(a));
        for (std::uint32_t c = 0; c < s; ++c) ok_assoc &= D.mul(ab, c) == D.mul(a, D.mul(b, c));
      }
    }
    INFO(spec.to_string());
    CHECK(ok_table);
    CHECK(ok_assoc);
    CHECK(ok_inv);
    CHECK(ok_flip);
  }
}

TEST_CASE("element-level and index-level arithmetic agree") {
  const auto spec = GroupSpec::product({2, 4, 3});
  const Dihedral D(spec);
  for (std::uint32_t a = 0; a < D.size(); ++a) {
    CHECK(element_index(dih_inv(index_element(a, spec), spec), spec) == D.inv(a));
    for (std::uint32_t b = 0; b < D.size(); b += 5)
      CHECK(element_index(dih_mul(index_element(a, spec), index_element(b, spec), spec), spec) == D.mul(a, b));
  }
}

TEST_CASE("group spec grammar") {
  CHECK(GroupSpec::parse("Z5") == GroupSpec::cyclic(5));
  CHECK(GroupSpec::parse("z4xZ2xz5").moduli() == std::vector<std::uint64_t>{4, 2, 5});
  CHECK(GroupSpec::parse("Z4XZ2").order() == 8);
  const auto t = GroupSpec::parse("Z@5xZ3");
  CHECK(t.truncated_count() == 1);
  CHECK(t.order() == 15);
  CHECK(t.as_modular() == GroupSpec::product({5, 3}));
  CHECK(GroupSpec::parse("Z1xZ6") == GroupSpec::cyclic(6));
  CHECK(GroupSpec::parse("Z1").order() == 1);
  for (const char* s : {"Z@5xZ3", "Z12", "Z2xZ2xZ3", "Z1"}) CHECK(GroupSpec::parse(GroupSpec::parse(s).to_string()) == GroupSpec::parse(s));
  for (const char* bad : {"", "Z", "Z5x", "xZ5", "Z 5", "Y5", "Z5xZ@3", "Z-3", "Z5Z3"})
    CHECK_THROWS_AS(GroupSpec::parse(bad), StructuralError);
  CHECK_THROWS_AS(GroupSpec::parse("Z0"), DomainError);
}

TEST_CASE("coordinate bijection onto the modular group") {
  const auto alpha = GroupSpec::parse("Z@5");
  const auto prime = alpha.as_modular();
  CHECK(phi_map(el(1, {3}), alpha, prime) == el(1, {3}));
  CHECK_THROWS_AS(phi_map(el(1, {5}), alpha, prime), DomainError);

  for (const char* s : {"Z@4", "Z@3xZ2", "Z@2xZ3", "Z@6"}) {
    const auto a = GroupSpec::parse(s);
    const auto p = a.as_modular();
    std::set<std::uint64_t> image;
    for (std::uint64_t i = 0; i < 2 * a.order(); ++i) image.insert(element_index(phi_map(index_element(i, a), a, p), p));
    CHECK(image.size() == 2 * a.order());
  }
}

TEST_CASE("collisions transport from the truncated box") {
  const auto a = GroupSpec::parse("Z@4");
  const auto p = a.as_modular();
  const auto n2 = 2 * a.order();
  std::uint64_t ambient = 0, modular_only = 0;
  for (std::uint64_t i = 0; i < n2; ++i)
    for (std::uint64_t j = 0; j < n2; ++j)
      for (std::uint64_t k = 0; k < n2; ++k)
        for (std::uint64_t l = 0; l < n2; ++l) {
          const auto x = index_element(i, a), y = index_element(j, a), z = index_element(k, a), w = index_element(l, a);
          const bool amb = ambient_mul(to_ambient(x), to_ambient(y), a) == ambient_mul(to_ambient(z), to_ambient(w), a);
          const bool mod = dih_mul(phi_map(x, a, p), phi_map(y, a, p), p) == dih_mul(phi_map(z, a, p), phi_map(w, a, p), p);
          if (amb) {
            ++ambient;
            CHECK(mod);
          } else if (mod) {
            ++modular_only;
          }
        }
  CHECK(ambient > 0);
  CHECK(modular_only > 0);
}
