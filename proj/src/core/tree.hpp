#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/errors.hpp"

namespace cti {

// A vertex of the Cayley tree, addressed by its reduced word over the
// generators a_1..a_{k+1} (letters stored 1-based). The empty word is the
// root; the parent is obtained by dropping the last letter.
struct Word {
  std::vector<std::uint8_t> letters;

  int level() const { return static_cast<int>(letters.size()); }
  bool is_root() const { return letters.empty(); }
  Word parent() const;
  bool reduced() const;
};

enum class RootDegree { Full, Half };  // Full: root has k+1 neighbors; Half: k

struct TreeGeometry {
  int k = 2;
  RootDegree root = RootDegree::Full;

  int root_degree() const { return root == RootDegree::Full ? k + 1 : k; }

  // |W_n|, exact. Throws CapacityError on int64 overflow.
  std::int64_t sphere_size(int n) const;
  // |V_n| for the full tree: ((k+1) k^n - 2)/(k-1). Rejects half trees.
  std::int64_t ball_size(int n) const;
  // Sum of sphere sizes 0..n; works for both root degrees.
  std::int64_t ball_size_any(int n) const;
};

// Index-two subgroup H_A of the free product group: words with an even
// total count of the generators indexed by A.
struct SubgroupSpec {
  std::uint32_t mask = 0;  // bit (i-1) set iff generator a_i is in A

  static SubgroupSpec first_j(int j);  // A = {1, .., j}
  int size() const;
  bool contains(int letter) const { return (mask >> (letter - 1)) & 1u; }
};

enum class Parity : int { H0 = 0, H1 = 1 };

// Directed edge color (class of child, class of parent).
enum class EdgeColor : int { AA = 0, AB = 1, BA = 2, BB = 3 };

Parity classify_vertex(const Word& x, const SubgroupSpec& a);
EdgeColor edge_color(const Word& x, const SubgroupSpec& a);

inline EdgeColor edge_color_of(Parity child, Parity parent) {
  return static_cast<EdgeColor>((child == Parity::H1 ? 2 : 0) + (parent == Parity::H1 ? 1 : 0));
}

// Streams the reduced words of W_n in lexicographic order. The guard
// rejects spheres whose size is not enumerable.
void for_each_word_at_level(const TreeGeometry& geom, int n,
                            const std::function<void(const Word&)>& fn,
                            std::int64_t max_vertices = 100'000'000);

std::vector<Word> enumerate_sphere(const TreeGeometry& geom, int n,
                                   std::int64_t max_vertices = 10'000'000);

// Depth-first walk of the ball V_n. The visitor receives each vertex word
// exactly once, parents before children.
void walk_ball(const TreeGeometry& geom, int n, const std::function<void(const Word&)>& fn,
               std::int64_t max_vertices = 100'000'000);

namespace detail {
std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what);
std::int64_t checked_pow(std::int64_t base, int exp, const char* what);
}  // namespace detail

}  // namespace cti
