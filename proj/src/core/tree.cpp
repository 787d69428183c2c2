#include "core/tree.hpp"

#include <string>

namespace cti {

Word Word::parent() const {
  if (is_root()) throw UsageError("root has no parent");
  Word p{letters};
  p.letters.pop_back();
  return p;
}

bool Word::reduced() const {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (letters[i] == letters[i - 1]) return false;
  return true;
}

namespace detail {

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw CapacityError(std::string(what) + ": exact integer overflow");
  return out;
}

std::int64_t checked_pow(std::int64_t base, int exp, const char* what) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base, what);
  return r;
}

}  // namespace detail

std::int64_t TreeGeometry::sphere_size(int n) const {
  if (n < 0) throw UsageError("sphere_size: negative level");
  if (n == 0) return 1;
  return detail::checked_mul(root_degree(), detail::checked_pow(k, n - 1, "sphere_size"),
                             "sphere_size");
}

std::int64_t TreeGeometry::ball_size(int n) const {
  if (root != RootDegree::Full)
    throw UsageError("ball_size: closed form applies to the full tree only");
  if (n < 0) throw UsageError("ball_size: negative level");
  // ((k+1) k^n - 2)/(k-1), always integral
  std::int64_t num = detail::checked_mul(k + 1, detail::checked_pow(k, n, "ball_size"),
                                         "ball_size") - 2;
  return num / (k - 1);
}

std::int64_t TreeGeometry::ball_size_any(int n) const {
  std::int64_t total = 0;
  for (int m = 0; m <= n; ++m) total += sphere_size(m);
  return total;
}

SubgroupSpec SubgroupSpec::first_j(int j) {
  if (j < 1 || j > 31) throw UsageError("SubgroupSpec: j out of range");
  return SubgroupSpec{(1u << j) - 1u};
}

int SubgroupSpec::size() const { return __builtin_popcount(mask); }

Parity classify_vertex(const Word& x, const SubgroupSpec& a) {
  int count = 0;
  for (auto letter : x.letters) count += a.contains(letter) ? 1 : 0;
  return (count % 2 == 0) ? Parity::H0 : Parity::H1;
}

EdgeColor edge_color(const Word& x, const SubgroupSpec& a) {
  if (x.is_root()) throw UsageError("edge_color: the root has no ancestor edge");
  Parity child = classify_vertex(x, a);
  Parity parent = a.contains(x.letters.back())
                      ? (child == Parity::H0 ? Parity::H1 : Parity::H0)
                      : child;
  return edge_color_of(child, parent);
}

namespace {

// Iterative DFS over reduced words up to max_level. Visits parents first,
// children in lexicographic letter order.
template <typename Fn>
void dfs_words(const TreeGeometry& geom, int max_level, bool visit_interior, Fn&& fn) {
  Word w;
  fn(w, /*emit=*/visit_interior || max_level == 0);
  if (max_level == 0) return;

  const int n_letters = geom.k + 1;
  const int root_max = geom.root == RootDegree::Full ? geom.k + 1 : geom.k;

  // stack of "next letter to try" per level
  std::vector<int> next(static_cast<std::size_t>(max_level) + 1, 1);
  w.letters.reserve(max_level);

  while (true) {
    int depth = w.level();
    if (depth == max_level) {
      w.letters.pop_back();
      continue;
    }
    int limit = depth == 0 ? root_max : n_letters;
    int& cursor = next[depth];
    int letter = cursor;
    // skip the letter equal to the last one (words stay reduced)
    if (!w.is_root() && letter == w.letters.back()) ++letter;
    if (letter > limit) {
      cursor = 1;
      if (w.is_root()) return;
      w.letters.pop_back();
      continue;
    }
    cursor = letter + 1;
    w.letters.push_back(static_cast<std::uint8_t>(letter));
    fn(w, visit_interior || w.level() == max_level);
  }
}

}  // namespace

void for_each_word_at_level(const TreeGeometry& geom, int n,
                            const std::function<void(const Word&)>& fn,
                            std::int64_t max_vertices) {
  if (n < 0) throw UsageError("for_each_word_at_level: negative level");
  if (geom.sphere_size(n) > max_vertices)
    throw CapacityError("sphere enumeration: |W_n| exceeds the configured guard");
  dfs_words(geom, n, /*visit_interior=*/false, [&](const Word& w, bool emit) {
    if (emit) fn(w);
  });
}

std::vector<Word> enumerate_sphere(const TreeGeometry& geom, int n, std::int64_t max_vertices) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(std::min<std::int64_t>(geom.sphere_size(n), max_vertices)));
  for_each_word_at_level(geom, n, [&](const Word& w) { out.push_back(w); }, max_vertices);
  return out;
}

void walk_ball(const TreeGeometry& geom, int n, const std::function<void(const Word&)>& fn,
               std::int64_t max_vertices) {
  if (n < 0) throw UsageError("walk_ball: negative level");
  if (geom.ball_size_any(n) > max_vertices)
    throw CapacityError("ball walk: |V_n| exceeds the configured guard");
  dfs_words(geom, n, /*visit_interior=*/true, [&](const Word& w, bool emit) {
    if (emit) fn(w);
  });
}

}  // namespace cti
