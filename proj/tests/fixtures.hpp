#ifndef AFENV_TESTS_FIXTURES_HPP
#define AFENV_TESTS_FIXTURES_HPP

#include <string>

#include "afenv/regular_map.hpp"

namespace afenv::testing {

/// a -> a_22 + pap + pap from T_n to T_{2n-1}.
inline RegularMap doubling_map(int n) {
  const int m = 2 * n - 1;
  ImageTable table;
  table[{2, 2}].push_back({1, 1});
  for (int copy = 0; copy < 2; ++copy)
    for (int i = 2; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        table[{i, j}].push_back({i + copy * (n - 1), j + copy * (n - 1)});
  return make_regular_map(upper_triangular(n), upper_triangular(m), table);
}

/// a -> a + a_ii from T_n to T_{n+1}.
inline RegularMap interval_map(int n, int i) {
  const Digraph t = upper_triangular(n);
  ImageTable table;
  for (Edge e : t.edges()) table[e].push_back(e);
  table[{i, i}].push_back({n + 1, n + 1});
  return make_regular_map(t, upper_triangular(n + 1), table);
}

/// a -> a + 0 from T_n to T_{n+1}.
inline RegularMap corner_map(int n) {
  const Digraph t = upper_triangular(n);
  ImageTable table;
  for (Edge e : t.edges()) table[e].push_back(e);
  return make_regular_map(t, upper_triangular(n + 1), table);
}

/// Identity on every unit of the m-cycle except the closing edge (m, 1).
inline RegularMap cycle_truncation(int m) {
  const Digraph g = cycle_digraph(m);
  ImageTable table;
  for (Edge e : g.edges())
    if (!(e.row == m && e.col == 1)) table[e].push_back(e);
  return make_regular_map(g, g, table);
}

inline std::string data_path(const std::string& name) {
  return std::string(AFENV_DATA_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(AFENV_GOLDEN_DIR) + "/" + name;
}

}  // namespace afenv::testing

#endif  // AFENV_TESTS_FIXTURES_HPP
