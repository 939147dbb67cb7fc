#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "hecke/coxeter.hpp"

namespace hecke {

struct NamedType {
  std::string canonical_name;  // "B3", "C~2", ...
  CartanMatrix cartan;
  std::vector<std::string> names;
  bool affine = false;
};

namespace detail {

// Cartan matrix from a Dynkin graph with squared root lengths:
// c_ij = 2 (a_i, a_j) / (a_i, a_i) = <a_i^vee, a_j>.
inline CartanMatrix from_dynkin(const std::vector<int>& len, const std::vector<std::pair<int, int>>& edges) {
  const std::size_t n = len.size();
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) c[i][i] = 2;
  for (auto [i, j] : edges) {
    int li = len[i], lj = len[j];
    int lo = std::min(li, lj), hi = std::max(li, lj);
    // (a_i, a_j) = -hi/2 for the standard root systems up to scaling
    int inner2 = -hi;  // 2 (a_i, a_j)
    if (hi == lo) inner2 = -lo;
    c[i][j] = inner2 / li;
    c[j][i] = inner2 / lj;
  }
  return CartanMatrix(std::move(c));
}

inline std::vector<std::string> finite_names(std::size_t n) { return CoxeterGroup::default_names(n); }
inline std::vector<std::string> affine_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

}  // namespace detail

// Named Cartan types (c_ij = <coroot_i, root_j>), Bourbaki numbering except
// that B2 lists its short root first (s short, t long; the same matrix as C2).
//   B_n: alpha_n short;  C_n: alpha_n long;  G2: alpha_1 short;
//   F4: alpha_1, alpha_2 long;  E_n: Bourbaki numbering.
//   Affine types X~n add s0 (the negative highest root node); for C~n the
//   nodes s0 and sn are long.
inline NamedType named_type(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (c != '_' && c != ' ') name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  bool affine = false;
  if (name.rfind("AFFINE-", 0) == 0) {
    affine = true;
    name = name.substr(7);
  }
  if (name.size() >= 2 && name[1] == '~') {
    affine = true;
    name.erase(1, 1);
  }
  if (!name.empty() && name.back() == '~') {
    affine = true;
    name.pop_back();
  }
  if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw std::invalid_argument("unknown Cartan type '" + raw + "'");
  char family = name[0];
  int n = 0;
  try {
    n = std::stoi(name.substr(1));
  } catch (...) {
    throw std::invalid_argument("unknown Cartan type '" + raw + "'");
  }
  if (n < 1 || n > 30) throw std::invalid_argument("unsupported rank in '" + raw + "'");

  std::vector<int> len;
  std::vector<std::pair<int, int>> edges;
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) edges.emplace_back(i, i + 1);
  };

  if (!affine) {
    switch (family) {
      case 'A':
        len.assign(n, 2);
        chain(0, n - 1);
        break;
      case 'B':
        if (n < 2) throw std::invalid_argument("B_n needs n >= 2");
        len.assign(n, 2);
        len[n - 1] = 1;
        if (n == 2) len = {1, 2};
        chain(0, n - 1);
        break;
      case 'C':
        if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
        len.assign(n, 1);
        len[n - 1] = 2;
        chain(0, n - 1);
        break;
      case 'D':
        if (n < 4) throw std::invalid_argument("D_n needs n >= 4");
        len.assign(n, 2);
        chain(0, n - 2);
        edges.emplace_back(n - 3, n - 1);
        break;
      case 'E':
        if (n < 6 || n > 8) throw std::invalid_argument("E_n needs 6 <= n <= 8");
        len.assign(n, 2);
        edges = {{0, 2}, {1, 3}, {2, 3}};
        for (int i = 3; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        break;
      case 'F':
        if (n != 4) throw std::invalid_argument("only F4 exists");
        len = {2, 2, 1, 1};
        chain(0, 3);
        break;
      case 'G':
        if (n != 2) throw std::invalid_argument("only G2 exists");
        len = {1, 3};
        chain(0, 1);
        break;
      default:
        throw std::invalid_argument("unknown Cartan type '" + raw + "'");
    }
    return {std::string(1, family) + std::to_string(n), detail::from_dynkin(len, edges), detail::finite_names(n), false};
  }

  // affine: node 0 first
  switch (family) {
    case 'A':
      if (n == 1) {
        return {"A~1", CartanMatrix({{2, -2}, {-2, 2}}), detail::affine_names(1), true};
      }
      len.assign(n + 1, 2);
      chain(0, n);
      edges.emplace_back(n, 0);
      break;
    case 'B':
      if (n < 3) throw std::invalid_argument("B~n needs n >= 3");
      len.assign(n + 1, 2);
      len[n] = 1;
      chain(1, n);
      edges.emplace_back(0, 2);
      break;
    case 'C':
      if (n < 2) throw std::invalid_argument("C~n needs n >= 2");
      len.assign(n + 1, 1);
      len[0] = 2;
      len[n] = 2;
      chain(0, n);
      break;
    case 'D':
      if (n < 4) throw std::invalid_argument("D~n needs n >= 4");
      len.assign(n + 1, 2);
      chain(1, n - 1);
      edges.emplace_back(0, 2);
      edges.emplace_back(n - 2, n);
      break;
    case 'G':
      if (n != 2) throw std::invalid_argument("only G~2 exists");
      len = {3, 1, 3};
      edges = {{1, 2}, {0, 2}};
      break;
    default:
      throw std::invalid_argument("unknown affine type '" + raw + "'");
  }
  return {std::string(1, family) + "~" + std::to_string(n), detail::from_dynkin(len, edges), detail::affine_names(n), true};
}

}  // namespace hecke
