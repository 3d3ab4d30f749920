#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

I mod(I a, I m) {
  a %= m;
  return a < 0 ? a + m : a;
}

I ipow(I b, unsigned e) {
  I r = 1;
  while (e--) r *= b;
  return r;
}

std::optional<I> inverse_by_search(I a, I m) {
  for (I t = 0; t < m; ++t)
    if (mod(a * t, m) == 1) return t;
  return std::nullopt;
}

M mat_mul(const M& a, const M& b, I m) {
  M c(a.size(), V(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = mod(c[i][j] + a[i][k] * b[k][j], m);
  return c;
}

M transpose(const M& a) {
  if (a.empty()) return {};
  M t(a[0].size(), V(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

I bilinear(const M& g, const V& u, const V& v, I m) {
  I s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s = mod(s + mod(u[i] * g[i][j], m) * v[j], m);
  return s;
}

I quad(const M& g, const V& v, I m) { return bilinear(g, v, v, m); }

M rref_mod_p(M rows, I p) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const I inv = *inverse_by_search(rows[r][c], p);
    for (I& x : rows[r]) x = mod(x * inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const I f = mod(rows[i][c], p);
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = mod(rows[i][j] - f * rows[r][j], p);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::size_t rank_mod_p(M rows, I p) { return rref_mod_p(std::move(rows), p).size(); }

std::size_t meet_dim(const M& a, const M& b, I p) {
  M both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank_mod_p(a, p) + rank_mod_p(b, p) - rank_mod_p(both, p);
}

V pfister_diagonal(const V& slots, I m) {
  V d(std::size_t{1} << slots.size(), 1);
  for (std::size_t s = 0; s < d.size(); ++s)
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (s >> i & 1) d[s] = mod(-d[s] * slots[i], m);
  return d;
}

std::map<I, V> value_set(const V& diag, I m) {
  std::map<I, V> out;
  V x(diag.size(), 0);
  while (true) {
    I s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = mod(s + diag[i] * x[i] % m * x[i], m);
    out.emplace(s, x);
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == m) x[i++] = 0;
    if (i == x.size()) break;
  }
  return out;
}

std::uint64_t flag_chain_product(unsigned n, unsigned j, I q) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < j; ++i) r *= static_cast<std::uint64_t>((ipow(q, n - i) - 1) / (q - 1));
  return r;
}

std::set<M> all_subspaces(unsigned n, unsigned j, I p) {
  const I vectors = ipow(p, n);
  auto decode = [&](I code) {
    V v(n);
    for (unsigned i = 0; i < n; ++i, code /= p) v[i] = code % p;
    return v;
  };
  std::set<M> out;
  std::vector<I> idx(j, 0);
  while (true) {
    M rows;
    for (I c : idx) rows.push_back(decode(c));
    M r = rref_mod_p(rows, p);
    if (r.size() == j) out.insert(r);
    std::size_t i = 0;
    while (i < j && ++idx[i] == vectors) idx[i++] = 0;
    if (i == j) break;
  }
  return out;
}

std::size_t count_isotropic_subspaces(const M& gram, unsigned j, I p) {
  std::size_t count = 0;
  for (const M& basis : all_subspaces(static_cast<unsigned>(gram.size()), j, p)) {
    bool iso = true;
    for (std::size_t a = 0; a < basis.size() && iso; ++a)
      for (std::size_t b = a; b < basis.size() && iso; ++b) iso = bilinear(gram, basis[a], basis[b], p) == 0;
    count += iso;
  }
  return count;
}

M hyperbolic_gram(unsigned planes) {
  M g(2 * planes, V(2 * planes, 0));
  for (unsigned i = 0; i < planes; ++i) g[2 * i][2 * i + 1] = g[2 * i + 1][2 * i] = 1;
  return g;
}

}  // namespace oracle
