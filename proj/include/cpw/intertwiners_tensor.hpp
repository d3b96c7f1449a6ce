#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/linsolve.hpp"
#include "cpw/multipoly.hpp"
#include "cpw/special.hpp"

namespace cpw {

// Invariant generators: t = (d1 d2), b1 = d1^2, b2 = d2^2, s1 = (v d1),
// s2 = (v d2), V = v^2. Spacetime dimension 4.
inline const std::vector<std::string>& tensor_vars() {
  static const std::vector<std::string> v{"t", "b1", "b2", "s1", "s2", "V"};
  return v;
}
enum TensorVar : std::size_t { kT = 0, kB1, kB2, kS1, kS2, kV };

inline MultiPoly gen(const std::string& name) { return MultiPoly::variable(tensor_vars(), name); }

inline int v_degree(const Exponents& e) { return e[kS1] + e[kS2] + 2 * e[kV]; }
inline int derivative_degree(const Exponents& e) { return e[kS1] + e[kS2] + 2 * (e[kT] + e[kB1] + e[kB2]); }

/// Laplacian in v expressed through the generators.
inline MultiPoly laplacian_v(const MultiPoly& f) {
  auto d = [](const MultiPoly& p, const char* a) { return p.differentiate(a); };
  const MultiPoly fs1 = d(f, "s1"), fs2 = d(f, "s2"), fV = d(f, "V");
  return d(fs1, "s1") * gen("b1") + d(fs2, "s2") * gen("b2") + d(fs1, "s2") * gen("t") * Rational(2) +
         (gen("s1") * d(fs1, "V") + gen("s2") * d(fs2, "V")) * Rational(4) + gen("V") * d(fV, "V") * Rational(4) +
         fV * Rational(8);
}

/// Monomials with given v-degree and derivative degree.
inline std::vector<Exponents> tensor_monomials(int vdeg, int ddeg) {
  std::vector<Exponents> out;
  if (vdeg < 0 || ddeg < 0) return out;
  for (int i = 0; i <= vdeg; ++i)
    for (int j = 0; i + j <= vdeg; ++j) {
      if ((vdeg - i - j) % 2) continue;
      const int k = (vdeg - i - j) / 2;
      const int rest = ddeg - i - j;
      if (rest < 0 || rest % 2) continue;
      const int e = rest / 2;
      for (int a = 0; a <= e; ++a)
        for (int b = 0; a + b <= e; ++b) out.push_back({a, b, e - a - b, i, j, k});
    }
  return out;
}

/// Harmonic part [P]_0 of a polynomial homogeneous of degree vdeg in v:
/// solves laplacian(P + V Q) = 0 for Q.
inline MultiPoly harmonic_project(const MultiPoly& p, int vdeg) {
  if (p.vars() != tensor_vars()) throw std::invalid_argument("harmonic_project: expected the tensor generators");
  std::map<int, MultiPoly> by_ddeg;
  for (const auto& [e, c] : p.terms()) {
    if (v_degree(e) != vdeg) throw std::invalid_argument("harmonic_project: input not homogeneous in v");
    by_ddeg.try_emplace(derivative_degree(e), MultiPoly(tensor_vars())).first->second.add_term(e, c);
  }
  MultiPoly out(tensor_vars());
  const MultiPoly V = gen("V");
  for (const auto& [dd, part] : by_ddeg) {
    const auto qmons = tensor_monomials(vdeg - 2, dd);
    if (qmons.empty()) {
      out += part;
      continue;
    }
    std::vector<MultiPoly> images;
    std::map<Exponents, std::size_t, GrlexLess> rows;
    for (const auto& m : qmons) {
      MultiPoly mono(tensor_vars());
      mono.add_term(m, 1);
      images.push_back(laplacian_v(V * mono));
      for (const auto& [e, c] : images.back().terms()) rows.try_emplace(e, rows.size());
    }
    const MultiPoly target = laplacian_v(part);
    for (const auto& [e, c] : target.terms()) rows.try_emplace(e, rows.size());
    Matrix a(rows.size(), Vector(qmons.size(), 0));
    Vector b(rows.size(), 0);
    for (std::size_t k = 0; k < images.size(); ++k)
      for (const auto& [e, c] : images[k].terms()) a[rows.at(e)][k] = c;
    for (const auto& [e, c] : target.terms()) b[rows.at(e)] = -c;
    const auto sol = linear_solve_exact(a, b);
    if (!sol.solvable || !sol.kernel.empty()) throw ConsistencyError("harmonic projection system is singular");
    MultiPoly h = part;
    for (std::size_t k = 0; k < qmons.size(); ++k) {
      if (sol.particular[k] == 0) continue;
      MultiPoly mono(tensor_vars());
      mono.add_term(qmons[k], sol.particular[k]);
      h += V * mono;
    }
    out += h;
  }
  return out;
}

/// f_{kappa L; delta}(r) = (kappa-delta)_L 2F1(-L, L+2kappa-1; kappa-delta; (1-r)/2), in the
/// Pochhammer-quotient form sum_k (kappa-delta+k)_{L-k} (-L)_k (L+2kappa-1)_k / k! ((1-r)/2)^k,
/// which stays polynomial at the degenerate lower parameters.
inline MultiPoly f_delta(int kappa, int L, int delta) {
  if (kappa < 0 || L < 0) throw DomainError("f_delta: kappa and L must be non-negative");
  const std::vector<std::string> v{"r"};
  const MultiPoly w = (MultiPoly::constant(v, 1) - MultiPoly::variable(v, "r")) * make_rational(1, 2);
  MultiPoly out(v), wk = MultiPoly::constant(v, 1);
  for (int k = 0; k <= L; ++k) {
    const Rational c = pochhammer(kappa - delta + k, L - k) * pochhammer(-L, k) * pochhammer(L + 2 * kappa - 1, k) /
                       factorial(k);
    out += wk * c;
    wk *= w;
  }
  return out;
}

/// Raising (+1) / lowering (-1) operator in delta.
inline MultiPoly apply_A(int sign, const MultiPoly& f, int kappa, int L, int delta) {
  const Rational den = L + kappa - 1 - sign * delta;
  if (den == 0) throw DomainError("A operator undefined: L + kappa - 1 -/+ delta = 0");
  const std::vector<std::string> v{"r"};
  const MultiPoly rm = MultiPoly::variable(v, "r") - MultiPoly::constant(v, sign);
  return (rm * f.differentiate("r") + f * Rational(kappa - 1 - sign * delta)) * (1 / den);
}

/// The ODE ((1-r^2) d^2 - 2 kappa r d + 2 delta d + L(L+2kappa-1)) f.
inline MultiPoly f_delta_ode_residual(const MultiPoly& f, int kappa, int L, int delta) {
  const std::vector<std::string> v{"r"};
  const MultiPoly r = MultiPoly::variable(v, "r"), one = MultiPoly::constant(v, 1);
  const MultiPoly f1 = f.differentiate("r"), f2 = f1.differentiate("r");
  return (one - r * r) * f2 - r * f1 * Rational(2 * kappa) + f1 * Rational(2 * delta) + f * Rational(L * (L + 2 * kappa - 1));
}

struct CTable {
  int kappa = 0, L = 0;
  std::map<std::pair<int, int>, Rational> entries;
  int kernelDim = 0;
};

inline std::vector<std::pair<int, int>> c_indices(int kappa) {
  std::vector<std::pair<int, int>> idx;
  for (int m = 0; m <= kappa; ++m)
    for (int n = 0; m + n <= kappa; ++n) idx.emplace_back(m, n);
  return idx;
}

/// All instances of both recursions as rows over c_indices(kappa).
inline Matrix c_recursion_rows(int kappa, int L) {
  const auto idx = c_indices(kappa);
  std::map<std::pair<int, int>, std::size_t> pos;
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
  auto put = [&](Vector& row, int m, int n, const Rational& c) {
    auto it = pos.find({m, n});
    if (it != pos.end()) row[it->second] += c;
  };
  Matrix rows;
  for (const auto& [m, n] : idx) {
    const int j = kappa - m - n;
    Vector r1(idx.size(), 0), r2(idx.size(), 0);
    put(r1, m + 1, n, 4 * (m * m - 1));
    put(r1, m, n, 2 * j * (L + kappa - 1 - m + n));
    put(r1, m, n - 1, -j * (j + 1));
    put(r2, m, n + 1, 4 * (n * n - 1));
    put(r2, m, n, 2 * j * (L + kappa - 1 + m - n));
    put(r2, m - 1, n, -j * (j + 1));
    rows.push_back(std::move(r1));
    rows.push_back(std::move(r2));
  }
  return rows;
}

/// Solves both recursions with c_00 = seed by one global linear solve.
inline CTable solve_c_table(int kappa, int L, const Rational& seed) {
  if (kappa < 0 || L < 0) throw DomainError("solve_c_table: kappa and L must be non-negative");
  if (seed == 0) throw DomainError("solve_c_table: seed must be nonzero");
  const auto idx = c_indices(kappa);
  Matrix a = c_recursion_rows(kappa, L);
  Vector b(a.size(), 0);
  Vector pin(idx.size(), 0);
  pin[0] = 1;
  a.push_back(pin);
  b.push_back(seed);
  const auto sol = linear_solve_exact(a, b);
  if (!sol.solvable)
    throw DomainError("recursion has no solution with c_00 != 0 for kappa = " + std::to_string(kappa) +
                      ", L = " + std::to_string(L));
  CTable t{kappa, L, {}, static_cast<int>(sol.kernel.size())};
  for (std::size_t i = 0; i < idx.size(); ++i) t.entries[idx[i]] = sol.particular[i];
  return t;
}

struct TensorIntertwiner {
  int kappa = 0, L = 0;
  MultiPoly terms{tensor_vars()};
  CTable ctable;
  bool seeded = true;  // false when c_00 = 0 is forced and a kernel vector was used
};

/// (s1+s2)^L f((s1-s2)/(s1+s2)) for a polynomial f of degree <= L.
inline MultiPoly homogenize_in_s(const MultiPoly& f, int L) {
  const MultiPoly plus = gen("s1") + gen("s2"), minus = gen("s1") - gen("s2");
  MultiPoly out(tensor_vars());
  for (const auto& [e, c] : f.terms()) {
    if (e[0] > L) throw std::invalid_argument("polynomial degree exceeds L");
    out += minus.pow(e[0]) * plus.pow(L - e[0]) * c;
  }
  return out;
}

inline TensorIntertwiner assemble_with_table(int kappa, int L, const CTable& table) {
  TensorIntertwiner op{kappa, L, MultiPoly(tensor_vars()), table, true};
  for (const auto& [mn, c] : table.entries) {
    if (c == 0) continue;
    const auto [m, n] = mn;
    const MultiPoly bracket = harmonic_project(homogenize_in_s(f_delta(kappa, L, m - n), L), L);
    op.terms += gen("t").pow(kappa - m - n) * gen("b1").pow(m) * gen("b2").pow(n) * bracket * c;
  }
  return op;
}

inline TensorIntertwiner assemble_tensor_intertwiner(int kappa, int L) {
  try {
    return assemble_with_table(kappa, L, solve_c_table(kappa, L, 1));
  } catch (const DomainError&) {
    // c_00 = 0 is forced: use the first vector of the RREF kernel basis.
    const auto kernel = kernel_basis(c_recursion_rows(kappa, L), c_indices(kappa).size());
    if (kernel.empty()) throw;
    CTable t{kappa, L, {}, static_cast<int>(kernel.size()) - 1};
    const auto idx = c_indices(kappa);
    for (std::size_t i = 0; i < idx.size(); ++i) t.entries[idx[i]] = kernel[0][i];
    auto op = assemble_with_table(kappa, L, t);
    op.seeded = false;
    return op;
  }
}

/// Components of the intertwining condition along d1, d2 and v.
struct TensorPdeResidual {
  MultiPoly along1, along2, alongV;
  bool is_zero() const { return along1.is_zero() && along2.is_zero() && alongV.is_zero(); }
};

inline TensorPdeResidual tensor_pde_residual(const MultiPoly& f, const Rational& bd = 0) {
  auto d = [](const MultiPoly& p, const char* a) { return p.differentiate(a); };
  const MultiPoly t = gen("t"), b1 = gen("b1"), b2 = gen("b2"), s1 = gen("s1"), s2 = gen("s2"), V = gen("V");
  auto N1 = [&](const MultiPoly& g) { return t * d(g, "t") + b1 * d(g, "b1") * Rational(2) + s1 * d(g, "s1"); };
  auto N2 = [&](const MultiPoly& g) { return t * d(g, "t") + b2 * d(g, "b2") * Rational(2) + s2 * d(g, "s2"); };
  const MultiPoly ft = d(f, "t"), fb1 = d(f, "b1"), fb2 = d(f, "b2"), fs1 = d(f, "s1"), fs2 = d(f, "s2");
  // box_i acting on the d_i-dependence.
  const MultiPoly box1 = d(ft, "t") * b2 + d(ft, "s1") * s2 * Rational(2) + d(fs1, "s1") * V +
                         t * d(ft, "b1") * Rational(4) + s1 * d(fs1, "b1") * Rational(4) +
                         b1 * d(fb1, "b1") * Rational(4) + fb1 * Rational(8);
  const MultiPoly box2 = d(ft, "t") * b1 + d(ft, "s2") * s1 * Rational(2) + d(fs2, "s2") * V +
                         t * d(ft, "b2") * Rational(4) + s2 * d(fs2, "b2") * Rational(4) +
                         b2 * d(fb2, "b2") * Rational(4) + fb2 * Rational(8);
  TensorPdeResidual r;
  r.along1 = (N1(fb1 * Rational(2)) + fb1 * Rational(2)) * Rational(2) - box1 + N2(ft) * Rational(2) +
             (fb1 * Rational(2) - ft) * bd;
  r.along2 = (N2(fb2 * Rational(2)) + fb2 * Rational(2)) * Rational(2) - box2 + N1(ft) * Rational(2) +
             (ft - fb2 * Rational(2)) * bd;
  r.alongV = N1(fs1) * Rational(2) + N2(fs2) * Rational(2) + (fs1 - fs2) * bd;
  return r;
}

inline void require_tensor_homogeneity(const MultiPoly& f, int kappa, int L) {
  for (const auto& [e, c] : f.terms())
    if (v_degree(e) != L || derivative_degree(e) != 2 * kappa + L)
      throw std::invalid_argument("operator is not homogeneous of degree (2 kappa + L, L)");
}

inline TensorPdeResidual verify_intertwining_pde(const TensorIntertwiner& op, const Rational& d1 = 0,
                                                 const Rational& d2 = 0) {
  require_tensor_homogeneity(op.terms, op.kappa, op.L);
  return tensor_pde_residual(op.terms, d1 - d2);
}

/// Basis of harmonic solutions of the intertwining condition with the
/// (kappa, L) homogeneities.
inline std::vector<TensorIntertwiner> solve_intertwiner_space(int kappa, int L, const Rational& d1,
                                                              const Rational& d2) {
  if (kappa < 0 || L < 0) throw DomainError("kappa and L must be non-negative");
  const Rational bd = d1 - d2;
  if (!is_integer(bd) || to_long(bd) % 2 != 0)
    throw DomainError("the scalar-polynomial ansatz needs d1 - d2 even (got " + to_string(bd) +
                      "); an odd difference requires a modified ansatz");
  const auto mons = tensor_monomials(L, 2 * kappa + L);
  std::map<Exponents, std::size_t, GrlexLess> rows;
  std::vector<std::array<MultiPoly, 4>> images;
  for (const auto& m : mons) {
    MultiPoly mono(tensor_vars());
    mono.add_term(m, 1);
    const auto r = tensor_pde_residual(mono, bd);
    images.push_back({r.along1, r.along2, r.alongV, laplacian_v(mono)});
  }
  std::map<std::pair<int, Exponents>, std::size_t> row_of;
  for (const auto& img : images)
    for (int k = 0; k < 4; ++k)
      for (const auto& [e, c] : img[k].terms()) row_of.try_emplace({k, e}, row_of.size());
  Matrix a(row_of.size(), Vector(mons.size(), 0));
  for (std::size_t j = 0; j < images.size(); ++j)
    for (int k = 0; k < 4; ++k)
      for (const auto& [e, c] : images[j][k].terms()) a[row_of.at({k, e})][j] = c;
  const auto kernel = kernel_basis(a, mons.size());
  std::vector<TensorIntertwiner> out;
  for (const auto& v : kernel) {
    TensorIntertwiner op{kappa, L, MultiPoly(tensor_vars()), CTable{kappa, L, {}, 0}, false};
    for (std::size_t j = 0; j < mons.size(); ++j) op.terms.add_term(mons[j], v[j]);
    out.push_back(std::move(op));
  }
  return out;
}

/// e_{kappa L}(p, q, r) = sum c_mn p^m q^n f_{m-n}(r) as a polynomial in p, q, r.
inline MultiPoly reduced_symbol(const CTable& t) {
  const std::vector<std::string> v{"p", "q", "r"};
  MultiPoly out(v);
  for (const auto& [mn, c] : t.entries) {
    if (c == 0) continue;
    const MultiPoly f = f_delta(t.kappa, t.L, mn.first - mn.second);
    for (const auto& [e, fc] : f.terms()) out.add_term({mn.first, mn.second, e[0]}, c * fc);
  }
  return out;
}

/// Closed form for kappa = 0: sum_{p+q=L} (q)_p (p)_q/(p! q!) [(s1)^p (-s2)^q]_0.
inline MultiPoly kappa_zero_closed_form(int L) {
  MultiPoly out(tensor_vars());
  for (int p = 0; p <= L; ++p) {
    const int q = L - p;
    Rational c = pochhammer(q, p) * pochhammer(p, q) / (factorial(p) * factorial(q));
    if (c == 0) continue;
    if (q % 2) c = -c;
    out += gen("s1").pow(p) * gen("s2").pow(q) * c;
  }
  return harmonic_project(out, L);
}

}  // namespace cpw
