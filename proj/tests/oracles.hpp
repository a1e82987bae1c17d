#pragma once
// Independent reference computations for the tests: plain truncated power
// series over mpq_class, brute-force number theory, double-precision
// evaluation. Nothing here calls into the library.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Coefficients of q^0 .. q^{P-1}.
using Poly = std::vector<mpq_class>;

Poly mul(const Poly& a, const Poly& b, int P);
Poly inverse(const Poly& a, int P);
Poly power(const Poly& a, int e, int P);

// prod_{m} prod_{n >= 1} (1 - q^{m n})^{e_m}, multiplied out factor by factor.
Poly eta_product(const std::map<int, int>& exponents, int P);

long long sigma(int k, long long n);
// Kronecker symbol by counting squares modulo the odd prime factors and the
// table for (a/2).
int kronecker(long long a, long long n);
// B_k with B_1 = -1/2, from sum_{j<=k} C(k+1, j) B_j = 0.
mpq_class bernoulli(int k);
// B_{k,chi} = f^{k-1} sum_{a=1}^f chi(a) B_k(a/f).
mpq_class bernoulli_chi(int k, int f, const std::function<int(long long)>& chi);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
Poly level_one_eisenstein(int k, int P);
// (E_k(z) + N^{k/2} E_k(N z)) / (1 + N^{k/2}) for even k.
Poly symmetrization(int N, int k, int P);

// j for Gamma_0(p)^+, p in {2,3,5,7}: t + 24/(p-1) + p^{12/(p-1)}/t with
// t = (eta(z)/eta(p z))^{24/(p-1)}. Returns the coefficients of q^{-1} .. q^{P-1}.
std::vector<mpq_class> hauptmodul_eta(int p, int P);

// sum_n c_n q^{valuation + n} at z, q = e^{2 pi i z}.
std::complex<double> evaluate(const std::vector<mpq_class>& c, int valuation, std::complex<double> z);

}  // namespace oracle
