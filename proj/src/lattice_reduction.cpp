#include "ifbc/lattice_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace ifbc {

namespace {

using Vec = std::vector<cplx>;
using IVec = std::vector<GaussInt>;

struct GramSchmidt {
  std::vector<Vec> bstar;
  std::vector<double> bstar_norm;        // ||b*_i||^2
  std::vector<std::vector<cplx>> mu;     // mu[i][j] = b*_j^H b_i / ||b*_j||^2
};

GramSchmidt orthogonalize(const std::vector<Vec>& b) {
  const std::size_t k = b.size();
  GramSchmidt gs{std::vector<Vec>(k), std::vector<double>(k), std::vector<std::vector<cplx>>(k, std::vector<cplx>(k))};
  for (std::size_t i = 0; i < k; ++i) {
    Vec v = b[i];
    for (std::size_t j = 0; j < i; ++j) {
      const cplx m = inner(b[i], gs.bstar[j]) / gs.bstar_norm[j];
      gs.mu[i][j] = m;
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= m * gs.bstar[j][t];
    }
    gs.mu[i][i] = 1.0;
    gs.bstar_norm[i] = norm_sq(v);
    gs.bstar[i] = std::move(v);
  }
  return gs;
}

void axpy_int(Vec& y, GaussInt r, const Vec& x) {
  const cplx rc = r.to_complex();
  for (std::size_t t = 0; t < y.size(); ++t) y[t] -= rc * x[t];
}

void axpy_int(IVec& y, GaussInt r, const IVec& x) {
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = y[t] - r * x[t];
}

// Multiply by a unit so the first nonzero entry lies in {re > 0, im >= 0}.
IVec canonical_unit(IVec v) {
  auto first = std::find_if(v.begin(), v.end(), [](const GaussInt& x) { return !x.is_zero(); });
  if (first == v.end()) return v;
  const GaussInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& u : units) {
    const GaussInt lead = *first * u;
    if (lead.re > 0 && lead.im >= 0) {
      for (auto& x : v) x = x * u;
      return v;
    }
  }
  return v;
}

}  // namespace

ReducedBasis cllj_reduce(const GeneratorMatrix& gen, double delta) {
  if (!(delta > 0.5 && delta <= 1.0)) throw std::invalid_argument("LLL parameter delta must lie in (0.5, 1]");
  const CMatrix& g = gen.g;
  const std::size_t k = g.cols();
  if (k == 0 || g.rows() < k) throw std::invalid_argument("generator must have full column rank");

  std::vector<Vec> b(k);
  std::vector<IVec> u(k, IVec(k));
  for (std::size_t i = 0; i < k; ++i) {
    b[i] = g.col_vector(i);
    u[i][i] = GaussInt{1, 0};
  }

  GramSchmidt gs = orthogonalize(b);
  const double scale = *std::max_element(gs.bstar_norm.begin(), gs.bstar_norm.end());
  for (double n : gs.bstar_norm) {
    if (!(n > 1e-24 * scale)) throw std::invalid_argument("generator is rank deficient");
  }

  std::size_t pos = 1;
  int guard = 0;
  while (pos < k && guard++ < 100000) {
    for (std::size_t j = pos; j-- > 0;) {
      const cplx m = gs.mu[pos][j];
      if (std::abs(m.real()) > 0.5 || std::abs(m.imag()) > 0.5) {
        const GaussInt r = gi_round(m);
        axpy_int(b[pos], r, b[j]);
        axpy_int(u[pos], r, u[j]);
        const cplx rc = r.to_complex();
        for (std::size_t l = 0; l <= j; ++l) gs.mu[pos][l] -= rc * gs.mu[j][l];
      }
    }
    const double lhs = gs.bstar_norm[pos];
    const double rhs = (delta - std::norm(gs.mu[pos][pos - 1])) * gs.bstar_norm[pos - 1];
    if (lhs >= rhs) {
      ++pos;
    } else {
      std::swap(b[pos], b[pos - 1]);
      std::swap(u[pos], u[pos - 1]);
      gs = orthogonalize(b);
      pos = std::max<std::size_t>(pos - 1, 1);
    }
  }

  ReducedBasis out{CMatrix(g.rows(), k), IntegerCoeffMatrix(k)};
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < g.rows(); ++i) out.basis(i, j) = b[j][i];
    for (std::size_t i = 0; i < k; ++i) out.unimodular(i, j) = u[j][i];
  }
  return out;
}

double lattice_objective(const GeneratorMatrix& g, const IntegerCoeffMatrix& a) {
  return frob_norm_sq(matmul(g.g, a.to_cmatrix()));
}

IntegerCoeffMatrix shortest_independent_columns(const GeneratorMatrix& g, double delta) {
  const ReducedBasis red = cllj_reduce(g, delta);
  const std::size_t k = red.unimodular.size();

  struct Candidate {
    double norm;
    IVec coeffs;
  };
  std::vector<Candidate> cols;
  cols.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    cols.push_back({norm_sq(red.basis.col_vector(j)), canonical_unit(red.unimodular.col(j))});
  }
  std::sort(cols.begin(), cols.end(), [](const Candidate& x, const Candidate& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return std::lexicographical_compare(x.coeffs.begin(), x.coeffs.end(), y.coeffs.begin(), y.coeffs.end(),
                                        [](const GaussInt& p, const GaussInt& q) {
                                          return std::tie(p.re, p.im) < std::tie(q.re, q.im);
                                        });
  });

  IntegerCoeffMatrix a(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) a(i, j) = cols[j].coeffs[i];

  const IntegerCoeffMatrix eye = IntegerCoeffMatrix::identity(k);
  if (lattice_objective(g, eye) <= lattice_objective(g, a) * (1.0 + 1e-12)) return eye;
  return a;
}

}  // namespace ifbc
