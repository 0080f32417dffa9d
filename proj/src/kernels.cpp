#include "chlab/kernels.hpp"

#include <cmath>
#include <string>

extern "C" void dgbsv_(const int* n, const int* kl, const int* ku, const int* nrhs, double* ab, const int* ldab,
                       int* ipiv, double* b, const int* ldb, int* info);

namespace chlab {

double expm1_ratio(double d) {
  if (d < 1e-5) return 1.0 - d / 2.0 + d * d / 6.0 - d * d * d / 24.0;
  return -std::expm1(-d) / d;
}

ExpMoments exp_moments(double d) {
  ExpMoments r{};
  if (d < 1.0) {
    // M_m = sum_j (-d)^j / j! / (m+j+1), N_m = sum_j (-d)^j / (j+1)! / (m+j+2)
    for (int m = 0; m < 3; ++m) {
      double f = 1.0, g = 1.0, M = 0.0, N = 0.0;
      for (int j = 0; j < 26; ++j) {
        g = f / (j + 1.0);
        M += f / (m + j + 1.0);
        N += g / (m + j + 2.0);
        f *= -d / (j + 1.0);
      }
      r.M[m] = M;
      r.N[m] = N;
    }
    return r;
  }
  const double e = std::exp(-d);
  r.M[0] = -std::expm1(-d) / d;
  r.M[1] = (r.M[0] - e) / d;
  r.M[2] = (2.0 * r.M[1] - e) / d;
  for (int m = 0; m < 3; ++m) r.N[m] = (1.0 / (m + 1.0) - r.M[m]) / d;
  return r;
}

namespace {

struct Piece {
  double to_right, to_left, self;
};

// One linear piece: U from p to q over length len in xi, y increment d.
Piece piece(double p, double q, double len, double d, double slope, double c0) {
  const ExpMoments e = exp_moments(d);
  const double dq = q - p;
  const double right = q * q * e.M[0] - 2.0 * q * dq * e.M[1] + dq * dq * e.M[2];
  const double left = p * p * e.M[0] + 2.0 * p * dq * e.M[1] + dq * dq * e.M[2];
  const double self = (p * p + q * q) * e.N[0] - 2.0 * dq * dq * (e.N[1] - e.N[2]);
  return {len * (2.0 * slope * right + c0 * e.M[0]), len * (2.0 * slope * left + c0 * e.M[0]),
          len * (2.0 * slope * self + 2.0 * c0 * e.N[0])};
}

double c0_of(const LagrangianState& X, std::size_t i) { return 2.0 * X.k * X.r_bar[i] + X.h[i]; }

void fill_cell(const LagrangianState& X, CellTerms& t, std::size_t i) {
  const double d = X.y[i + 1] - X.y[i];
  const Piece c = piece(X.U[i], X.U[i + 1], X.grid.step, d, X.y_xi(i), c0_of(X, i));
  t.to_right[i] = c.to_right;
  t.to_left[i] = c.to_left;
  t.self[i] = c.self;
  t.decay[i] = std::exp(-d);
  t.phi1[i] = expm1_ratio(d);
}

}  // namespace

CellTerms cell_terms(const LagrangianState& X, Execution exec) {
  const std::size_t N = X.grid.cells;
  const auto n = static_cast<std::ptrdiff_t>(N);
  CellTerms t{std::vector<double>(N), std::vector<double>(N), std::vector<double>(N), std::vector<double>(N),
              std::vector<double>(N)};
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) fill_cell(X, t, static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) fill_cell(X, t, static_cast<std::size_t>(i));
  }
  return t;
}

KernelSums kernel_sums(const LagrangianState& X, const CellTerms& t) {
  const std::size_t n = X.grid.cells;
  KernelSums s{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
  for (std::size_t i = 0; i < n; ++i) s.A[i + 1] = t.decay[i] * s.A[i] + t.to_right[i];
  for (std::size_t i = n; i-- > 0;) s.B[i] = t.decay[i] * s.B[i + 1] + t.to_left[i];
  return s;
}

std::vector<double> compute_Q(const LagrangianState& X, Execution exec) {
  const KernelSums s = kernel_sums(X, cell_terms(X, exec));
  std::vector<double> Q(X.grid.nodes());
  for (std::size_t j = 0; j < Q.size(); ++j) Q[j] = 0.25 * (s.B[j] - s.A[j]);
  return Q;
}

std::vector<double> compute_P(const LagrangianState& X, Execution exec) {
  const KernelSums s = kernel_sums(X, cell_terms(X, exec));
  const double half = 0.5 * X.grid.step;
  std::vector<double> P(X.grid.cells);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const double d = 0.5 * (X.y[i + 1] - X.y[i]);
    const double m = 0.5 * (X.U[i] + X.U[i + 1]);
    const double slope = X.y_xi(i), c0 = c0_of(X, i);
    const double e = std::exp(-d);
    const double Am = e * s.A[i] + piece(X.U[i], m, half, d, slope, c0).to_right;
    const double Bm = e * s.B[i + 1] + piece(m, X.U[i + 1], half, d, slope, c0).to_left;
    P[i] = 0.25 * (Am + Bm) + 0.5 * X.k * X.k;
  }
  return P;
}

std::vector<double> compute_P_average(const LagrangianState& X, Execution exec) {
  const CellTerms t = cell_terms(X, exec);
  const KernelSums s = kernel_sums(X, t);
  std::vector<double> P(X.grid.cells);
  for (std::size_t i = 0; i < P.size(); ++i) {
    P[i] = 0.25 * ((s.A[i] + s.B[i + 1]) * t.phi1[i] + t.self[i]) + 0.5 * X.k * X.k;
  }
  return P;
}

namespace {

// Band storage for dgbsv with kl = ku = 2: A(r, c) lives at ab[c * 7 + 4 + r - c].
struct Band {
  static constexpr int kl = 2, ku = 2, ld = 2 * kl + ku + 1;
  std::vector<double> ab;
  explicit Band(std::size_t n) : ab(n * ld, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return ab[c * ld + kl + ku + r - c]; }
};

double exterior_ratio(double d) { return d > 0.0 ? d / std::expm1(d) : 1.0; }

}  // namespace

DiscretePQ discrete_PQ(const LagrangianState& X, Execution exec) {
  const std::size_t N = X.grid.cells;
  const std::size_t n = 2 * N + 1;
  const double dxi = X.grid.step;
  const double s = 0.5 * X.k * X.k;
  // Unknowns: Q_j at 2j, Pbar_i at 2i+1.
  Band A(n);
  std::vector<double> b(n, 0.0);
  auto Qc = [](std::size_t j) { return 2 * j; };
  auto Pc = [](std::size_t i) { return 2 * i + 1; };

  auto cell_row = [&](std::size_t i) {
    const double p = X.U[i], q = X.U[i + 1];
    const double e = (p * p + p * q + q * q) / 3.0;
    const double d = X.y[i + 1] - X.y[i];
    const std::size_t r = 2 * i + 1;
    A.at(r, Qc(i + 1)) = 1.0;
    A.at(r, Qc(i)) = -1.0;
    A.at(r, Pc(i)) = -d;
    b[r] = -dxi * (0.5 * X.h[i] + X.k * X.r_bar[i]) - d * (e + s);
  };
  auto node_row = [&](std::size_t j) {
    const double dl = X.y[j] - X.y[j - 1];
    const double dr = X.y[j + 1] - X.y[j];
    const std::size_t r = 2 * j;
    A.at(r, Pc(j)) = 1.0;
    A.at(r, Pc(j - 1)) = -1.0;
    A.at(r, Qc(j - 1)) = -dl / 6.0;
    A.at(r, Qc(j)) = -(dl + dr) / 3.0;
    A.at(r, Qc(j + 1)) = -dr / 6.0;
  };
  const auto cells = static_cast<std::ptrdiff_t>(N);
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < cells; ++i) cell_row(static_cast<std::size_t>(i));
    for (std::ptrdiff_t j = 1; j < cells; ++j) node_row(static_cast<std::size_t>(j));
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < cells; ++i) cell_row(static_cast<std::size_t>(i));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 1; j < cells; ++j) node_row(static_cast<std::size_t>(j));
  }
  // Outside the grid w = 0, so P - k^2/2 = +-Q decays exponentially in y.
  const double bl = exterior_ratio(X.y[1] - X.y[0]);
  A.at(0, Qc(0)) = 1.0;
  A.at(0, Pc(0)) = -bl;
  b[0] = -bl * s;
  const double br = exterior_ratio(X.y[N] - X.y[N - 1]);
  A.at(2 * N, Qc(N)) = 1.0;
  A.at(2 * N, Pc(N - 1)) = br;
  b[2 * N] = br * s;

  const int nn = static_cast<int>(n), kl = Band::kl, ku = Band::ku, nrhs = 1, ld = Band::ld;
  std::vector<int> ipiv(n);
  int info = 0;
  dgbsv_(&nn, &kl, &ku, &nrhs, A.ab.data(), &ld, ipiv.data(), b.data(), &nn, &info);
  if (info != 0) throw Error("discrete_PQ: singular system (info " + std::to_string(info) + ")");

  DiscretePQ out{std::vector<double>(N + 1), std::vector<double>(N)};
  for (std::size_t j = 0; j <= N; ++j) out.Q[j] = b[Qc(j)];
  for (std::size_t i = 0; i < N; ++i) out.P_bar[i] = b[Pc(i)];
  return out;
}

}  // namespace chlab
