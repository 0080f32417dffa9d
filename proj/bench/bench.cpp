// Serial vs OpenMP timings of the hot kernels, and the linear-time kernel
// sums against direct O(N^2) summation. The serial mollifier is the full-sum
// reference; the parallel one only visits cells inside the bump support.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "chlab/dynamics.hpp"
#include "chlab/kernels.hpp"
#include "chlab/mollify.hpp"
#include "chlab/reference.hpp"
#include "chlab/transforms.hpp"

using namespace chlab;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %10.3f ms   parallel %10.3f ms   speedup %5.2fx\n", name, 1e3 * serial, 1e3 * parallel,
              serial / parallel);
}

// Q at the nodes by direct summation over cells, midpoint rule per cell.
std::vector<double> direct_Q(const LagrangianState& X) {
  const std::size_t N = X.grid.cells;
  std::vector<double> mid_y(N), wdx(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double u = 0.5 * (X.U[i] + X.U[i + 1]);
    mid_y[i] = 0.5 * (X.y[i] + X.y[i + 1]);
    wdx[i] = (2.0 * u * u * X.y_xi(i) + 2.0 * X.k * X.r_bar[i] + X.h[i]) * X.grid.step;
  }
  std::vector<double> Q(N + 1);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j <= N; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += (i < j ? 1.0 : -1.0) * std::exp(-std::abs(X.y[j] - mid_y[i])) * wdx[i];
    Q[j] = -0.25 * s;
  }
  return Q;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  const auto pair = reference::peakon_antipeakon(1.0, 1.0, UniformGrid{-16.0, 0.005, 6400});

  row("mollify n = 8 (full sum)",
      seconds([&] { (void)mollify(pair, 8, Execution::serial); }, 3),
      seconds([&] { (void)mollify(pair, 8, Execution::parallel); }, 3));

  for (std::size_t cells : {4096u, 65536u}) {
    LiftOptions lo;
    lo.cells = cells;
    const auto X = lift(mollify(pair, 8), lo);
    char name[64];
    std::snprintf(name, sizeof name, "compute_Q N = %zu", cells);
    row(name, seconds([&] { (void)compute_Q(X, Execution::serial); }, 20),
        seconds([&] { (void)compute_Q(X, Execution::parallel); }, 20));
    std::snprintf(name, sizeof name, "discrete_PQ N = %zu", cells);
    row(name, seconds([&] { (void)discrete_PQ(X, Execution::serial); }, 20),
        seconds([&] { (void)discrete_PQ(X, Execution::parallel); }, 20));
    std::snprintf(name, sizeof name, "rk4_step N = %zu", cells);
    row(name, seconds([&] { (void)rk4_step(X, 1e-4, Execution::serial); }, 5),
        seconds([&] { (void)rk4_step(X, 1e-4, Execution::parallel); }, 5));
  }

  for (std::size_t cells : {1024u, 4096u, 16384u}) {
    LiftOptions lo;
    lo.cells = cells;
    const auto X = lift(mollify(pair, 8), lo);
    const double fast = seconds([&] { (void)compute_Q(X, Execution::serial); }, 10);
    const double slow = seconds([&] { (void)direct_Q(X); }, 1);
    std::printf("Q linear vs direct N = %-6zu linear %9.3f ms   direct %10.3f ms   ratio %8.1f\n", cells, 1e3 * fast,
                1e3 * slow, slow / fast);
  }
  return 0;
}
