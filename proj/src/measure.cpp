#include "chlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chlab {

CumulativeMeasure::CumulativeMeasure(std::vector<Atom> atoms, UniformGrid grid, std::vector<double> density)
    : atoms_(std::move(atoms)), grid_(grid), density_(std::move(density)) {
  build();
}

CumulativeMeasure CumulativeMeasure::zero(UniformGrid grid) {
  return CumulativeMeasure({}, grid, std::vector<double>(grid.cells, 0.0));
}

void CumulativeMeasure::build() {
  grid_.check();
  if (density_.size() != grid_.cells) {
    throw Error("measure density has " + std::to_string(density_.size()) + " cells, grid has " +
                std::to_string(grid_.cells));
  }
  for (std::size_t i = 0; i < density_.size(); ++i) {
    if (!(density_[i] >= 0.0) || !std::isfinite(density_[i])) {
      throw Error("measure density must be finite and nonnegative (cell " + std::to_string(i) + ")");
    }
  }
  for (const auto& a : atoms_) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.position)) {
      throw Error("atom masses must be positive and finite");
    }
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.position < b.position; });
  const double merge_tol = grid_.step * 1e-9;
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    if (!merged.empty() && a.position - merged.back().position < merge_tol) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  atoms_ = std::move(merged);

  cum_.assign(grid_.nodes(), 0.0);
  // extended-precision running sum: the inverse of x + F feeds slopes
  // divided by the cell size, so accumulated rounding gets amplified
  long double acc = 0.0L;
  for (std::size_t i = 0; i < grid_.cells; ++i) {
    acc += static_cast<long double>(density_[i]) * grid_.step;
    cum_[i + 1] = static_cast<double>(acc);
  }
  atom_cum_.assign(atoms_.size() + 1, 0.0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) atom_cum_[i + 1] = atom_cum_[i] + atoms_[i].mass;
  atom_mass_ = atom_cum_.back();

  std::vector<double> xs;
  xs.reserve(grid_.nodes() + atoms_.size());
  for (std::size_t i = 0; i < grid_.nodes(); ++i) xs.push_back(grid_.node(i));
  for (const auto& a : atoms_) xs.push_back(a.position);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  breaks_.clear();
  breaks_.reserve(xs.size());
  for (double x : xs) breaks_.push_back({x, x + F_left(x), x + F(x)});
}

double CumulativeMeasure::F_ac(double x) const {
  if (x <= grid_.origin) return 0.0;
  if (x >= grid_.end()) return cum_.back();
  const std::size_t i = grid_.cell_of(x);
  return cum_[i] + density_[i] * (x - grid_.node(i));
}

double CumulativeMeasure::F(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                   [](double v, const Atom& a) { return v < a.position; });
  return atom_cum_[static_cast<std::size_t>(it - atoms_.begin())] + F_ac(x);
}

double CumulativeMeasure::F_left(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, double v) { return a.position < v; });
  return atom_cum_[static_cast<std::size_t>(it - atoms_.begin())] + F_ac(x);
}

double CumulativeMeasure::atom_at(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, double v) { return a.position < v; });
  if (it != atoms_.end() && it->position == x) return it->mass;
  return 0.0;
}

double CumulativeMeasure::sup_inverse(double xi) const {
  // First breakpoint whose right value G(b) reaches xi.
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), xi,
                                   [](const Break& b, double v) { return b.g_right < v; });
  if (it == breaks_.end()) {
    const Break& last = breaks_.back();
    return last.x + (xi - last.g_right);
  }
  if (it->g_left <= xi) return it->x;  // on the plateau of an atom, or exactly at a node
  if (it == breaks_.begin()) return it->x - (it->g_left - xi);
  const Break& prev = *(it - 1);
  const double mid = 0.5 * (prev.x + it->x);
  double d = 0.0;
  if (mid > grid_.origin && mid < grid_.end()) d = density_[grid_.cell_of(mid)];
  const double y = prev.x + (xi - prev.g_right) / (1.0 + d);
  return std::clamp(y, prev.x, it->x);
}

namespace {

void check_map(std::span<const double> f, std::span<const double> y, const UniformGrid& xi_grid) {
  if (f.size() != xi_grid.cells || y.size() != xi_grid.nodes()) {
    throw Error("pushforward: size mismatch between cell data, nodal map and grid");
  }
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (y[i + 1] < y[i]) throw Error("pushforward: map must be nondecreasing (cell " + std::to_string(i) + ")");
  }
}

// Spreads mass uniformly over [a,b] into target cells; spill beyond the grid
// lands in the boundary cells. The rounding remainder goes to the largest
// share so the total is preserved and no share changes sign.
void spread(double mass, double a, double b, const UniformGrid& target, std::vector<double>& cell_mass) {
  const double len = b - a;
  const std::size_t first = target.cell_of(a);
  const std::size_t last = target.cell_of(b);
  if (first == last) {
    cell_mass[first] += mass;
    return;
  }
  double assigned = 0.0, biggest = -1.0;
  std::size_t big = first;
  for (std::size_t c = first; c <= last; ++c) {
    const double lo = c == first ? a : target.node(c);
    const double hi = c == last ? b : target.node(c + 1);
    const double part = mass * (std::max(hi - lo, 0.0) / len);
    cell_mass[c] += part;
    assigned += part;
    if (std::abs(part) > biggest) {
      biggest = std::abs(part);
      big = c;
    }
  }
  cell_mass[big] += mass - assigned;
}

}  // namespace

CumulativeMeasure pushforward(std::span<const double> h, std::span<const double> y, const UniformGrid& xi_grid,
                              const UniformGrid& target) {
  check_map(h, y, xi_grid);
  target.check();
  std::vector<double> cell_mass(target.cells, 0.0);
  std::vector<Atom> atoms;
  // a cell this thin is a plateau up to the rounding of relabelings
  const double flat = target.step * 1e-9;
  for (std::size_t i = 0; i < h.size(); ++i) {
    // evolved states carry h of order -1e-17 where the density vanishes
    if (h[i] < -1e-12) throw Error("pushforward: negative density in cell " + std::to_string(i));
    const double mass = std::max(h[i], 0.0) * xi_grid.step;
    if (mass == 0.0) continue;
    if (y[i + 1] - y[i] <= flat) {
      atoms.push_back({y[i], mass});
    } else {
      spread(mass, y[i], y[i + 1], target, cell_mass);
    }
  }
  for (auto& m : cell_mass) m /= target.step;
  return CumulativeMeasure(std::move(atoms), target, std::move(cell_mass));
}

std::vector<double> pushforward_signed_mass(std::span<const double> f, std::span<const double> y,
                                            const UniformGrid& xi_grid, const UniformGrid& target) {
  check_map(f, y, xi_grid);
  target.check();
  std::vector<double> cell_mass(target.cells, 0.0);
  const double flat = target.step * 1e-9;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double mass = f[i] * xi_grid.step;
    if (mass == 0.0 || y[i + 1] - y[i] <= flat) continue;
    spread(mass, y[i], y[i + 1], target, cell_mass);
  }
  return cell_mass;
}

}  // namespace chlab
