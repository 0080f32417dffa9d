#pragma once

#include <span>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

struct Atom {
  double position = 0.0;
  double mass = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite positive measure on the line: point masses plus a piecewise-constant
/// density on a uniform grid (zero outside the grid).
///
/// F(x) = mu((-inf, x]) is right-continuous. Atoms closer than step*1e-9 are
/// merged on construction.
class CumulativeMeasure {
 public:
  CumulativeMeasure() = default;
  CumulativeMeasure(std::vector<Atom> atoms, UniformGrid grid, std::vector<double> density);

  /// Zero measure on the given grid.
  static CumulativeMeasure zero(UniformGrid grid);

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] const UniformGrid& grid() const { return grid_; }
  [[nodiscard]] const std::vector<double>& density() const { return density_; }

  [[nodiscard]] double total_mass() const { return atom_mass_ + ac_mass(); }
  [[nodiscard]] double ac_mass() const { return cum_.empty() ? 0.0 : cum_.back(); }
  [[nodiscard]] double atom_mass() const { return atom_mass_; }

  /// mu((-inf, x]).
  [[nodiscard]] double F(double x) const;
  /// mu((-inf, x)).
  [[nodiscard]] double F_left(double x) const;
  /// Absolutely continuous part of F at x.
  [[nodiscard]] double F_ac(double x) const;
  /// Mass of the atom at exactly x (after merging), or 0.
  [[nodiscard]] double atom_at(double x) const;

  /// y(xi) = sup{ y : mu((-inf,y)) + y < xi }.
  ///
  /// G(x) = x + F(x) is piecewise linear between grid nodes and atoms, so the
  /// inverse is found by bisection over the breakpoint table followed by a
  /// closed-form solve inside the bracketing segment. Inside an atom plateau
  /// [x + F(x-), x + F(x)] the atom position is returned exactly.
  [[nodiscard]] double sup_inverse(double xi) const;

 private:
  void build();

  std::vector<Atom> atoms_;
  UniformGrid grid_;
  std::vector<double> density_;
  std::vector<double> cum_;  // ac mass up to node i
  std::vector<double> atom_cum_;  // atom mass of atoms[0..i)
  double atom_mass_ = 0.0;

  // Breakpoints of G, sorted, with G(b-) and G(b).
  struct Break {
    double x;
    double g_left;
    double g_right;
  };
  std::vector<Break> breaks_;
};

inline double eval_F(const CumulativeMeasure& m, double x) { return m.F(x); }
inline double eval_F_left(const CumulativeMeasure& m, double x) { return m.F_left(x); }
inline double sup_inverse(const CumulativeMeasure& m, double xi) { return m.sup_inverse(xi); }

/// Push-forward of h(xi) dxi (h per cell of xi_grid) under the nodal map y.
///
/// Cells on which y rises by at most 1e-9 target cells become atoms; other
/// cells spread their mass h*dxi uniformly over [y_i, y_{i+1}] and are
/// remapped conservatively onto target. h in [-1e-12, 0) counts as 0; more
/// negative h or a decreasing y throws.
CumulativeMeasure pushforward(std::span<const double> h, std::span<const double> y, const UniformGrid& xi_grid,
                              const UniformGrid& target);

/// Signed variant without atoms: returns per-target-cell mass of y_#(f dxi).
/// Cells where y is constant are dropped.
std::vector<double> pushforward_signed_mass(std::span<const double> f, std::span<const double> y,
                                            const UniformGrid& xi_grid, const UniformGrid& target);

}  // namespace chlab
