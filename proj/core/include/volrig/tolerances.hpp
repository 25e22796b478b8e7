#pragma once

namespace volrig {

/// Numeric gates used across the library.  All are dimensionless and are
/// applied relative to the natural scale of the data they gate (largest
/// singular value, largest coefficient, coordinate magnitude, ...), except
/// where a field name says otherwise.
struct Tolerances {
  /// Generic zero gate for determinants and residuals, relative to the
  /// k-th power of the largest matrix entry for a k x k determinant.
  double degeneracy_rel = 1e-9;
  /// General position gate: smallest/largest singular value ratio.
  double general_position = 1e-8;
  /// Residual of the defining linear system of a dependence, relative to
  /// coordinate scale times coefficient scale.
  double dependence_residual = 1e-10;
  /// Zero gate for individual dependence coefficients, relative to the
  /// largest coefficient magnitude.
  double zero_coefficient = 1e-10;
  /// Root considered "at zero" when below this times max |root|.
  double root_zero_rel = 1e-8;
  /// Spread below which the root multiset counts as one repeated root,
  /// relative to max |root|.
  double repeated_root_rel = 1e-7;
  /// Relative step used by finite-difference probes.
  double fd_step_rel = 1e-5;
  /// Gate on the linear-program optimum for the unyielding verdict.
  double lp_gate = 1e-8;
  /// On-surface residual gate for curved point configurations; points
  /// within the gate are re-projected onto the surface along their ray.
  double surface_rel = 1e-12;
  /// Allowed negative slack on kernel eigenvalues before a violation is
  /// recorded.
  double kernel_psd = 1e-10;
  /// Cosine gate below which two segments count as perpendicular.
  double perpendicularity = 1e-8;
};

}  // namespace volrig
