#ifndef HOLOCOMP_SPIN_COMPRESSION_HPP
#define HOLOCOMP_SPIN_COMPRESSION_HPP

#include <optional>

#include "holocomp/schmidt.hpp"
#include "holocomp/spin_hamiltonian.hpp"

namespace holocomp {

/// Where and how much to compress: boundary width l, thickened boundary,
/// bulk, retained rank M and the reference bulk state.
struct CompressionPlan {
  Region region;              // A
  double epsilon = 0.0;
  double area_law_constant = 0.0;  // k, either supplied or S(A)/|∂_1 A|
  int boundary_width = 0;          // l
  Region thick_boundary;           // ∂_l A
  Region bulk;                     // A \ ∂_l A
  long long retained_rank = 0;     // M
  bool rank_capped = false;        // M hit the Schmidt rank
  bool guarantee = false;          // log_d M >= S(A)/epsilon held
  VectorXc bulk_reference;         // |∅>, unit vector on the bulk factor
};

/// Chooses l = l_A(k/ε) and M = d^{|∂_l A|} (capped at the Schmidt rank).
/// k defaults to the state's own area-law ratio S(A)/|∂_1 A|. Throws a
/// capacity error when the thickened boundary cannot reach k/ε |∂A| sites.
CompressionPlan plan_compression(const SchmidtData& sd, double epsilon,
                                 std::optional<double> k = std::nullopt);

/// Unitary on the A factor mapping the top-M Schmidt vectors onto
/// (boundary basis states) ⊗ |∅>, completed deterministically on the
/// orthogonal complement via Householder QR against the canonical basis.
class CompressionUnitary {
public:
  CompressionUnitary(MatrixXc matrix, CompressionPlan plan, MatrixXc retained_targets);

  const MatrixXc& matrix() const { return matrix_; }
  const CompressionPlan& plan() const { return plan_; }
  /// Columns t_j = |~j> ⊗ |∅>, the images of the retained Schmidt vectors.
  const MatrixXc& retained_targets() const { return targets_; }

private:
  MatrixXc matrix_;
  CompressionPlan plan_;
  MatrixXc targets_;
};

CompressionUnitary build_compression_unitary(const SchmidtData& sd,
                                             const CompressionPlan& plan);

/// U ⊗ I_{A^c} applied through index arithmetic; the global unitary is never
/// materialized.
PureState apply_on_region(const CompressionUnitary& U, const PureState& state);
PureState apply_matrix_on_region(const MatrixXc& op, const Region& A, const PureState& state);

struct RecoveryReport {
  double fidelity = 0.0;     // <ψ| U†(Tr_bulk(UρU†) ⊗ |∅><∅|)U |ψ>
  double bulk_purity = 0.0;  // tr(ρ_bulk²) after compression
};

/// Compress, discard the bulk, re-tensor |∅>, undo the unitary, and report
/// the recovery fidelity with the original state.
RecoveryReport compress_and_recover(const PureState& state, const CompressionPlan& plan,
                                    const CompressionUnitary& U);

struct BoundaryOperator {
  MatrixXc op;                      // X̃ on the thickened-boundary factor
  double commutant_residual = 0.0;  // ‖[X, P_M]‖
};

/// Pushes an operator supported on A through the compression unitary and
/// extracts its block on the retained boundary subspace.
BoundaryOperator boundary_represent(const MatrixXc& X_on_A, const SchmidtData& sd,
                                    const CompressionUnitary& U);

struct CorrelationComparison {
  double bulk_value = 0.0;      // <ψ| X_1 ... X_k |ψ>
  double boundary_value = 0.0;  // tr(X̃_1 ... X̃_k ρ̃_∂)
  double difference = 0.0;
};

/// Compares a correlation function evaluated in the bulk against its
/// boundary representation. Every operator must commute with P_M within
/// `tol` or the comparison is rejected with the measured residual.
CorrelationComparison correlation_compare(const std::vector<MatrixXc>& ops_on_A,
                                          const CompressionUnitary& U,
                                          const PureState& state, const SchmidtData& sd,
                                          double tol);

struct EnergyCheck {
  double lhs = 0.0;         // |<ψ_M|H|ψ_M> - <ψ|H|ψ>|
  double thm2_bound = 0.0;  // sqrt(ε/(1-ε)) h |∂_1 A|
  double eq_bound = 0.0;    // 2 sqrt(ε) Σ‖h_i‖
  double h_constant = 0.0;
  bool pass = false;
};

/// Energy cost of the truncation against both the boundary-local bound and
/// the extensive norm bound.
EnergyCheck energy_check(const PureState& state, const PureState& psi_M,
                         const LocalHamiltonian& H, const Region& A, double epsilon);

/// |<ψ| P_M [H_A, P_M] |ψ>| evaluated densely on the A factor; vanishes
/// because P_M projects onto eigenvectors of the reduced state.
double interior_commutator_expectation(const SchmidtData& sd, const LocalHamiltonian& H,
                                       long long M);

}  // namespace holocomp

#endif
