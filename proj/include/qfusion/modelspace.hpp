#pragma once

#include "qfusion/dynamical.hpp"

#include <array>

// Truncated model space M = (+)_{J <= Jmax} H_J realized on q-deformed
// two-variable monomials, the exact generating matrix of spin 1/2, the
// L-operators, and the residual checks of the exact-generating-matrix system.

namespace qfusion {

class ModelSpace {
public:
    ModelSpace(Spin jmax, const QContext& ctx);

    int dim() const { return dim_; }
    Spin jmax() const { return jmax_; }

    // label i -> (2J, 2m); J ascending, m descending inside a block.
    int twiceJ(int i) const { return labels_[i].first; }
    int twiceM(int i) const { return labels_[i].second; }
    int index(int twice_j, int twice_m) const;  // -1 when absent
    double p_value(int i) const { return twiceJ(i) + 1.0; }

    // Diagonal 0/1 matrix keeping states with lo <= 2J <= hi.
    Mat block_window(int lo_twiceJ, int hi_twiceJ) const;

private:
    Spin jmax_;
    int dim_;
    std::vector<std::pair<int, int>> labels_;
    std::vector<std::vector<int>> index_;  // index_[2J][J+m] -> flat
};

struct ElementaryOps {
    Mat z1, z2;      // multiplication operators
    Mat d1, d2;      // q-difference derivatives
    Mat n1, n2;      // integer degree operators
    Mat p;           // n1 + n2 + 1, eigenvalue 2J+1
};

ElementaryOps elementary_ops(const ModelSpace& space, const QContext& ctx);

struct ModelGenerators {
    Mat H, Xp, Xm, qH, qHinv;
};

// Block-diagonal generator action, one irrep block per J.
ModelGenerators model_generators(const ModelSpace& space, const QContext& ctx);

// Diagonal matrix f(p_hat) for a scalar function of the weight operator.
Mat diag_of_p(const ModelSpace& space, const std::function<Cplx(double)>& f);

// 2x2 array of operators; [0] = U1, [1] = U2, [2] = U3, [3] = U4 row-major.
using OpMatrix2 = std::array<Mat, 4>;

// The exact generating matrix of spin 1/2 in the monomial realization.
OpMatrix2 build_U_half(const ModelSpace& space, const QContext& ctx);

// L-operators from the block-diagonal generators.  The spin-1/2 x spin-1/2
// image reproduces the fundamental R-matrices exactly (ConventionError
// otherwise).
OpMatrix2 build_L(const ModelSpace& space, Sign sign, const QContext& ctx);

// Generic d x d array of model-space operators.
struct OpMatrix {
    Spin aux;
    std::vector<Mat> entries;  // aux.dim()^2 blocks, row-major

    const Mat& at(int i, int j) const { return entries[i * aux.dim() + j]; }
    Mat& at(int i, int j) { return entries[i * aux.dim() + j]; }
    static OpMatrix zero(Spin aux, int dim);
};

OpMatrix as_op_matrix(const OpMatrix2& u, Spin aux);

// Big-matrix forms on V^A (x) V^B (x) M.
Mat op_in_slot1(const OpMatrix& u, int dim_second);
Mat op_in_slot2(const OpMatrix& u, int dim_first);

// Max |entry| of op outside the declared shift pattern (2dJ, 2dm).
double shift_pattern_residual(const Mat& op, const ModelSpace& space, int d_twiceJ,
                              int d_twiceM);

// Residuals of the component relations defining a weight-J tensor operator,
// columns restricted to source blocks with 2J_src <= 2Jmax - safe_margin.
struct AdjointReport {
    double raising = 0.0;
    double lowering = 0.0;
    double cartan = 0.0;
    double max() const { return std::max(raising, std::max(lowering, cartan)); }
};

AdjointReport adjoint_check(const std::vector<Mat>& components, Spin J,
                            const ModelSpace& space, const QContext& ctx,
                            int safe_margin_twiceJ, int safe_low_twiceJ = 0);

// The spin-1 tensor operator assembled from the generators.
std::vector<Mat> tensor_op_spin1(const ModelSpace& space, const QContext& ctx);

struct ExactSystemReport {
    double exchange_plus = 0.0;     // dynamical exchange, + sign
    double exchange_minus = 0.0;    // dynamical exchange, - sign
    double weight_shift = 0.0;      // [U_row, p] = 2h U_row
    double cartan_dressing = 0.0;   // exchange with D = q^{2H x p}
    double normalization = 0.0;     // D U = U q^{C + 2H^2} L+ L-^{-1}
    double max() const;
};

// Exchange partner options for the dynamical relation: the fused spin-K
// matrix is exchanged against a spin-L exact generating matrix.  The floor
// and ceiling delimit the model blocks on which the fused R^{LK}(p) chain is
// evaluable (square-root arguments inside the admissible window).
struct ExchangeCheck {
    Spin L;                       // partner spin
    OpMatrix partner;             // its generating matrix
    int p_floor_twiceJ = 0;       // lowest evaluable block
    int p_ceiling_twiceJ = 1 << 20;  // highest evaluable block
};

// Highest 2J at which the fused dynamical chain for the pair (1/2, K) stays
// inside the unit-circle window (no ceiling in other regimes).
int dyn_chain_ceiling_twiceJ(Spin K, const QContext& ctx);

// Full residual suite for a generating matrix of aux spin K.
// include_normalization adds the L+ L-^{-1} relation (fundamental only).
ExactSystemReport verify_exact_system(const ModelSpace& space, const OpMatrix& u, Spin K,
                                      const ExchangeCheck& exchange, const QContext& ctx,
                                      bool include_normalization);

// Convenience wrapper for the fundamental matrix.
ExactSystemReport verify_exact_system(const ModelSpace& space, const QContext& ctx);

// Residual of the tensor-operator exchange of a spin-L L-operator with a
// spin-K generating matrix: L1 U2 = U2 L1 R^{LK}.  The placement of the
// numeric R-matrix relative to L1 is pinned by this residual.
double generating_relation_residual(const ModelSpace& space, const OpMatrix& l,
                                    const OpMatrix& u, Spin Lspin, Spin Kspin, Sign sign,
                                    const QContext& ctx, int safe_margin_twiceJ,
                                    int low_cut_twiceJ = 0);

// Residual of R L1 L2 = L2 L1 R for the fundamental L-operators.
double rll_residual(const ModelSpace& space, Sign sign, const QContext& ctx);

// Both closed forms of the deformed determinant; they agree on the overlap of
// their validity windows and commute with the U-entries and p.
struct DetUReport {
    Mat det;                       // assembled central element
    double forms_agreement = 0.0;  // difference of the two closed forms
    double centrality = 0.0;       // max commutator with U entries and p
    std::vector<Cplx> block_scalars;  // value per J block
};

DetUReport det_U(const ModelSpace& space, const QContext& ctx);

}  // namespace qfusion
