#pragma once

#include "qfusion/modelspace.hpp"

// Descendant generating matrices: generic fusion, the exact spin-1 matrix
// with its closed form, iterated fusion to spin 3/2, the singlet component,
// and the group-like fusion pattern.

namespace qfusion {

struct GeneratingMatrix {
    Spin spin;
    OpMatrix ops;
    // Entries with target blocks outside [low_valid, high_valid] are not
    // evaluable through the twist chain and are left at zero; checks restrict
    // their windows accordingly.
    int low_valid_twiceJ = 0;
    int high_valid_twiceJ = 1 << 20;
    std::string provenance;
};

GeneratingMatrix fundamental_generating_matrix(const ModelSpace& space, const QContext& ctx);

// U^K = C[IJK] F(p_hat) U2 U1 C'[IJK]; F blocks outside the window are zero.
GeneratingMatrix fuse_generic(const GeneratingMatrix& ui, const GeneratingMatrix& uj,
                              const PFunction& f, int f_floor_twiceJ, Spin K,
                              const ModelSpace& space, const QContext& ctx,
                              int f_ceiling_twiceJ = 1 << 20);

// Constant invariant matrix in place of the twist (used as negative control).
GeneratingMatrix fuse_generic(const GeneratingMatrix& ui, const GeneratingMatrix& uj,
                              const Mat& f_const, Spin K, const ModelSpace& space,
                              const QContext& ctx);

// Spin-1 exact matrix through the fundamental twist.
GeneratingMatrix fuse_exact_spin1(const ModelSpace& space, const QContext& ctx);

// The nine closed-form operator products the spin-1 matrix must reproduce.
OpMatrix spin1_closed_form(const ModelSpace& space, const QContext& ctx);

// Next descendant, spin K + 1/2, fused from (1/2, K).
GeneratingMatrix fuse_exact_next(const GeneratingMatrix& uk, const ModelSpace& space,
                                 const QContext& ctx);

struct SingletReport {
    Mat op;                      // the singlet component
    double commutant = 0.0;      // max |[op, U_i]|, plus [op, p]
    Cplx det_ratio;              // op / Det U
    double ratio_spread = 0.0;   // constancy of that ratio over blocks
};

// Singlet component C[.. 0] F(p_hat) U2 U1 C'[.. 0]; commutes with every
// generating-matrix entry exactly when the true twist is used.
SingletReport singlet_component(const ModelSpace& space, const QContext& ctx);
SingletReport singlet_component_with(const ModelSpace& space, const PFunction& f,
                                     int f_floor_twiceJ, const QContext& ctx);

// Fusion of a matrix obeying the quadratic exchange R g2 g1 = g1 g2 R
// (RelationError when the precheck fails): (g^K)_mn = e_m^t g2 g1 e_n.
OpMatrix fuse_grouplike(const OpMatrix& g, Spin K, const Mat& r_fund, const QContext& ctx);

// Inverse of a 2x2 operator matrix (block elimination).
OpMatrix op_matrix_inverse(const OpMatrix& g);

struct PrecisenessReport {
    Cplx global_phase;        // ratio fixed on the first nonvanishing element
    double phase_spread = 0.0;  // max deviation of element/CG from that ratio
    double zero_residual = 0.0; // elements that should vanish
    int compared = 0;
};

// Matrix elements of U^K against the Clebsch-Gordan tables, checked over the
// window lo <= 2J_src <= hi.
PrecisenessReport preciseness_check(const GeneratingMatrix& u, const ModelSpace& space,
                                    const QContext& ctx, int lo_twiceJ, int hi_twiceJ);

}  // namespace qfusion
