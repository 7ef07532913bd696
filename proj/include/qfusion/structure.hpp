#pragma once

#include "qfusion/uqsl2.hpp"

#include <optional>

// Standard (weight-independent) R-matrices, projectors, Clebsch-Gordan maps,
// fusion to higher spins, spectral decomposition and Yang-Baxter checks.

namespace qfusion {

enum class Sign { Plus, Minus };
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

// The 4x4 fundamental R-matrices.
Mat fundamental_R(Sign sign, const QContext& ctx);

// Braid form: R_hat = P * R for a pair (I, J); the result maps V^I x V^J to
// V^J x V^I (numerically a square matrix of the same size).
Mat braid_of(const Mat& r, int dim_first, int dim_second);

// M' for M in End(V^I x V^J): the matrix of the slot-permuted object,
// acting on V^J x V^I.
Mat prime_of(const Mat& m, int dim_first, int dim_second);

struct ProjectorFamily {
    Spin I, J;
    std::vector<std::pair<Spin, Mat>> members;  // ascending K

    const Mat& at(Spin K) const;
    Mat resolution() const;  // sum of all projectors
};

// q-symmetrizer / q-antisymmetrizer from the fundamental R-matrices.
ProjectorFamily projectors_from_R(const Mat& rplus, const Mat& rminus, int n,
                                  const QContext& ctx);

// Projector family for any pair with I = J obtained by eigenvalue clustering
// of the fused braid matrix, and for mixed pairs from the Casimir coproduct.
ProjectorFamily projector_family(Spin I, Spin J, const QContext& ctx);

// Spectral projectors of a diagonalizable endomorphism: cluster eigenvalues
// with the given relative gap, identify clusters with the Clebsch range of
// (I, J) by multiplicity, and form the interpolation projectors.
ProjectorFamily projectors_from_spectra(const Mat& endo, Spin I, Spin J,
                                        const QContext& ctx, double rel_gap = 1e-6);

struct CGMap {
    Spin I, J, K;
    Mat forward;   // d_K x (d_I d_J), rows are the eigenvectors transposed
    Mat backward;  // (d_I d_J) x d_K, columns are the eigenvectors
};

// One map per K in the Clebsch range, rows ordered by descending weight.
// Eigenvector phases: the top vector of each multiplet has its first
// significant component with positive real part; lower vectors follow by
// applying the coproduct lowering operator, which keeps the family coherent
// with the generator conventions.
std::vector<CGMap> cg_maps(Spin I, Spin J, const QContext& ctx);
const CGMap& cg_map(const std::vector<CGMap>& maps, Spin K);

// Bilinear-normalized, sign-fixed vector spanning the rank-1 intersection of
// a projector's range with the weight-m subspace of V^I x V^J.
Vec projector_weight_vector(const Mat& proj, Spin I, Spin J, double m, const QContext& ctx);

// Standard R-matrix for an arbitrary pair, built recursively from the
// fundamental one through fusion and slot exchange.
Mat standard_R(Spin I, Spin J, Sign sign, const QContext& ctx);

// R^{LK} from R^{LI} and R^{LJ} sandwiched between CG maps of (I, J).
Mat fuse_R(Spin L, Spin I, Spin J, Spin K, Sign sign, const QContext& ctx);

struct SpectralDecomposition {
    std::vector<std::pair<Spin, Cplx>> eigenvalues;  // per K
    double reconstruction_residual = 0.0;
};

// Eigenvalues of a braid matrix over a commuting projector family.
SpectralDecomposition spectral_decompose(const Mat& rhat, const ProjectorFamily& family,
                                         const QContext& ctx);

// Max residual of R12 R13 R23 = R23 R13 R12 on V^I x V^J x V^K.
double verify_YBE(Spin I, Spin J, Spin K, Sign sign, const QContext& ctx);

// Max residual of the intertwining property of an R-matrix on (I, J):
// braid(R) * Delta_{IJ}(gen) - Delta_{JI}(gen) * braid(R) over the generators.
double intertwining_residual(const Mat& r, Spin I, Spin J, const QContext& ctx);

}  // namespace qfusion
