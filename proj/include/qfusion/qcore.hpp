#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Core scalar and dense-matrix kernel: q-numbers, branch-controlled square
// roots, Kronecker products, slot embeddings, permutations and tolerance
// based comparison. Everything downstream is parameterized by a QContext.

namespace qfusion {

using Cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Errors

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& w) : std::runtime_error(w) {}
};
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& w) : std::runtime_error(w) {}
};
struct TriangleError : std::runtime_error {
    explicit TriangleError(const std::string& w) : std::runtime_error(w) {}
};
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& w) : std::runtime_error(w) {}
};
struct CommutationError : std::runtime_error {
    explicit CommutationError(const std::string& w) : std::runtime_error(w) {}
};
struct SolveError : std::runtime_error {
    explicit SolveError(const std::string& w) : std::runtime_error(w) {}
};
struct PhaseError : std::runtime_error {
    explicit PhaseError(const std::string& w) : std::runtime_error(w) {}
};
struct BranchError : std::runtime_error {
    explicit BranchError(const std::string& w) : std::runtime_error(w) {}
};
struct ConventionError : std::runtime_error {
    explicit ConventionError(const std::string& w) : std::runtime_error(w) {}
};
struct RelationError : std::runtime_error {
    explicit RelationError(const std::string& w) : std::runtime_error(w) {}
};

// ---------------------------------------------------------------------------
// Deformation-parameter regime

enum class Regime {
    UnitCircle,  // q = exp(i*gamma), gamma real > 0
    RealQ,       // q real > 1
    Classical,   // q = 1 limit; [x] is replaced by x analytically
};

class QContext {
public:
    static QContext unit_circle(double gamma = 0.3, double tol = 1e-9);
    static QContext real_q(double q = 1.2, double tol = 1e-9);
    static QContext classical(double tol = 1e-9);

    Regime regime() const { return regime_; }
    double tol() const { return tol_; }
    double gamma() const { return gamma_; }
    double q_real() const { return qreal_; }

    Cplx q() const;        // the deformation parameter itself
    Cplx qpow(double x) const;   // q^x
    Cplx qnum(double x) const;   // [x] = (q^x - q^{-x})/(q - q^{-1})
    Cplx qfact(int n) const;     // [n]! = [1][2]...[n]
    Cplx omega() const;          // q - q^{-1}
    Cplx lambda() const;         // 1/[2]

    // Admissible p-interval: all of [p], [p-1], [p+1] strictly positive.
    // On the unit circle this is 1 < p < pi/gamma - 1.
    bool p_admissible(double p) const;
    void require_p(double p) const;  // DomainError if not admissible

    QContext with_tol(double tol) const;

private:
    QContext(Regime r, double gamma, double qreal, double tol);
    Regime regime_;
    double gamma_;
    double qreal_;
    double tol_;
};

// Principal nonnegative real square root of a (numerically) real nonnegative
// complex value.  DomainError when the radicand has a significant imaginary
// part or a negative real part: that signals p or gamma left the admissible
// range.
double sqrt_pos(Cplx x, const QContext& ctx);

// Principal complex square root.  Used on formal-limit paths (RealQ, large
// |p|) where q-numbers go negative and the per-factor continuation is the
// meaningful branch.
Cplx sqrtc(Cplx x);

// ---------------------------------------------------------------------------
// Dense-matrix helpers with tensor-slot structure

Mat eye(Eigen::Index n);
Mat kron(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b, const Mat& c);

// Place A (square, acting on the named slots in their listed order) inside
// the tensor product described by shape, identity on the other slots.
// Slots are 0-based and must be distinct.
Mat embed(const Mat& a, const std::vector<int>& slots, const std::vector<int>& shape);

// Matrix of the slot permutation perm (image convention: slot s of the input
// becomes slot perm[s] of the output) on the product space described by shape.
Mat permute(const std::vector<int>& perm, const std::vector<int>& shape);

// Swap matrix V (dim a) x W (dim b) -> W x V.  swap_matrix(d,d) is the
// permutation P with P*kron(x,y)*P = kron(y,x).
Mat swap_matrix(int dim_a, int dim_b);

double max_abs_diff(const Mat& a, const Mat& b);
bool approx_eq(const Mat& a, const Mat& b, const QContext& ctx, double* residual = nullptr);

int prod(const std::vector<int>& shape);

}  // namespace qfusion
