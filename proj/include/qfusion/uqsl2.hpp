#pragma once

#include "qfusion/qcore.hpp"

// Finite-dimensional irreps of U_q(sl(2)) and the coproduct in representation.
// Basis order inside an irrep is always m = J, J-1, ..., -J so the (1,1)
// entry of a tensor-product matrix is the highest-weight/highest-weight pair.

namespace qfusion {

class Spin {
public:
    constexpr Spin() : twice_(0) {}
    constexpr explicit Spin(int twice_j) : twice_(twice_j) {}
    static Spin half() { return Spin(1); }
    static Spin one() { return Spin(2); }

    int twice() const { return twice_; }
    int dim() const { return twice_ + 1; }
    double j() const { return 0.5 * twice_; }

    // H-eigenvalue of basis vector i (i = 0 is m = J).
    double weight(int i) const { return 0.5 * (twice_ - 2 * i); }
    std::vector<double> weights() const;

    friend bool operator==(Spin a, Spin b) { return a.twice_ == b.twice_; }
    friend bool operator!=(Spin a, Spin b) { return a.twice_ != b.twice_; }
    friend bool operator<(Spin a, Spin b) { return a.twice_ < b.twice_; }

private:
    int twice_;
};

std::string to_string(Spin s);

// K runs over |I-J| .. I+J in integer steps of twice().
std::vector<Spin> clebsch_range(Spin I, Spin J);

struct IrrepMatrices {
    Spin spin;
    Mat H;    // diag(J, J-1, ..., -J)
    Mat Xp;   // |J,m> -> sqrt([J-m][J+m+1]) |J,m+1>
    Mat Xm;   // |J,m> -> sqrt([J+m][J-m+1]) |J,m-1>
    Mat qH;   // diagonal exponential q^H
    Mat qHinv;
};

IrrepMatrices irrep(Spin J, const QContext& ctx);

enum class Gen { H, Xp, Xm, qH };

// (rho^I x rho^J) Delta(gen) with Delta(H) = H(x)1 + 1(x)H and
// Delta(X+-) = X+- (x) q^H + q^{-H} (x) X+-.  The convention is pinned by the
// intertwining tests against the fundamental R-matrices.
Mat coproduct_rep(Spin I, Spin J, Gen gen, const QContext& ctx);

// Same coproduct evaluated on explicitly given generator matrices (used for
// block-diagonal model-space representations).
Mat coproduct_of(const Mat& a_gen, const Mat& a_qh, const Mat& a_qhinv,
                 const Mat& b_gen, const Mat& b_qh, const Mat& b_qhinv, Gen gen);

// (rho^I x rho^J) Delta(C) for the Casimir C = X- X+ + [H + 1/2]^2, which
// acts as [K + 1/2]^2 on the spin-K component of the product.
Mat casimir_coproduct_rep(Spin I, Spin J, const QContext& ctx);
Cplx casimir_eigenvalue(Spin K, const QContext& ctx);

}  // namespace qfusion
