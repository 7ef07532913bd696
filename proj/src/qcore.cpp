#include "qfusion/qcore.hpp"

#include <cmath>

namespace qfusion {

QContext::QContext(Regime r, double gamma, double qreal, double tol)
    : regime_(r), gamma_(gamma), qreal_(qreal), tol_(tol) {
    if (tol <= 0.0) throw DomainError("tolerance must be positive");
}

QContext QContext::unit_circle(double gamma, double tol) {
    if (gamma <= 0.0 || gamma >= M_PI) throw DomainError("gamma must lie in (0, pi)");
    return QContext(Regime::UnitCircle, gamma, 0.0, tol);
}

QContext QContext::real_q(double q, double tol) {
    if (q <= 1.0) throw DomainError("real q must exceed 1");
    return QContext(Regime::RealQ, 0.0, q, tol);
}

QContext QContext::classical(double tol) {
    return QContext(Regime::Classical, 0.0, 1.0, tol);
}

Cplx QContext::q() const { return qpow(1.0); }

Cplx QContext::qpow(double x) const {
    switch (regime_) {
        case Regime::UnitCircle:
            return std::exp(Cplx(0.0, gamma_ * x));
        case Regime::RealQ:
            return Cplx(std::pow(qreal_, x), 0.0);
        case Regime::Classical:
            return Cplx(1.0, 0.0);
    }
    return Cplx(1.0, 0.0);
}

Cplx QContext::qnum(double x) const {
    switch (regime_) {
        case Regime::UnitCircle:
            // (q^x - q^{-x})/(q - q^{-1}) = sin(gamma x)/sin(gamma), real
            return Cplx(std::sin(gamma_ * x) / std::sin(gamma_), 0.0);
        case Regime::RealQ: {
            const double lq = std::log(qreal_);
            return Cplx(std::sinh(lq * x) / std::sinh(lq), 0.0);
        }
        case Regime::Classical:
            return Cplx(x, 0.0);
    }
    return Cplx(x, 0.0);
}

Cplx QContext::qfact(int n) const {
    if (n < 0) throw DomainError("qfact needs n >= 0");
    Cplx acc(1.0, 0.0);
    for (int k = 1; k <= n; ++k) acc *= qnum(static_cast<double>(k));
    return acc;
}

Cplx QContext::omega() const { return qpow(1.0) - qpow(-1.0); }

Cplx QContext::lambda() const { return Cplx(1.0, 0.0) / qnum(2.0); }

bool QContext::p_admissible(double p) const {
    switch (regime_) {
        case Regime::UnitCircle:
            return p > 1.0 && p < M_PI / gamma_ - 1.0;
        case Regime::RealQ:
        case Regime::Classical:
            return p > 1.0;
    }
    return false;
}

void QContext::require_p(double p) const {
    if (!p_admissible(p))
        throw DomainError("weight parameter p = " + std::to_string(p) +
                          " outside the admissible interval");
}

QContext QContext::with_tol(double tol) const {
    QContext c(*this);
    c.tol_ = tol;
    return c;
}

double sqrt_pos(Cplx x, const QContext& ctx) {
    if (std::abs(x.imag()) > ctx.tol() || x.real() < -ctx.tol())
        throw DomainError("sqrt_pos: radicand not real nonnegative");
    return std::sqrt(std::max(0.0, x.real()));
}

Cplx sqrtc(Cplx x) { return std::sqrt(x); }

Mat eye(Eigen::Index n) { return Mat::Identity(n, n); }

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron(const Mat& a, const Mat& b, const Mat& c) { return kron(kron(a, b), c); }

int prod(const std::vector<int>& shape) {
    int n = 1;
    for (int d : shape) n *= d;
    return n;
}

namespace {

// Row-major multi-index <-> flat index for a given shape.
int flatten(const std::vector<int>& idx, const std::vector<int>& shape) {
    int flat = 0;
    for (size_t s = 0; s < shape.size(); ++s) flat = flat * shape[s] + idx[s];
    return flat;
}

bool advance(std::vector<int>& idx, const std::vector<int>& shape) {
    for (int s = static_cast<int>(shape.size()) - 1; s >= 0; --s) {
        if (++idx[s] < shape[s]) return true;
        idx[s] = 0;
    }
    return false;
}

}  // namespace

Mat embed(const Mat& a, const std::vector<int>& slots, const std::vector<int>& shape) {
    const int total = prod(shape);
    int adim = 1;
    for (int s : slots) {
        if (s < 0 || s >= static_cast<int>(shape.size()))
            throw ShapeError("embed: slot index out of range");
        adim *= shape[s];
    }
    for (size_t i = 0; i < slots.size(); ++i)
        for (size_t j = i + 1; j < slots.size(); ++j)
            if (slots[i] == slots[j]) throw ShapeError("embed: repeated slot");
    if (a.rows() != adim || a.cols() != adim)
        throw ShapeError("embed: operator dimension does not match named slots");

    std::vector<int> sub_shape;
    for (int s : slots) sub_shape.push_back(shape[s]);

    Mat out = Mat::Zero(total, total);
    std::vector<int> row(shape.size(), 0);
    do {
        std::vector<int> arow_idx;
        for (int s : slots) arow_idx.push_back(row[s]);
        const int arow = flatten(arow_idx, sub_shape);
        const int r = flatten(row, shape);

        std::vector<int> acol_idx(slots.size(), 0);
        do {
            std::vector<int> col = row;
            for (size_t k = 0; k < slots.size(); ++k) col[slots[k]] = acol_idx[k];
            out(r, flatten(col, shape)) = a(arow, flatten(acol_idx, sub_shape));
        } while (advance(acol_idx, sub_shape));
    } while (advance(row, shape));
    return out;
}

Mat permute(const std::vector<int>& perm, const std::vector<int>& shape) {
    if (perm.size() != shape.size()) throw ShapeError("permute: rank mismatch");
    const int total = prod(shape);
    std::vector<int> out_shape(shape.size());
    for (size_t s = 0; s < shape.size(); ++s) out_shape[perm[s]] = shape[s];

    Mat out = Mat::Zero(total, total);
    std::vector<int> idx(shape.size(), 0);
    do {
        std::vector<int> tgt(shape.size(), 0);
        for (size_t s = 0; s < shape.size(); ++s) tgt[perm[s]] = idx[s];
        out(flatten(tgt, out_shape), flatten(idx, shape)) = 1.0;
    } while (advance(idx, shape));
    return out;
}

Mat swap_matrix(int dim_a, int dim_b) {
    return permute({1, 0}, {dim_a, dim_b});
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("max_abs_diff: shape mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_eq(const Mat& a, const Mat& b, const QContext& ctx, double* residual) {
    const double r = max_abs_diff(a, b);
    if (residual) *residual = r;
    return r <= ctx.tol();
}

}  // namespace qfusion
