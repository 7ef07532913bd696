#include "qfusion/uqsl2.hpp"

namespace qfusion {

std::vector<double> Spin::weights() const {
    std::vector<double> w(dim());
    for (int i = 0; i < dim(); ++i) w[i] = weight(i);
    return w;
}

std::string to_string(Spin s) {
    if (s.twice() % 2 == 0) return std::to_string(s.twice() / 2);
    return std::to_string(s.twice()) + "/2";
}

std::vector<Spin> clebsch_range(Spin I, Spin J) {
    std::vector<Spin> out;
    for (int t = std::abs(I.twice() - J.twice()); t <= I.twice() + J.twice(); t += 2)
        out.push_back(Spin(t));
    return out;
}

IrrepMatrices irrep(Spin J, const QContext& ctx) {
    const int d = J.dim();
    IrrepMatrices r;
    r.spin = J;
    r.H = Mat::Zero(d, d);
    r.Xp = Mat::Zero(d, d);
    r.Xm = Mat::Zero(d, d);
    r.qH = Mat::Zero(d, d);
    r.qHinv = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = J.weight(i);
        r.H(i, i) = m;
        r.qH(i, i) = ctx.qpow(m);
        r.qHinv(i, i) = ctx.qpow(-m);
    }
    for (int i = 0; i < d; ++i) {
        const double m = J.weight(i);
        if (i > 0) {  // raising: m -> m+1 lands on row i-1
            const Cplx c = ctx.qnum(J.j() - m) * ctx.qnum(J.j() + m + 1.0);
            r.Xp(i - 1, i) = sqrt_pos(c, ctx);
        }
        if (i + 1 < d) {  // lowering: m -> m-1 lands on row i+1
            const Cplx c = ctx.qnum(J.j() + m) * ctx.qnum(J.j() - m + 1.0);
            r.Xm(i + 1, i) = sqrt_pos(c, ctx);
        }
    }
    return r;
}

Mat coproduct_of(const Mat& a_gen, const Mat& a_qh, const Mat& a_qhinv,
                 const Mat& b_gen, const Mat& b_qh, const Mat& b_qhinv, Gen gen) {
    switch (gen) {
        case Gen::H:
            return kron(a_gen, eye(b_gen.rows())) + kron(eye(a_gen.rows()), b_gen);
        case Gen::qH:
            return kron(a_qh, b_qh);
        case Gen::Xp:
        case Gen::Xm:
            return kron(a_gen, b_qh) + kron(a_qhinv, b_gen);
    }
    throw ShapeError("coproduct_of: unknown generator");
}

namespace {
Mat pick(const IrrepMatrices& r, Gen g) {
    switch (g) {
        case Gen::H: return r.H;
        case Gen::Xp: return r.Xp;
        case Gen::Xm: return r.Xm;
        case Gen::qH: return r.qH;
    }
    throw ShapeError("unknown generator");
}
}  // namespace

Mat coproduct_rep(Spin I, Spin J, Gen gen, const QContext& ctx) {
    const IrrepMatrices a = irrep(I, ctx);
    const IrrepMatrices b = irrep(J, ctx);
    return coproduct_of(pick(a, gen), a.qH, a.qHinv, pick(b, gen), b.qH, b.qHinv, gen);
}

Mat casimir_coproduct_rep(Spin I, Spin J, const QContext& ctx) {
    const Mat xp = coproduct_rep(I, J, Gen::Xp, ctx);
    const Mat xm = coproduct_rep(I, J, Gen::Xm, ctx);
    const Mat h = coproduct_rep(I, J, Gen::H, ctx);
    Mat qh2 = Mat::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const Cplx v = ctx.qnum(h(i, i).real() + 0.5);
        qh2(i, i) = v * v;
    }
    return xm * xp + qh2;
}

Cplx casimir_eigenvalue(Spin K, const QContext& ctx) {
    const Cplx v = ctx.qnum(K.j() + 0.5);
    return v * v;
}

}  // namespace qfusion
