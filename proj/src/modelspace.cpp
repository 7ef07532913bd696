#include "qfusion/modelspace.hpp"

namespace qfusion {

ModelSpace::ModelSpace(Spin jmax, const QContext& ctx) : jmax_(jmax) {
    (void)ctx;
    if (jmax.twice() < 2) throw DomainError("model space needs Jmax >= 1");
    dim_ = 0;
    index_.resize(jmax.twice() + 1);
    for (int tj = 0; tj <= jmax.twice(); ++tj) {
        index_[tj].assign(tj + 1, -1);
        for (int k = 0; k <= tj; ++k) {  // m = J ... -J, so 2m = tj - 2k
            labels_.push_back({tj, tj - 2 * k});
            index_[tj][k] = dim_++;
        }
    }
}

int ModelSpace::index(int twice_j, int twice_m) const {
    if (twice_j < 0 || twice_j > jmax_.twice()) return -1;
    if (std::abs(twice_m) > twice_j || (twice_j - twice_m) % 2 != 0) return -1;
    return index_[twice_j][(twice_j - twice_m) / 2];
}

Mat ModelSpace::block_window(int lo_twiceJ, int hi_twiceJ) const {
    Mat w = Mat::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        if (twiceJ(i) >= lo_twiceJ && twiceJ(i) <= hi_twiceJ) w(i, i) = 1.0;
    return w;
}

ElementaryOps elementary_ops(const ModelSpace& space, const QContext& ctx) {
    const int d = space.dim();
    ElementaryOps e;
    e.z1 = Mat::Zero(d, d);
    e.z2 = Mat::Zero(d, d);
    e.d1 = Mat::Zero(d, d);
    e.d2 = Mat::Zero(d, d);
    e.n1 = Mat::Zero(d, d);
    e.n2 = Mat::Zero(d, d);
    e.p = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const int tj = space.twiceJ(i), tm = space.twiceM(i);
        const double a = 0.5 * (tj + tm);  // z1 degree J+m
        const double b = 0.5 * (tj - tm);  // z2 degree J-m
        e.n1(i, i) = a;
        e.n2(i, i) = b;
        e.p(i, i) = tj + 1.0;
        int t;
        if ((t = space.index(tj + 1, tm + 1)) >= 0)
            e.z1(t, i) = sqrt_pos(ctx.qnum(a + 1.0), ctx);
        if ((t = space.index(tj + 1, tm - 1)) >= 0)
            e.z2(t, i) = sqrt_pos(ctx.qnum(b + 1.0), ctx);
        if ((t = space.index(tj - 1, tm - 1)) >= 0)
            e.d1(t, i) = sqrt_pos(ctx.qnum(a), ctx);
        if ((t = space.index(tj - 1, tm + 1)) >= 0)
            e.d2(t, i) = sqrt_pos(ctx.qnum(b), ctx);
    }
    return e;
}

ModelGenerators model_generators(const ModelSpace& space, const QContext& ctx) {
    const int d = space.dim();
    ModelGenerators g;
    g.H = Mat::Zero(d, d);
    g.Xp = Mat::Zero(d, d);
    g.Xm = Mat::Zero(d, d);
    g.qH = Mat::Zero(d, d);
    g.qHinv = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const int tj = space.twiceJ(i), tm = space.twiceM(i);
        const double jj = 0.5 * tj, m = 0.5 * tm;
        g.H(i, i) = m;
        g.qH(i, i) = ctx.qpow(m);
        g.qHinv(i, i) = ctx.qpow(-m);
        int t;
        if ((t = space.index(tj, tm + 2)) >= 0)
            g.Xp(t, i) = sqrt_pos(ctx.qnum(jj - m) * ctx.qnum(jj + m + 1.0), ctx);
        if ((t = space.index(tj, tm - 2)) >= 0)
            g.Xm(t, i) = sqrt_pos(ctx.qnum(jj + m) * ctx.qnum(jj - m + 1.0), ctx);
    }
    return g;
}

Mat diag_of_p(const ModelSpace& space, const std::function<Cplx(double)>& f) {
    Mat d = Mat::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) d(i, i) = f(space.p_value(i));
    return d;
}

namespace {

Mat qpow_of_diag(const Mat& diag_op, double scale, double offset, const QContext& ctx) {
    Mat out = Mat::Zero(diag_op.rows(), diag_op.cols());
    for (Eigen::Index i = 0; i < diag_op.rows(); ++i)
        out(i, i) = ctx.qpow(scale * diag_op(i, i).real() + offset);
    return out;
}

}  // namespace

OpMatrix2 build_U_half(const ModelSpace& space, const QContext& ctx) {
    const ElementaryOps e = elementary_ops(space, ctx);
    Mat inv_sqrt_p = Mat::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i)
        inv_sqrt_p(i, i) = 1.0 / sqrt_pos(ctx.qnum(space.p_value(i)), ctx);

    OpMatrix2 u;
    u[0] = e.z1 * qpow_of_diag(e.n2, 0.5, 0.0, ctx) * inv_sqrt_p;
    u[1] = e.z2 * qpow_of_diag(e.n1, -0.5, 0.0, ctx) * inv_sqrt_p;
    u[2] = -e.d2 * qpow_of_diag(e.n1, -0.5, -0.5, ctx) * inv_sqrt_p;
    u[3] = e.d1 * qpow_of_diag(e.n2, 0.5, 0.5, ctx) * inv_sqrt_p;
    return u;
}

namespace {

OpMatrix2 l_operator_of(const Mat& h_q, const Mat& h_qinv, const Mat& xp, const Mat& xm,
                        Sign sign, const QContext& ctx) {
    const Cplx w = ctx.omega();
    const int d = static_cast<int>(h_q.rows());
    OpMatrix2 l;
    if (sign == Sign::Plus) {
        l[0] = h_q;
        l[1] = w * ctx.qpow(-0.5) * xm;
        l[2] = Mat::Zero(d, d);
        l[3] = h_qinv;
    } else {
        l[0] = h_qinv;
        l[1] = Mat::Zero(d, d);
        l[2] = -w * ctx.qpow(0.5) * xp;
        l[3] = h_q;
    }
    return l;
}

}  // namespace

OpMatrix2 build_L(const ModelSpace& space, Sign sign, const QContext& ctx) {
    // Pin the convention: the same formula evaluated in the fundamental
    // representation must reproduce the fundamental R-matrix exactly.
    const IrrepMatrices f = irrep(Spin::half(), ctx);
    const OpMatrix2 lf = l_operator_of(f.qH, f.qHinv, f.Xp, f.Xm, sign, ctx);
    Mat image = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            image.block(2 * i, 2 * j, 2, 2) = lf[2 * i + j];
    if (max_abs_diff(image, fundamental_R(sign, ctx)) > ctx.tol())
        throw ConventionError("L-operator ansatz does not reproduce the fundamental R-matrix");

    const ModelGenerators g = model_generators(space, ctx);
    return l_operator_of(g.qH, g.qHinv, g.Xp, g.Xm, sign, ctx);
}

OpMatrix OpMatrix::zero(Spin aux, int dim) {
    OpMatrix m;
    m.aux = aux;
    m.entries.assign(aux.dim() * aux.dim(), Mat::Zero(dim, dim));
    return m;
}

OpMatrix as_op_matrix(const OpMatrix2& u, Spin aux) {
    if (aux.dim() != 2) throw ShapeError("as_op_matrix: 2x2 array needs a spin-1/2 label");
    OpMatrix m;
    m.aux = aux;
    m.entries = {u[0], u[1], u[2], u[3]};
    return m;
}

Mat op_in_slot1(const OpMatrix& u, int dim_second) {
    const int d = u.aux.dim();
    const int n = static_cast<int>(u.entries.front().rows());
    Mat big = Mat::Zero(d * dim_second * n, d * dim_second * n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Mat e = Mat::Zero(d, d);
            e(i, j) = 1.0;
            big += kron(e, kron(eye(dim_second), u.at(i, j)));
        }
    return big;
}

Mat op_in_slot2(const OpMatrix& u, int dim_first) {
    const int d = u.aux.dim();
    const int n = static_cast<int>(u.entries.front().rows());
    Mat big = Mat::Zero(dim_first * d * n, dim_first * d * n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Mat e = Mat::Zero(d, d);
            e(i, j) = 1.0;
            big += kron(eye(dim_first), kron(e, u.at(i, j)));
        }
    return big;
}

double shift_pattern_residual(const Mat& op, const ModelSpace& space, int d_twiceJ,
                              int d_twiceM) {
    double res = 0.0;
    for (int r = 0; r < space.dim(); ++r)
        for (int c = 0; c < space.dim(); ++c) {
            if (space.twiceJ(r) - space.twiceJ(c) == d_twiceJ &&
                space.twiceM(r) - space.twiceM(c) == d_twiceM)
                continue;
            res = std::max(res, std::abs(op(r, c)));
        }
    return res;
}

AdjointReport adjoint_check(const std::vector<Mat>& components, Spin J,
                            const ModelSpace& space, const QContext& ctx,
                            int safe_margin_twiceJ, int safe_low_twiceJ) {
    if (static_cast<int>(components.size()) != J.dim())
        throw ShapeError("adjoint_check: expected " + std::to_string(J.dim()) + " components");
    const ModelGenerators g = model_generators(space, ctx);
    const Mat window =
        space.block_window(safe_low_twiceJ, space.jmax().twice() - safe_margin_twiceJ);

    AdjointReport rep;
    for (int i = 0; i < J.dim(); ++i) {
        const double m = J.weight(i);
        const Mat& t = components[i];

        // raising component relation
        {
            Mat rhs = Mat::Zero(space.dim(), space.dim());
            if (i > 0)
                rhs = sqrt_pos(ctx.qnum(J.j() - m) * ctx.qnum(J.j() + m + 1.0), ctx) *
                      components[i - 1];
            const Mat lhs = g.Xp * t * g.qH - ctx.qpow(-1.0) * g.qH * t * g.Xp;
            rep.raising = std::max(rep.raising, ((lhs - rhs) * window).cwiseAbs().maxCoeff());
        }
        // lowering component relation
        {
            Mat rhs = Mat::Zero(space.dim(), space.dim());
            if (i + 1 < J.dim())
                rhs = sqrt_pos(ctx.qnum(J.j() + m) * ctx.qnum(J.j() - m + 1.0), ctx) *
                      components[i + 1];
            const Mat lhs = g.Xm * t * g.qH - ctx.qpow(1.0) * g.qH * t * g.Xm;
            rep.lowering = std::max(rep.lowering, ((lhs - rhs) * window).cwiseAbs().maxCoeff());
        }
        // weight relation
        {
            const Mat lhs = g.qH * t * g.qHinv;
            const Mat rhs = ctx.qpow(m) * t;
            rep.cartan = std::max(rep.cartan, ((lhs - rhs) * window).cwiseAbs().maxCoeff());
        }
    }
    return rep;
}

std::vector<Mat> tensor_op_spin1(const ModelSpace& space, const QContext& ctx) {
    const ModelGenerators g = model_generators(space, ctx);
    const Cplx inv_sqrt2 = 1.0 / sqrt_pos(ctx.qnum(2.0), ctx);
    std::vector<Mat> t(3);
    t[0] = g.qHinv * g.Xp;
    t[1] = (ctx.qpow(-1.0) * g.Xm * g.Xp - ctx.qpow(1.0) * g.Xp * g.Xm) * inv_sqrt2;
    t[2] = -g.qHinv * g.Xm;
    return t;
}

double ExactSystemReport::max() const {
    double m = exchange_plus;
    m = std::max(m, exchange_minus);
    m = std::max(m, weight_shift);
    m = std::max(m, cartan_dressing);
    m = std::max(m, normalization);
    return m;
}

namespace {

// R^{LK}(p_hat): entries are functions of the weight operator multiplied to
// the left of the U-products, realized block-diagonally over the model space.
// Blocks outside the evaluability window are left at zero; the caller
// restricts the compared columns accordingly.
Mat dyn_R_of_p(const ModelSpace& space, Spin L, Spin K, Sign sign, int floor_twiceJ,
               int ceiling_twiceJ, const QContext& ctx) {
    const int daux = L.dim() * K.dim();
    Mat big = Mat::Zero(daux * space.dim(), daux * space.dim());
    for (int tj = 0; tj <= space.jmax().twice(); ++tj) {
        if (tj < floor_twiceJ || tj > ceiling_twiceJ) continue;
        const double p = tj + 1.0;
        const Mat r = dyn_R(L, K, p, sign, ctx);
        Mat sel = Mat::Zero(space.dim(), space.dim());
        for (int i = 0; i < space.dim(); ++i)
            if (space.twiceJ(i) == tj) sel(i, i) = 1.0;
        big += kron(r, sel);
    }
    return big;
}

}  // namespace

int dyn_chain_ceiling_twiceJ(Spin K, const QContext& ctx) {
    if (ctx.regime() != Regime::UnitCircle) return 1 << 20;
    // Deepest square-root argument in the fused chain for (1/2, K) at block
    // p = 2J + 1 is p + K.twice(); keep it below pi/gamma.
    const double pmax = M_PI / ctx.gamma() - K.twice();
    return static_cast<int>(std::floor(pmax)) - 1;
}

ExactSystemReport verify_exact_system(const ModelSpace& space, const OpMatrix& u, Spin K,
                                      const ExchangeCheck& exchange, const QContext& ctx,
                                      bool include_normalization) {
    ExactSystemReport rep;
    const Spin L = exchange.L;
    const int n = space.dim();

    // Dynamical exchange with the spin-L partner, evaluated column-wise on
    // the sources whose whole shift cone stays evaluable and inside the
    // truncation.
    {
        const int reach = K.twice() + L.twice();
        const int lo = exchange.p_floor_twiceJ + reach;
        const int hi = std::min(space.jmax().twice() - reach,
                                exchange.p_ceiling_twiceJ - reach);
        std::vector<int> sources;
        for (int i = 0; i < n; ++i)
            if (space.twiceJ(i) >= lo && space.twiceJ(i) <= hi) sources.push_back(i);
        if (!sources.empty()) {
            const int daux = L.dim() * K.dim();
            const int ns = static_cast<int>(sources.size());
            const Mat u1 = op_in_slot1(exchange.partner, K.dim());
            const Mat u2 = op_in_slot2(u, L.dim());
            Mat cols = Mat::Zero(daux * n, daux * ns);
            for (int a = 0; a < daux; ++a)
                for (int k = 0; k < ns; ++k) cols(a * n + sources[k], a * ns + k) = 1.0;
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                const Mat rdyn = dyn_R_of_p(space, L, K, s, exchange.p_floor_twiceJ,
                                            exchange.p_ceiling_twiceJ, ctx);
                const Mat rconst = kron(standard_R(L, K, s, ctx), eye(n));
                const Mat lhs = rdyn * (u2 * (u1 * cols));
                const Mat rhs = u1 * (u2 * (rconst * cols));
                (s == Sign::Plus ? rep.exchange_plus : rep.exchange_minus) =
                    max_abs_diff(lhs, rhs);
            }
        }
    }

    // Shift property: p_hat U_row = U_row (p_hat + 2 h_row).
    {
        const ElementaryOps e = elementary_ops(space, ctx);
        for (int i = 0; i < K.dim(); ++i) {
            const double h = K.weight(i);
            for (int j = 0; j < K.dim(); ++j) {
                const Mat lhs = e.p * u.at(i, j);
                const Mat rhs = u.at(i, j) * (e.p + 2.0 * h * eye(n));
                rep.weight_shift = std::max(rep.weight_shift, max_abs_diff(lhs, rhs));
            }
        }
    }

    // Exchange with the Cartan dressing D = q^{2H x p_hat} in a fundamental
    // auxiliary slot; the q^{4 H x H} factor enters inverted (the sign is
    // pinned by this residual together with the explicit dynamical R-matrix).
    {
        const std::vector<int> shape{K.dim(), 2, n};
        Mat d2 = Mat::Zero(prod(shape), prod(shape));
        for (int j = 0; j < 2; ++j) {
            Mat ejj = Mat::Zero(2, 2);
            ejj(j, j) = 1.0;
            const double hj = j == 0 ? 0.5 : -0.5;
            Mat qp = Mat::Zero(n, n);
            for (int i = 0; i < n; ++i) qp(i, i) = ctx.qpow(2.0 * hj * space.p_value(i));
            d2 += kron(eye(K.dim()), kron(ejj, qp));
        }
        Mat om_inv = Mat::Zero(2 * K.dim(), 2 * K.dim());
        for (int a = 0; a < K.dim(); ++a)
            for (int j = 0; j < 2; ++j) {
                const double hj = j == 0 ? 0.5 : -0.5;
                om_inv(a * 2 + j, a * 2 + j) = ctx.qpow(-4.0 * K.weight(a) * hj);
            }
        const Mat om_big = kron(om_inv, eye(n));
        const Mat u1 = op_in_slot1(u, 2);
        rep.cartan_dressing = max_abs_diff(u1 * d2, om_big * d2 * u1);
    }

    // Normalization relation D U = U q^{C + 2H^2} L+ L-^{-1}.
    if (include_normalization) {
        if (K != Spin::half())
            throw ShapeError("normalization relation is implemented for the fundamental matrix");
        const OpMatrix lp = as_op_matrix(build_L(space, Sign::Plus, ctx), Spin::half());
        const OpMatrix lm = as_op_matrix(build_L(space, Sign::Minus, ctx), Spin::half());
        Mat lp_big = Mat::Zero(2 * n, 2 * n), lm_big = Mat::Zero(2 * n, 2 * n);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Mat e = Mat::Zero(2, 2);
                e(i, j) = 1.0;
                lp_big += kron(e, lp.at(i, j));
                lm_big += kron(e, lm.at(i, j));
            }
        Mat d1 = Mat::Zero(2 * n, 2 * n);
        Mat qc = Mat::Zero(2 * n, 2 * n);
        for (int a = 0; a < 2; ++a) {
            const double h = a == 0 ? 0.5 : -0.5;
            Mat e = Mat::Zero(2, 2);
            e(a, a) = 1.0;
            Mat qp = Mat::Zero(n, n);
            for (int i = 0; i < n; ++i) qp(i, i) = ctx.qpow(2.0 * h * space.p_value(i));
            d1 += kron(e, qp);
            const double c = 2.0 * K.j() * (K.j() + 1.0) + 2.0 * h * h;
            qc += kron(e, ctx.qpow(c) * eye(n));
        }
        Mat u_big = Mat::Zero(2 * n, 2 * n);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Mat e = Mat::Zero(2, 2);
                e(i, j) = 1.0;
                u_big += kron(e, u.at(i, j));
            }
        rep.normalization =
            max_abs_diff(d1 * u_big, u_big * qc * lp_big * lm_big.inverse());
    }
    return rep;
}

ExactSystemReport verify_exact_system(const ModelSpace& space, const QContext& ctx) {
    const OpMatrix u = as_op_matrix(build_U_half(space, ctx), Spin::half());
    ExchangeCheck ex{Spin::half(), u, 0};
    return verify_exact_system(space, u, Spin::half(), ex, ctx, true);
}

double generating_relation_residual(const ModelSpace& space, const OpMatrix& l,
                                    const OpMatrix& u, Spin Lspin, Spin Kspin, Sign sign,
                                    const QContext& ctx, int safe_margin_twiceJ,
                                    int low_cut_twiceJ) {
    const int n = space.dim();
    const Mat l1 = op_in_slot1(l, Kspin.dim());
    const Mat u2 = op_in_slot2(u, Lspin.dim());
    const Mat rbig = kron(standard_R(Lspin, Kspin, sign, ctx), eye(n));
    const Mat window =
        kron(eye(Lspin.dim() * Kspin.dim()),
             space.block_window(low_cut_twiceJ, space.jmax().twice() - safe_margin_twiceJ));
    return ((l1 * u2 - u2 * rbig * l1) * window).cwiseAbs().maxCoeff();
}

double rll_residual(const ModelSpace& space, Sign sign, const QContext& ctx) {
    const OpMatrix l = as_op_matrix(build_L(space, sign, ctx), Spin::half());
    const Mat l1 = op_in_slot1(l, 2);
    const Mat l2 = op_in_slot2(l, 2);
    const Mat rbig = kron(fundamental_R(sign, ctx), eye(space.dim()));
    return max_abs_diff(rbig * l1 * l2, l2 * l1 * rbig);
}

DetUReport det_U(const ModelSpace& space, const QContext& ctx) {
    const OpMatrix2 u = build_U_half(space, ctx);
    const int n = space.dim();

    Mat w_lo = Mat::Zero(n, n);  // sqrt([p]/[p-1]) where defined (J >= 1/2)
    Mat w_hi = Mat::Zero(n, n);  // sqrt([p]/[p+1])
    Mat mask_lo = Mat::Zero(n, n), mask_hi = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double p = space.p_value(i);
        if (space.twiceJ(i) >= 1) {
            w_lo(i, i) = sqrt_pos(ctx.qnum(p) / ctx.qnum(p - 1.0), ctx);
            mask_lo(i, i) = 1.0;
        }
        if (space.twiceJ(i) <= space.jmax().twice() - 1) {
            w_hi(i, i) = sqrt_pos(ctx.qnum(p) / ctx.qnum(p + 1.0), ctx);
            mask_hi(i, i) = 1.0;
        }
    }
    const Mat form1 = (u[0] * u[3] - ctx.qpow(1.0) * u[1] * u[2]) * w_lo;
    const Mat form2 = (ctx.qpow(1.0) * u[3] * u[0] - u[2] * u[1]) * w_hi;

    DetUReport rep;
    rep.forms_agreement = ((form1 - form2) * mask_lo * mask_hi).cwiseAbs().maxCoeff();
    rep.det = form2 * mask_hi + form1 * (eye(n) - mask_hi);

    rep.centrality = 0.0;
    const ElementaryOps e = elementary_ops(space, ctx);
    for (const Mat& ui : u)
        rep.centrality = std::max(rep.centrality, max_abs_diff(rep.det * ui, ui * rep.det));
    rep.centrality = std::max(rep.centrality, max_abs_diff(rep.det * e.p, e.p * rep.det));

    for (int tj = 0; tj <= space.jmax().twice(); ++tj) {
        const int i = space.index(tj, tj);
        rep.block_scalars.push_back(rep.det(i, i));
    }
    return rep;
}

}  // namespace qfusion
