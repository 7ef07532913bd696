#include "qfusion/fusion.hpp"

namespace qfusion {

GeneratingMatrix fundamental_generating_matrix(const ModelSpace& space, const QContext& ctx) {
    GeneratingMatrix g;
    g.spin = Spin::half();
    g.ops = as_op_matrix(build_U_half(space, ctx), Spin::half());
    g.low_valid_twiceJ = 0;
    g.provenance = "monomial realization";
    return g;
}

namespace {

Mat f_of_p(const PFunction& f, int floor_twiceJ, int ceiling_twiceJ, const ModelSpace& space) {
    const int n = space.dim();
    Mat big = Mat::Zero(f.rows * n, f.rows * n);
    for (int tj = 0; tj <= space.jmax().twice(); ++tj) {
        if (tj < floor_twiceJ || tj > ceiling_twiceJ) continue;
        Mat sel = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            if (space.twiceJ(i) == tj) sel(i, i) = 1.0;
        big += kron(f.eval(tj + 1.0), sel);
    }
    return big;
}

}  // namespace

GeneratingMatrix fuse_generic(const GeneratingMatrix& ui, const GeneratingMatrix& uj,
                              const PFunction& f, int f_floor_twiceJ, Spin K,
                              const ModelSpace& space, const QContext& ctx,
                              int f_ceiling_twiceJ) {
    const Spin I = ui.spin, J = uj.spin;
    const int n = space.dim();
    if (f.rows != I.dim() * J.dim())
        throw ShapeError("fuse_generic: twist shape does not match the fused pair");

    const Mat u1 = op_in_slot1(ui.ops, J.dim());
    const Mat u2 = op_in_slot2(uj.ops, I.dim());
    const Mat fbig = f_of_p(f, f_floor_twiceJ, f_ceiling_twiceJ, space);
    const CGMap cg = cg_map(cg_maps(I, J, ctx), K);
    const Mat c = kron(cg.forward, eye(n));
    const Mat cp = kron(cg.backward, eye(n));
    const Mat big = c * fbig * u2 * u1 * cp;

    GeneratingMatrix out;
    out.spin = K;
    out.ops = OpMatrix::zero(K, n);
    for (int i = 0; i < K.dim(); ++i)
        for (int j = 0; j < K.dim(); ++j) out.ops.at(i, j) = big.block(i * n, j * n, n, n);
    out.low_valid_twiceJ = std::max({ui.low_valid_twiceJ, uj.low_valid_twiceJ, f_floor_twiceJ});
    out.high_valid_twiceJ =
        std::min({ui.high_valid_twiceJ, uj.high_valid_twiceJ, f_ceiling_twiceJ});
    out.provenance = "fused(" + to_string(I) + "," + to_string(J) + ")";
    return out;
}

GeneratingMatrix fuse_generic(const GeneratingMatrix& ui, const GeneratingMatrix& uj,
                              const Mat& f_const, Spin K, const ModelSpace& space,
                              const QContext& ctx) {
    PFunction f{static_cast<int>(f_const.rows()), static_cast<int>(f_const.cols()),
                [f_const](double) { return f_const; }};
    return fuse_generic(ui, uj, f, 0, K, space, ctx);
}

GeneratingMatrix fuse_exact_spin1(const ModelSpace& space, const QContext& ctx) {
    const GeneratingMatrix uh = fundamental_generating_matrix(space, ctx);
    PFunction f{4, 4, [ctx](double p) { return twist_F(p, ctx); }};
    GeneratingMatrix u1 = fuse_generic(uh, uh, f, 0, Spin::one(), space, ctx);
    u1.provenance = "exact fusion (1/2,1/2)";
    return u1;
}

OpMatrix spin1_closed_form(const ModelSpace& space, const QContext& ctx) {
    const OpMatrix2 u = build_U_half(space, ctx);
    const Cplx q = ctx.qpow(1.0);
    const Cplx s2 = sqrt_pos(ctx.qnum(2.0), ctx);

    // diagonal p-functions placed left of the operator products
    const Mat w_mid = diag_of_p(space, [&](double p) {
        return sqrtc(ctx.qnum(p) / ctx.qnum(p + 1.0));
    });
    const Mat w_side = diag_of_p(space, [&](double p) {
        return sqrtc(ctx.qnum(2.0) * ctx.qnum(p) / ctx.qnum(p + 1.0));
    });

    OpMatrix out = OpMatrix::zero(Spin::one(), space.dim());
    out.at(0, 0) = u[0] * u[0];
    out.at(0, 1) = ctx.qpow(-0.5) * s2 * u[0] * u[1];
    out.at(0, 2) = u[1] * u[1];
    out.at(1, 0) = w_side * u[0] * u[2];
    out.at(1, 1) = w_mid * (ctx.qpow(0.5) * u[0] * u[3] + ctx.qpow(-0.5) * u[1] * u[2]);
    out.at(1, 2) = w_side * u[1] * u[3];
    out.at(2, 0) = u[2] * u[2];
    out.at(2, 1) = ctx.qpow(-0.5) * s2 * u[2] * u[3];
    out.at(2, 2) = u[3] * u[3];
    (void)q;
    return out;
}

GeneratingMatrix fuse_exact_next(const GeneratingMatrix& uk, const ModelSpace& space,
                                 const QContext& ctx) {
    const GeneratingMatrix uh = fundamental_generating_matrix(space, ctx);
    const Spin K = uk.spin;
    const Spin next(K.twice() + 1);
    const PFunction f = F_pair_fn(Spin::half(), K, ctx);
    // The pair twist is evaluable once the fused dynamical chain stays inside
    // the admissible interval: p >= K.twice() for the (1/2, K) pair, and
    // below the unit-circle ceiling.
    const int floor = K == Spin::half() ? 0 : K.twice() - 1;
    const int ceiling = dyn_chain_ceiling_twiceJ(K, ctx);
    GeneratingMatrix out = fuse_generic(uh, uk, f, floor, next, space, ctx, ceiling);
    out.provenance = "exact fusion (1/2," + to_string(K) + ")";
    return out;
}

SingletReport singlet_component_with(const ModelSpace& space, const PFunction& f,
                                     int f_floor_twiceJ, const QContext& ctx) {
    const GeneratingMatrix uh = fundamental_generating_matrix(space, ctx);
    const GeneratingMatrix u0 =
        fuse_generic(uh, uh, f, f_floor_twiceJ, Spin(0), space, ctx);

    SingletReport rep;
    rep.op = u0.ops.at(0, 0);

    const OpMatrix2 u = build_U_half(space, ctx);
    const ElementaryOps e = elementary_ops(space, ctx);
    // The commutant property holds where both products are truncation-exact:
    // sources at least one step from the top.
    const Mat window = space.block_window(0, space.jmax().twice() - 2);
    for (const Mat& ui : u) {
        const double r = ((rep.op * ui - ui * rep.op) * window).cwiseAbs().maxCoeff();
        rep.commutant = std::max(rep.commutant, r);
    }
    rep.commutant =
        std::max(rep.commutant, max_abs_diff(rep.op * e.p, e.p * rep.op));

    const DetUReport det = det_U(space, ctx);
    Cplx ratio(0.0, 0.0);
    double spread = 0.0;
    bool first = true;
    for (int i = 0; i < space.dim(); ++i) {
        if (space.twiceJ(i) > space.jmax().twice() - 2) continue;
        const Cplx d = det.det(i, i);
        if (std::abs(d) < 1e-12) continue;
        const Cplx r = rep.op(i, i) / d;
        if (first) {
            ratio = r;
            first = false;
        }
        spread = std::max(spread, std::abs(r - ratio));
    }
    rep.det_ratio = ratio;
    rep.ratio_spread = spread;
    return rep;
}

SingletReport singlet_component(const ModelSpace& space, const QContext& ctx) {
    PFunction f{4, 4, [ctx](double p) { return twist_F(p, ctx); }};
    return singlet_component_with(space, f, 0, ctx);
}

OpMatrix op_matrix_inverse(const OpMatrix& g) {
    const int d = g.aux.dim();
    const int n = static_cast<int>(g.entries.front().rows());
    Mat big = Mat::Zero(d * n, d * n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) big.block(i * n, j * n, n, n) = g.at(i, j);
    const Mat inv = big.inverse();
    OpMatrix out = OpMatrix::zero(g.aux, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.at(i, j) = inv.block(i * n, j * n, n, n);
    return out;
}

OpMatrix fuse_grouplike(const OpMatrix& g, Spin K, const Mat& r_fund, const QContext& ctx) {
    const Spin half = g.aux;
    const int n = static_cast<int>(g.entries.front().rows());
    const Mat g1 = op_in_slot1(g, half.dim());
    const Mat g2 = op_in_slot2(g, half.dim());
    const Mat rbig = kron(r_fund, eye(n));
    const double pre = max_abs_diff(rbig * g2 * g1, g1 * g2 * rbig);
    if (pre > ctx.tol())
        throw RelationError("matrix fails the quadratic exchange precheck (residual " +
                            std::to_string(pre) + ")");

    const CGMap cg = cg_map(cg_maps(half, half, ctx), K);
    const Mat c = kron(cg.forward, eye(n));
    const Mat cp = kron(cg.backward, eye(n));
    const Mat big = c * g2 * g1 * cp;
    OpMatrix out = OpMatrix::zero(K, n);
    for (int i = 0; i < K.dim(); ++i)
        for (int j = 0; j < K.dim(); ++j) out.at(i, j) = big.block(i * n, j * n, n, n);
    return out;
}

PrecisenessReport preciseness_check(const GeneratingMatrix& u, const ModelSpace& space,
                                    const QContext& ctx, int lo_twiceJ, int hi_twiceJ) {
    const Spin K = u.spin;
    PrecisenessReport rep;
    rep.global_phase = Cplx(0.0, 0.0);
    bool have_phase = false;

    for (int src = 0; src < space.dim(); ++src) {
        const int tj = space.twiceJ(src), tm = space.twiceM(src);
        if (tj < lo_twiceJ || tj > hi_twiceJ) continue;
        const Spin js(tj);
        for (int i = 0; i < K.dim(); ++i) {
            const int tj_target = tj + static_cast<int>(std::lround(2.0 * K.weight(i)));
            if (tj_target < 0 || tj_target > space.jmax().twice()) continue;
            if (tj_target < u.low_valid_twiceJ || tj_target > u.high_valid_twiceJ) continue;
            const Spin jt(tj_target);
            // CG map of (J_src, K) onto J_target
            const auto range = clebsch_range(js, K);
            if (std::find(range.begin(), range.end(), jt) == range.end()) continue;
            const CGMap cg = cg_map(cg_maps(js, K, ctx), jt);
            for (int j = 0; j < K.dim(); ++j) {
                const int tm_target = tm + static_cast<int>(std::lround(2.0 * K.weight(j)));
                const int tgt = space.index(tj_target, tm_target);
                if (tgt < 0) continue;
                const Cplx elem = u.ops.at(i, j)(tgt, src);
                // forward row index: n with m_target = J_t - n
                const int row = (jt.twice() - tm_target) / 2;
                const int col = ((js.twice() - tm) / 2) * K.dim() + j;
                const Cplx cgval = cg.forward(row, col);
                if (std::abs(cgval) < 1e-13) {
                    rep.zero_residual = std::max(rep.zero_residual, std::abs(elem));
                    continue;
                }
                const Cplx r = elem / cgval;
                if (!have_phase) {
                    rep.global_phase = r;
                    have_phase = true;
                }
                rep.phase_spread = std::max(rep.phase_spread, std::abs(r - rep.global_phase));
                ++rep.compared;
            }
        }
    }
    return rep;
}

}  // namespace qfusion
