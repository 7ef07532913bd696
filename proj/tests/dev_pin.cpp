// Scratch harness used while pinning conventions; prints residuals only.

#include "qfusion/emit.hpp"
#include "qfusion/fusion.hpp"
#include "qfusion/verify.hpp"

#include <chrono>
#include <iostream>

using namespace qfusion;

static void show(const std::string& name, double r) {
    std::printf("%-55s %.3e\n", name.c_str(), r);
}

int main(int argc, char** argv) {
    const std::string stage = argc > 1 ? argv[1] : "core";
    const QContext ctx = QContext::unit_circle(0.3, 1e-9);
    const Spin h = Spin::half(), one = Spin::one();

    if (stage == "core") {
        // R-matrix vs intertwining, both conventions visible
        for (Sign s : {Sign::Plus, Sign::Minus})
            show(std::string("intertwine fundamental ") + to_string(s),
                 intertwining_residual(fundamental_R(s, ctx), h, h, ctx));
        show("YBE (1/2,1/2,1/2)+", verify_YBE(h, h, h, Sign::Plus, ctx));
        show("YBE (1/2,1/2,1)+", verify_YBE(h, h, one, Sign::Plus, ctx));
        show("YBE (1,1,1)+", verify_YBE(one, one, one, Sign::Plus, ctx));

        // projectors
        const ProjectorFamily fam = projector_family(h, h, ctx);
        const Cplx l = ctx.lambda();
        Mat p_plus_ref = Mat::Zero(4, 4);
        p_plus_ref(0, 0) = p_plus_ref(3, 3) = 1.0;
        p_plus_ref(1, 1) = ctx.qpow(-1.0) * l;
        p_plus_ref(1, 2) = p_plus_ref(2, 1) = l;
        p_plus_ref(2, 2) = ctx.qpow(1.0) * l;
        show("P+ analytic", max_abs_diff(fam.at(Spin(2)), p_plus_ref));

        const auto maps = cg_maps(h, h, ctx);
        Mat c0_ref(1, 4);
        const Cplx sl = sqrtc(l);
        c0_ref << 0.0, sl * ctx.qpow(0.5), -sl * ctx.qpow(-0.5), 0.0;
        show("C[1/2,1/2,0]", max_abs_diff(cg_map(maps, Spin(0)).forward, c0_ref));
        Mat c1_ref(3, 4);
        c1_ref << 1, 0, 0, 0, 0, sl * ctx.qpow(-0.5), sl * ctx.qpow(0.5), 0, 0, 0, 0, 1;
        show("C[1/2,1/2,1]", max_abs_diff(cg_map(maps, one).forward, c1_ref));

        // twisted relations
        for (double p : {2.2, 3.0, 5.1}) {
            show("twisted YBE p=" + std::to_string(p),
                 verify_twisted_YBE(p, Sign::Plus, ctx));
            show("twisted YBE- p=" + std::to_string(p),
                 verify_twisted_YBE(p, Sign::Minus, ctx));
        }
        show("cartan dressing p=3", dO_relation_check(3.0, ctx));
        show("unitarity R+(3)", unitarity_residual(dynR(3.0, Sign::Plus, ctx)));
        for (Sign s : {Sign::Plus, Sign::Minus})
            show(std::string("twist exchange p=3 ") + to_string(s),
                 twist_exchange_residual(3.0, s, ctx));
        show("F via CG p=3", max_abs_diff(twist_F(3.0, ctx), F_via_CG(3.0, h, h, ctx)));
        const Mat f3 = twist_F(3.0, ctx);
        show("chi = F F* (p=3)", max_abs_diff(f3 * f3.adjoint(), chi(ctx)));
        show("chi hat = P+ - P-", max_abs_diff(chi_hat(ctx), chi_from_projectors(h, h, ctx)));
        const RibbonReport rib = ribbon_chi(ctx);
        show("ribbon chi", rib.residual);
        show("ribbon agreement", rib.agreement);
        const auto sol = solve_F_from_conditions({2.2, 3.0, 4.4}, ctx);
        double solres = 0.0;
        for (size_t k = 0; k < sol.grid.size(); ++k)
            solres = std::max(solres, max_abs_diff(sol.solved[k], twist_F(sol.grid[k], ctx)));
        show("solver vs closed form", solres);
        show("solver epsilon", std::abs(sol.epsilon - ctx.qpow(0.5)));

        // p-projectors, (7.2)/(7.3)
        const ProjectorFamily pf = p_projectors(3.0, ctx);
        Mat pp_ref = Mat::Zero(4, 4);
        const Cplx np = ctx.qnum(3.0);
        pp_ref(0, 0) = pp_ref(3, 3) = 1.0;
        pp_ref(1, 1) = l * ctx.qnum(2.0) / np;
        pp_ref(2, 2) = l * ctx.qnum(4.0) / np;
        pp_ref(1, 2) = pp_ref(2, 1) =
            l * sqrt_pos(ctx.qnum(4.0) * ctx.qnum(2.0), ctx) / np;
        show("p-projector + vs closed form", max_abs_diff(pf.at(Spin(2)), pp_ref));
        const auto pmaps = p_cg_maps(3.0, ctx);
        Mat cp0(1, 4);
        cp0 << 0.0, sl * sqrt_pos(ctx.qnum(4.0) / np, ctx),
            -sl * sqrt_pos(ctx.qnum(2.0) / np, ctx), 0.0;
        show("C_p[1/2,1/2,0]", max_abs_diff(cg_map(pmaps, Spin(0)).forward, cp0));
    }

    if (stage == "probe") {
        const double p = 3.0;
        const std::vector<int> shape{2, 2, 2};
        const PFunction r = dynR_fn(Sign::Plus, ctx);
        auto shifted = [&](int slot, double sgn, const std::vector<int>& fslots) {
            ShiftRule rule{slot, {sgn * 0.5, -sgn * 0.5}};
            return shift_eval(r, p, rule, fslots, shape);
        };
        const Mat r12_p = embed(r.eval(p), {0, 1}, shape);
        const Mat r13_p = embed(r.eval(p), {0, 2}, shape);
        const Mat r23_p = embed(r.eval(p), {1, 2}, shape);
        for (double sgn : {1.0, -1.0}) {
            const Mat lhs = r12_p * shifted(1, sgn, {0, 2}) * r23_p;
            const Mat rhs = shifted(0, sgn, {1, 2}) * r13_p * shifted(2, sgn, {0, 1});
            show("TYBE as printed, shift sign " + std::to_string(sgn),
                 max_abs_diff(lhs, rhs));
            // swapped sides of the shifted arguments
            const Mat lhs2 = shifted(0, sgn, {1, 2}) * r13_p * shifted(2, sgn, {0, 1});
            const Mat rhs2 = r12_p * shifted(1, sgn, {0, 2}) * r23_p;
            show("TYBE swapped, shift sign " + std::to_string(sgn),
                 max_abs_diff(lhs2, rhs2));
            // reversed products
            const Mat lhs3 = r23_p * shifted(1, sgn, {0, 2}) * r12_p;
            const Mat rhs3 = shifted(2, sgn, {0, 1}) * r13_p * shifted(0, sgn, {1, 2});
            show("TYBE reversed, shift sign " + std::to_string(sgn),
                 max_abs_diff(lhs3, rhs3));
        }
    }

    if (stage == "mixed") {
        for (double p : {3.4, 4.2}) {
            const auto t0 = std::chrono::steady_clock::now();
            show("mixed TYBE (1/2,1/2,1) p=" + std::to_string(p),
                 twisted_YBE_residual(h, h, one, p, Sign::Plus, ctx));
            show("mixed TYBE (1/2,1,1/2) p=" + std::to_string(p),
                 twisted_YBE_residual(h, one, h, p, Sign::Plus, ctx));
            show("fused unitarity (1/2,1)", unitarity_residual(dyn_R(h, one, p, Sign::Plus, ctx)));
            for (Sign s : {Sign::Plus, Sign::Minus})
                show(std::string("pair twist exchange (1/2,1) ") + to_string(s),
                     twist_exchange_residual(h, one, p, s, ctx));
            const auto t1 = std::chrono::steady_clock::now();
            std::printf("   [%.2f s]\n",
                        std::chrono::duration<double>(t1 - t0).count());
        }
    }

    if (stage == "model") {
        const ModelSpace space(Spin(8), ctx);
        const auto t = tensor_op_spin1(space, ctx);
        show("spin-1 generator op adjoint", adjoint_check(t, one, space, ctx, 0).max());

        const OpMatrix2 u2 = build_U_half(space, ctx);
        const std::vector<Mat> row1{u2[0], u2[1]};
        show("U rows tensor op", adjoint_check(row1, h, space, ctx, 1).max());

        const ExactSystemReport rep = verify_exact_system(space, ctx);
        show("exchange +", rep.exchange_plus);
        show("exchange -", rep.exchange_minus);
        show("weight shift", rep.weight_shift);
        show("cartan dressing", rep.cartan_dressing);
        show("normalization", rep.normalization);

        // measure the normalization constant exponent per row/block
        {
            const OpMatrix u = as_op_matrix(u2, h);
            const int n = space.dim();
            const OpMatrix lp = as_op_matrix(build_L(space, Sign::Plus, ctx), h);
            const OpMatrix lm = as_op_matrix(build_L(space, Sign::Minus, ctx), h);
            Mat lpb = Mat::Zero(2 * n, 2 * n), lmb = Mat::Zero(2 * n, 2 * n),
                ub = Mat::Zero(2 * n, 2 * n), d1 = Mat::Zero(2 * n, 2 * n);
            for (int i = 0; i < 2; ++i) {
                const double hh = i == 0 ? 0.5 : -0.5;
                for (int j = 0; j < 2; ++j) {
                    Mat e = Mat::Zero(2, 2);
                    e(i, j) = 1.0;
                    lpb += kron(e, lp.at(i, j));
                    lmb += kron(e, lm.at(i, j));
                    ub += kron(e, u.at(i, j));
                }
                Mat e = Mat::Zero(2, 2);
                e(i, i) = 1.0;
                Mat qp = Mat::Zero(n, n);
                for (int k = 0; k < n; ++k) qp(k, k) = ctx.qpow(2.0 * hh * space.p_value(k));
                d1 += kron(e, qp);
            }
            const Mat lhs = d1 * ub;
            const Mat rhs0 = ub * lpb * lmb.inverse();
            // ratio lhs/rhs0 entrywise where significant
            for (int i = 0; i < 2 * n; ++i)
                for (int j = 0; j < 2 * n; ++j)
                    if (std::abs(rhs0(i, j)) > 1e-6) {
                        const Cplx r = lhs(i, j) / rhs0(i, j);
                        const double c = std::log(r).imag() / ctx.gamma();
                        std::printf("block row %d col %d: exponent %.6f\n", i / n,
                                    j / n, c);
                        i = 2 * n;  // print a handful only
                        break;
                    }
        }

        const DetUReport det = det_U(space, ctx);
        show("det forms", det.forms_agreement);
        show("det central", det.centrality);
        for (const Cplx& s : det.block_scalars)
            std::printf("det scalar: %.12f %+.12fi\n", s.real(), s.imag());

        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const OpMatrix lop = as_op_matrix(build_L(space, s, ctx), h);
            const OpMatrix u = as_op_matrix(u2, h);
            show(std::string("generating relation ") + to_string(s),
                 generating_relation_residual(space, lop, u, h, h, s, ctx, 1));
            show(std::string("RLL ") + to_string(s), rll_residual(space, s, ctx));
        }

        const GeneratingMatrix g = fundamental_generating_matrix(space, ctx);
        const auto prec = preciseness_check(g, space, ctx, 0, 7);
        std::printf("preciseness phase: %.12f %+.12fi (spread %.3e, zeros %.3e, n=%d)\n",
                    prec.global_phase.real(), prec.global_phase.imag(), prec.phase_spread,
                    prec.zero_residual, prec.compared);
    }

    if (stage == "fusion") {
        const ModelSpace space(Spin(8), ctx);
        const GeneratingMatrix uh = fundamental_generating_matrix(space, ctx);
        const GeneratingMatrix u1 = fuse_exact_spin1(space, ctx);
        const OpMatrix closed = spin1_closed_form(space, ctx);
        double res = 0.0;
        const Mat window = space.block_window(0, 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                res = std::max(res, ((u1.ops.at(i, j) - closed.at(i, j)) * window)
                                        .cwiseAbs()
                                        .maxCoeff());
        show("spin-1 closed form", res);

        const auto prec = preciseness_check(u1, space, ctx, 0, 6);
        std::printf("spin1 preciseness phase: %.12f %+.12fi (spread %.3e, n=%d)\n",
                    prec.global_phase.real(), prec.global_phase.imag(), prec.phase_spread,
                    prec.compared);

        ExchangeCheck ex{h, uh.ops, 1, dyn_chain_ceiling_twiceJ(one, ctx)};
        const ExactSystemReport rep = verify_exact_system(space, u1.ops, one, ex, ctx, false);
        show("spin1 exchange +", rep.exchange_plus);
        show("spin1 exchange -", rep.exchange_minus);
        show("spin1 weight shift", rep.weight_shift);
        show("spin1 cartan dressing", rep.cartan_dressing);

        const SingletReport sing = singlet_component(space, ctx);
        show("singlet commutant", sing.commutant);
        std::printf("singlet/det ratio: %.12f %+.12fi (spread %.3e)\n",
                    sing.det_ratio.real(), sing.det_ratio.imag(), sing.ratio_spread);

        PFunction idf{4, 4, [](double) { return eye(4); }};
        const SingletReport bad = singlet_component_with(space, idf, 0, ctx);
        show("singlet commutant with identity twist (should fail)", bad.commutant);

        const OpMatrix lp = as_op_matrix(build_L(space, Sign::Plus, ctx), h);
        try {
            fuse_grouplike(lp, one, fundamental_R(Sign::Plus, ctx), ctx);
            std::printf("grouplike precheck for L+ unexpectedly PASSED\n");
        } catch (const RelationError& e) {
            std::printf("grouplike precheck for L+ correctly rejected\n");
        }
        const OpMatrix ginv = op_matrix_inverse(lp);
        const OpMatrix g1 = fuse_grouplike(ginv, one, fundamental_R(Sign::Plus, ctx), ctx);
        const Cplx s2 = sqrt_pos(ctx.qnum(2.0), ctx);
        show("grouplike (1,2) pattern",
             max_abs_diff(g1.at(0, 1), Mat(ctx.qpow(-0.5) * s2 * ginv.at(0, 0) * ginv.at(0, 1))));
        show("grouplike (2,2) pattern",
             max_abs_diff(g1.at(1, 1),
                          Mat(ginv.at(0, 0) * ginv.at(1, 1) +
                              ctx.qpow(-1.0) * ginv.at(0, 1) * ginv.at(1, 0))));
    }

    if (stage == "spin32") {
        const QContext wide = QContext::unit_circle(0.175, 1e-9);
        const ModelSpace space(Spin(12), wide);
        const auto t0 = std::chrono::steady_clock::now();
        const GeneratingMatrix uh = fundamental_generating_matrix(space, wide);
        const GeneratingMatrix u1 = fuse_exact_spin1(space, wide);
        const GeneratingMatrix u32 = fuse_exact_next(u1, space, wide);
        const auto t1 = std::chrono::steady_clock::now();
        std::printf("build u32: %.2f s (low_valid=%d high_valid=%d)\n",
                    std::chrono::duration<double>(t1 - t0).count(), u32.low_valid_twiceJ,
                    u32.high_valid_twiceJ);

        double adj = 0.0;
        for (int i = 0; i < 4; ++i) {
            std::vector<Mat> row;
            for (int j = 0; j < 4; ++j) row.push_back(u32.ops.at(i, j));
            adj = std::max(adj, adjoint_check(row, u32.spin, space, wide, 3,
                                              u32.low_valid_twiceJ + 3)
                                    .max());
        }
        show("spin32 adjoint", adj);

        const auto prec = preciseness_check(u32, space, wide, u32.low_valid_twiceJ + 3, 9);
        std::printf("spin32 preciseness phase: %.12f %+.12fi (spread %.3e, n=%d)\n",
                    prec.global_phase.real(), prec.global_phase.imag(), prec.phase_spread,
                    prec.compared);

        ExchangeCheck ex{h, uh.ops, 3, dyn_chain_ceiling_twiceJ(u32.spin, wide)};
        const auto t2 = std::chrono::steady_clock::now();
        const ExactSystemReport rep =
            verify_exact_system(space, u32.ops, u32.spin, ex, wide, false);
        const auto t3 = std::chrono::steady_clock::now();
        std::printf("exchange check: %.2f s\n", std::chrono::duration<double>(t3 - t2).count());
        show("spin32 exchange +", rep.exchange_plus);
        show("spin32 exchange -", rep.exchange_minus);
        show("spin32 weight shift", rep.weight_shift);
    }

    if (stage == "asym") {
        const QContext rctx = QContext::real_q(1.2, 1e-9);
        const AsymptoticsReport rep = asymptotics_check(rctx, 60.0);
        show("R+ positive limit", rep.r_plus_pos);
        show("R- positive limit", rep.r_minus_pos);
        show("R+ negative limit", rep.r_plus_neg);
        show("R- negative limit", rep.r_minus_neg);
        show("F -> 1", rep.f_pos);
        show("F -> chi", rep.f_neg);
        show("decay slope error", rep.decay_slope_error);
    }

    return 0;
}
