#include "qfusion/verify.hpp"

#include "qfusion/fusion.hpp"

#include <cstdio>
#include <sstream>

namespace qfusion {

QContext RunConfig::context() const {
    switch (regime) {
        case Regime::UnitCircle: return QContext::unit_circle(gamma, tol);
        case Regime::RealQ: return QContext::real_q(q, tol);
        case Regime::Classical: return QContext::classical(tol);
    }
    throw DomainError("unknown regime");
}

bool Report::all_pass() const {
    if (!errors.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

struct Collector {
    Report& rep;
    double tol;

    void add(const std::string& name, double residual, double threshold) {
        rep.checks.push_back({name, residual, threshold, residual <= threshold});
    }
    void add(const std::string& name, double residual) { add(name, residual, tol); }
};

std::string ptag(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

// ---------------------------------------------------------------------------

void suite_hopf(Collector& col, const QContext& ctx) {
    const Spin h = Spin::half(), one = Spin::one(), threehalf(3);

    for (Sign s : {Sign::Plus, Sign::Minus}) {
        col.add(std::string("yang_baxter(1/2,1/2,1/2)") + to_string(s),
                verify_YBE(h, h, h, s, ctx));
        col.add(std::string("yang_baxter(1/2,1/2,1)") + to_string(s),
                verify_YBE(h, h, one, s, ctx));
    }
    col.add("r_minus_is_primed_inverse",
            max_abs_diff(fundamental_R(Sign::Minus, ctx),
                         Mat(prime_of(fundamental_R(Sign::Plus, ctx), 2, 2).inverse())));

    for (auto [i, j] : std::vector<std::pair<Spin, Spin>>{{h, h}, {h, one}, {one, h}, {one, one}})
        for (Sign s : {Sign::Plus, Sign::Minus})
            col.add("intertwining(" + to_string(i) + "," + to_string(j) + ")" + to_string(s),
                    intertwining_residual(standard_R(i, j, s, ctx), i, j, ctx));

    for (auto [i, j] : std::vector<std::pair<Spin, Spin>>{{h, h}, {h, one}, {one, one}}) {
        const ProjectorFamily fam = projector_family(i, j, ctx);
        const std::string tag = "(" + to_string(i) + "," + to_string(j) + ")";
        double idem = 0.0, ortho = 0.0, rank = 0.0;
        for (const auto& [k, pk] : fam.members) {
            idem = std::max(idem, max_abs_diff(pk * pk, pk));
            rank = std::max(rank, std::abs(pk.trace() - Cplx(k.dim(), 0.0)));
            for (const auto& [l, pl] : fam.members)
                if (!(k == l))
                    ortho = std::max(ortho, (pk * pl).cwiseAbs().maxCoeff());
        }
        col.add("projector_idempotence" + tag, idem);
        col.add("projector_orthogonality" + tag, ortho);
        col.add("projector_completeness" + tag,
                max_abs_diff(fam.resolution(), eye(i.dim() * j.dim())));
        col.add("projector_ranks" + tag, rank);

        const auto maps = cg_maps(i, j, ctx);
        double iso = 0.0, inter = 0.0;
        Mat complete = Mat::Zero(i.dim() * j.dim(), i.dim() * j.dim());
        for (const auto& m : maps) {
            iso = std::max(iso, max_abs_diff(m.forward * m.backward, eye(m.K.dim())));
            complete += m.backward * m.forward;
            for (Gen g : {Gen::H, Gen::Xp, Gen::Xm}) {
                const Mat lhs = m.forward * coproduct_rep(i, j, g, ctx) * m.backward;
                const Mat rhs = [&] {
                    const IrrepMatrices r = irrep(m.K, ctx);
                    switch (g) {
                        case Gen::H: return r.H;
                        case Gen::Xp: return r.Xp;
                        case Gen::Xm: return r.Xm;
                        default: return r.qH;
                    }
                }();
                inter = std::max(inter, max_abs_diff(lhs, rhs));
            }
        }
        col.add("cg_isometry" + tag, iso);
        col.add("cg_completeness" + tag, max_abs_diff(complete, eye(i.dim() * j.dim())));
        col.add("cg_intertwining" + tag, inter);
    }

    // Spectral decomposition of the fundamental braid matrices.
    {
        const ProjectorFamily fam = projector_family(h, h, ctx);
        const Mat rp_hat = braid_of(fundamental_R(Sign::Plus, ctx), 2, 2);
        const Mat rm_hat = braid_of(fundamental_R(Sign::Minus, ctx), 2, 2);
        const auto dp = spectral_decompose(rp_hat, fam, ctx);
        const auto dm = spectral_decompose(rm_hat, fam, ctx);
        col.add("braid_spectral_reconstruction+", dp.reconstruction_residual);
        col.add("braid_spectral_reconstruction-", dm.reconstruction_residual);
        const Cplx ratio = dp.eigenvalues[1].second / dp.eigenvalues[0].second;
        col.add("braid_eigenvalue_ratio", std::abs(ratio + ctx.qpow(2.0)));
        double inv = 0.0;
        for (size_t k = 0; k < dp.eigenvalues.size(); ++k)
            inv = std::max(inv, std::abs(dp.eigenvalues[k].second * dm.eigenvalues[k].second -
                                         Cplx(1.0, 0.0)));
        col.add("braid_eigenvalues_inverse_pair", inv);
    }

    // Fusion associativity: spin 3/2 through (1/2, 1) and through (1, 1/2).
    {
        const Mat ra = fuse_R(h, h, one, threehalf, Sign::Plus, ctx);
        const Mat rb = fuse_R(h, one, h, threehalf, Sign::Plus, ctx);
        Eigen::ComplexEigenSolver<Mat> ea(ra, false), eb(rb, false);
        std::vector<Cplx> va(ea.eigenvalues().data(), ea.eigenvalues().data() + ra.rows());
        std::vector<Cplx> vb(eb.eigenvalues().data(), eb.eigenvalues().data() + rb.rows());
        auto key = [](const Cplx& a, const Cplx& b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        };
        std::sort(va.begin(), va.end(), key);
        std::sort(vb.begin(), vb.end(), key);
        double spec = 0.0;
        for (size_t k = 0; k < va.size(); ++k) spec = std::max(spec, std::abs(va[k] - vb[k]));
        col.add("fusion_route_spectra(1/2,3/2)", spec);
        col.add("fusion_route_matrices(1/2,3/2)", max_abs_diff(ra, rb));
    }
}

// ---------------------------------------------------------------------------

void suite_twisted(Collector& col, const QContext& ctx, const std::vector<double>& grid) {
    const Spin h = Spin::half(), one = Spin::one();

    for (double p : grid)
        for (Sign s : {Sign::Plus, Sign::Minus})
            col.add("twisted_yang_baxter(p=" + ptag(p) + ")" + to_string(s),
                    verify_twisted_YBE(p, s, ctx));
    for (double p : grid) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            col.add("cartan_symmetry(p=" + ptag(p) + ")" + to_string(s),
                    weight_symmetry_check(p, s, ctx));
            col.add("unitarity(p=" + ptag(p) + ")" + to_string(s),
                    unitarity_residual(dynR(p, s, ctx)));
            col.add("twist_exchange(p=" + ptag(p) + ")" + to_string(s),
                    twist_exchange_residual(p, s, ctx));
        }
        col.add("cartan_dressing_exchange(p=" + ptag(p) + ")", dO_relation_check(p, ctx));
        col.add("prime_inverse_pair(p=" + ptag(p) + ")",
                max_abs_diff(dynR(p, Sign::Minus, ctx),
                             Mat(prime_of(dynR(p, Sign::Plus, ctx), 2, 2).inverse())));

        const Mat f = twist_F(p, ctx);
        const Mat qq = kron(irrep(h, ctx).qH, irrep(h, ctx).qH);
        col.add("twist_cartan_commutes(p=" + ptag(p) + ")", max_abs_diff(f * qq, qq * f));
        col.add("twist_det_one(p=" + ptag(p) + ")", std::abs(f.determinant() - Cplx(1.0, 0.0)));
        col.add("twist_vs_cg_route(p=" + ptag(p) + ")", max_abs_diff(f, F_via_CG(p, h, h, ctx)));
    }

    // chi: p-independence of F F*, closed form, hat form, identities.
    {
        const Mat c = chi(ctx);
        double pind = 0.0;
        for (double p : grid) {
            const Mat f = twist_F(p, ctx);
            pind = std::max(pind, max_abs_diff(f * f.adjoint(), c));
        }
        col.add("chi_p_independence", pind);
        col.add("chi_hat_projector_difference",
                max_abs_diff(chi_hat(ctx), chi_from_projectors(h, h, ctx)));
        const Mat cp = prime_of(c, 2, 2);
        col.add("chi_primed_is_inverse", max_abs_diff(cp, Mat(c.inverse())));
        const Mat chat = chi_hat(ctx);
        col.add("chi_hat_squares_to_identity", max_abs_diff(chat * chat, eye(4)));
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const Mat r = fundamental_R(s, ctx);
            const Mat rother = fundamental_R(flip(s), ctx);
            col.add(std::string("chi_r_relation") + to_string(s),
                    max_abs_diff(r * c, cp * rother.inverse()));
        }
        double cdress = 0.0;
        for (Gen g : {Gen::H, Gen::Xp, Gen::Xm}) {
            const Mat d = coproduct_rep(h, h, g, ctx);
            const Mat dflip = prime_of(d, 2, 2);
            cdress = std::max(cdress, max_abs_diff(c * dflip, d * c));
        }
        col.add("chi_flips_coproduct", cdress);
        const Mat chat_mixed = chi_from_projectors(h, one, ctx);
        col.add("chi_hat_mixed_squares_to_identity",
                max_abs_diff(chat_mixed * chat_mixed, eye(6)));
        const ProjectorFamily mixed = projector_family(h, one, ctx);
        col.add("chi_hat_mixed_alternating_sum",
                max_abs_diff(chat_mixed, Mat(mixed.at(Spin(3)) - mixed.at(Spin(1)))));

        const RibbonReport rib = ribbon_chi(ctx);
        col.add("ribbon_reconstruction", rib.residual);
        col.add("ribbon_expressions_agree", rib.agreement);
        col.add("ribbon_unique_branch", std::abs(rib.branch_hits - 1.0));
    }

    // Star structure: twisted coproduct and co-associator.
    for (double p : {grid.front(), grid[grid.size() / 2]}) {
        const Mat f = twist_F(p, ctx);
        const Mat finv = f.inverse();
        double star = 0.0;
        const IrrepMatrices r = irrep(h, ctx);
        const std::vector<std::pair<Gen, Gen>> conj{{Gen::H, Gen::H}, {Gen::Xp, Gen::Xm},
                                                    {Gen::Xm, Gen::Xp}};
        for (auto [g, gstar] : conj) {
            const Mat lhs = (finv * coproduct_rep(h, h, g, ctx) * f).adjoint();
            const Mat rhs = finv * coproduct_rep(h, h, gstar, ctx) * f;
            star = std::max(star, max_abs_diff(lhs, rhs));
        }
        col.add("star_twisted_coproduct(p=" + ptag(p) + ")", star);

        const std::vector<int> shape{2, 2, 2};
        PFunction ffn{4, 4, [&ctx](double pp) { return twist_F(pp, ctx); }};
        const Mat f12_p3 = shift_eval(ffn, p, ShiftRule::for_spin(2, h), {0, 1}, shape);
        const Mat phi = f12_p3.inverse() * embed(f, {0, 1}, shape);
        col.add("coassociator_unitarity(p=" + ptag(p) + ")",
                max_abs_diff(phi.adjoint(), Mat(phi.inverse())));
    }

    // p-dependent projectors, CG maps and the spectral decompositions.
    for (double p : {grid[1]}) {
        const ProjectorFamily pf = p_projectors(p, ctx);
        double idem = 0.0;
        for (const auto& [k, pk] : pf.members) idem = std::max(idem, max_abs_diff(pk * pk, pk));
        col.add("p_projector_idempotence(p=" + ptag(p) + ")", idem);
        col.add("p_projector_completeness(p=" + ptag(p) + ")",
                max_abs_diff(pf.resolution(), eye(4)));

        const auto pmaps = p_cg_maps(p, ctx);
        double ortho = 0.0;
        for (const auto& a : pmaps)
            for (const auto& b : pmaps) {
                const Mat g = a.forward * b.forward.adjoint();
                const Mat expect = (a.K == b.K) ? eye(a.K.dim()) : Mat::Zero(a.K.dim(), b.K.dim());
                ortho = std::max(ortho, max_abs_diff(g, expect));
            }
        col.add("p_cg_star_orthonormality(p=" + ptag(p) + ")", ortho);

        const ProjectorFamily fam = projector_family(Spin::half(), Spin::half(), ctx);
        const auto smaps = cg_maps(Spin::half(), Spin::half(), ctx);
        const auto dstd = spectral_decompose(braid_of(fundamental_R(Sign::Plus, ctx), 2, 2),
                                             fam, ctx);
        const auto dtw = spectral_decompose(braid_of(dynR(p, Sign::Plus, ctx), 2, 2), pf, ctx);
        double coher = 0.0;
        for (size_t k = 0; k < dstd.eigenvalues.size(); ++k)
            coher = std::max(coher,
                             std::abs(dstd.eigenvalues[k].second - dtw.eigenvalues[k].second));
        col.add("twisted_spectral_coherence(p=" + ptag(p) + ")", coher);
        col.add("twisted_spectral_reconstruction(p=" + ptag(p) + ")",
                dtw.reconstruction_residual);

        // Reconstruction of the dynamical braid from p-dependent CG maps.
        Mat recon = Mat::Zero(4, 4);
        for (size_t k = 0; k < pmaps.size(); ++k)
            recon += pmaps[k].backward * dstd.eigenvalues[k].second * pmaps[k].forward;
        col.add("twisted_braid_from_p_cg(p=" + ptag(p) + ")",
                max_abs_diff(recon, braid_of(dynR(p, Sign::Plus, ctx), 2, 2)));
        (void)smaps;
    }

    // Twist solver oracle.
    {
        const TwistSolveReport sol = solve_F_from_conditions(grid, ctx);
        double match = 0.0;
        for (size_t k = 0; k < grid.size(); ++k)
            match = std::max(match, max_abs_diff(sol.solved[k], twist_F(grid[k], ctx)));
        col.add("twist_solver_matches_closed_form", match);
        col.add("twist_solver_epsilon", std::abs(sol.epsilon - ctx.qpow(0.5)));
    }

    // Fused dynamical R-matrices: mixed relations at interior p.
    for (double p : {3.4, 4.2}) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            col.add("fused_dyn_unitarity(1/2,1;p=" + ptag(p) + ")" + to_string(s),
                    unitarity_residual(dyn_R(h, one, p, s, ctx)));
            col.add("fused_dyn_cartan_symmetry(1/2,1;p=" + ptag(p) + ")" + to_string(s),
                    weight_symmetry_residual(h, one, p, s, ctx));
        }
        col.add("mixed_twisted_yang_baxter(1/2,1/2,1;p=" + ptag(p) + ")+",
                twisted_YBE_residual(h, h, one, p, Sign::Plus, ctx));
        col.add("mixed_twisted_yang_baxter(1/2,1,1/2;p=" + ptag(p) + ")+",
                twisted_YBE_residual(h, one, h, p, Sign::Plus, ctx));
        for (Sign s : {Sign::Plus, Sign::Minus})
            col.add("pair_twist_exchange(1/2,1;p=" + ptag(p) + ")" + to_string(s),
                    twist_exchange_residual(h, one, p, s, ctx));
    }
}

// ---------------------------------------------------------------------------

void suite_model(Collector& col, const QContext& ctx, int jmax_twice) {
    const ModelSpace space(Spin(jmax_twice), ctx);
    const Spin h = Spin::half();

    // Irrep commutation relations up to spin 2.
    {
        double comm = 0.0;
        for (int t = 1; t <= 4; ++t) {
            const IrrepMatrices r = irrep(Spin(t), ctx);
            Mat q2h = Mat::Zero(r.H.rows(), r.H.cols());
            for (Eigen::Index i = 0; i < r.H.rows(); ++i)
                q2h(i, i) = ctx.qnum(2.0 * r.H(i, i).real());
            comm = std::max(comm, max_abs_diff(r.H * r.Xp - r.Xp * r.H, r.Xp));
            comm = std::max(comm, max_abs_diff(r.Xm * r.H - r.H * r.Xm, r.Xm));
            comm = std::max(comm, max_abs_diff(r.Xp * r.Xm - r.Xm * r.Xp, q2h));
        }
        col.add("irrep_commutation_relations", comm);
    }

    // The generator-built spin-1 tensor operator.
    {
        const auto t = tensor_op_spin1(space, ctx);
        col.add("generator_tensor_operator", adjoint_check(t, Spin::one(), space, ctx, 0).max());
        double block = 0.0;
        for (const Mat& c : t) block = std::max(block, shift_pattern_residual(c, space, 0, 99));
        // components preserve each block: any m-shift allowed, no J-shift
        double offblock = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int r = 0; r < space.dim(); ++r)
                for (int c = 0; c < space.dim(); ++c)
                    if (space.twiceJ(r) != space.twiceJ(c))
                        offblock = std::max(offblock, std::abs(t[k](r, c)));
        col.add("generator_tensor_operator_blocks", offblock);
        (void)block;
    }

    const OpMatrix2 u2 = build_U_half(space, ctx);
    const OpMatrix u = as_op_matrix(u2, h);

    // Rows of the generating matrix are tensor operators.
    {
        const std::vector<Mat> row1{u2[0], u2[1]}, row2{u2[2], u2[3]};
        const double r1 = adjoint_check(row1, h, space, ctx, 1).max();
        const double r2 = adjoint_check(row2, h, space, ctx, 1).max();
        col.add("generating_rows_are_tensor_operators", std::max(r1, r2));
    }

    // Shift-pattern sparsity.
    {
        double sp = 0.0;
        sp = std::max(sp, shift_pattern_residual(u2[0], space, 1, 1));
        sp = std::max(sp, shift_pattern_residual(u2[1], space, 1, -1));
        sp = std::max(sp, shift_pattern_residual(u2[2], space, -1, 1));
        sp = std::max(sp, shift_pattern_residual(u2[3], space, -1, -1));
        col.add("shift_pattern_sparsity", sp);
    }

    // Exact system.
    {
        const ExactSystemReport rep = verify_exact_system(space, ctx);
        col.add("dynamical_exchange+", rep.exchange_plus);
        col.add("dynamical_exchange-", rep.exchange_minus);
        col.add("weight_shift_property", rep.weight_shift);
        col.add("cartan_dressing_property", rep.cartan_dressing);
        col.add("normalization_relation", rep.normalization);
    }

    // Gauge covariance of the system under the residual transformations.
    {
        const ElementaryOps e = elementary_ops(space, ctx);
        OpMatrix ud = OpMatrix::zero(h, space.dim());
        OpMatrix uf = OpMatrix::zero(h, space.dim());
        Mat fp = diag_of_p(space, [&](double p) { return ctx.qnum(p); });
        Mat fpinv = diag_of_p(space, [&](double p) { return 1.0 / ctx.qnum(p); });
        for (int i = 0; i < 2; ++i) {
            const double hh = i == 0 ? 0.5 : -0.5;
            Mat qdp = diag_of_p(space, [&](double p) { return ctx.qpow(2.0 * hh * p); });
            for (int j = 0; j < 2; ++j) {
                ud.at(i, j) = qdp * u.at(i, j);
                uf.at(i, j) = fp * u.at(i, j) * fpinv;
            }
        }
        ExchangeCheck exd{h, ud, 0};
        const ExactSystemReport repd = verify_exact_system(space, ud, h, exd, ctx, false);
        col.add("gauge_covariance_cartan_prefactor",
                std::max({repd.exchange_plus, repd.exchange_minus, repd.weight_shift,
                          repd.cartan_dressing}));
        ExchangeCheck exf{h, uf, 0};
        const ExactSystemReport repf = verify_exact_system(space, uf, h, exf, ctx, false);
        col.add("gauge_covariance_p_rescaling",
                std::max({repf.exchange_plus, repf.exchange_minus, repf.weight_shift,
                          repf.cartan_dressing}));
    }

    // L-operators: fundamental image, quadratic exchange, tensor relation.
    {
        col.add("rll_exchange+", rll_residual(space, Sign::Plus, ctx));
        col.add("rll_exchange-", rll_residual(space, Sign::Minus, ctx));
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const OpMatrix l = as_op_matrix(build_L(space, s, ctx), h);
            col.add(std::string("l_generating_relation") + to_string(s),
                    generating_relation_residual(space, l, u, h, h, s, ctx, 1));
        }
    }

    // Determinant.
    {
        const DetUReport rep = det_U(space, ctx);
        col.add("determinant_forms_agree", rep.forms_agreement);
        col.add("determinant_central", rep.centrality);
        double scal = 0.0;
        for (const Cplx& s : rep.block_scalars) scal = std::max(scal, std::abs(s - ctx.qpow(0.5)));
        col.add("determinant_scalar_value", scal);
    }

    // Preciseness: matrix elements equal CG coefficients, phase one.
    {
        GeneratingMatrix g = fundamental_generating_matrix(space, ctx);
        const PrecisenessReport rep =
            preciseness_check(g, space, ctx, 0, space.jmax().twice() - 1);
        col.add("cg_preciseness_phase", std::abs(rep.global_phase - Cplx(1.0, 0.0)));
        col.add("cg_preciseness_spread", rep.phase_spread);
        col.add("cg_preciseness_zeros", rep.zero_residual);
    }
}

// ---------------------------------------------------------------------------

void suite_fusion(Collector& col, const QContext& ctx, int jmax_twice, bool identity_twist) {
    const ModelSpace space(Spin(jmax_twice), ctx);
    const Spin h = Spin::half(), one = Spin::one();
    const GeneratingMatrix uh = fundamental_generating_matrix(space, ctx);

    PFunction twist{4, 4, [&ctx](double p) { return twist_F(p, ctx); }};
    if (identity_twist) twist = PFunction{4, 4, [](double) { return eye(4); }};

    const GeneratingMatrix u1 = fuse_generic(uh, uh, twist, 0, one, space, ctx);

    // Entrywise agreement with the closed-form products.
    {
        const OpMatrix closed = spin1_closed_form(space, ctx);
        double res = 0.0;
        const Mat window = space.block_window(0, space.jmax().twice() - 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                res = std::max(res,
                               ((u1.ops.at(i, j) - closed.at(i, j)) * window)
                                   .cwiseAbs()
                                   .maxCoeff());
        col.add("spin1_closed_form_entries", res);
    }

    // Rows are tensor operators; shift pattern; middle row is the
    // generator-built operator after the p-rescaling.
    {
        double adj = 0.0;
        for (int i = 0; i < 3; ++i) {
            std::vector<Mat> row{u1.ops.at(i, 0), u1.ops.at(i, 1), u1.ops.at(i, 2)};
            adj = std::max(adj, adjoint_check(row, one, space, ctx, 2).max());
        }
        col.add("spin1_rows_are_tensor_operators", adj);

        double sp = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                sp = std::max(sp, shift_pattern_residual(u1.ops.at(i, j), space, 2 * (1 - i),
                                                         2 * (1 - j)));
        col.add("spin1_shift_pattern", sp);

        const auto t = tensor_op_spin1(space, ctx);
        const Mat scale = diag_of_p(space, [&](double p) {
            return sqrtc(ctx.qnum(2.0) / (ctx.qnum(p + 1.0) * ctx.qnum(p - 1.0)));
        });
        double mid = 0.0;
        const Mat window = space.block_window(0, space.jmax().twice() - 2);
        for (int j = 0; j < 3; ++j)
            mid = std::max(mid,
                           ((u1.ops.at(1, j) - scale * t[j]) * window).cwiseAbs().maxCoeff());
        col.add("spin1_middle_row_generator_form", mid);
    }

    // Preciseness of the fused matrix.
    {
        const PrecisenessReport rep =
            preciseness_check(u1, space, ctx, 0, space.jmax().twice() - 2);
        col.add("spin1_preciseness_phase", std::abs(rep.global_phase - Cplx(1.0, 0.0)));
        col.add("spin1_preciseness_spread", rep.phase_spread);
        col.add("spin1_preciseness_zeros", rep.zero_residual);
    }

    // Exchange with the fundamental matrix through fused dynamical R.
    {
        ExchangeCheck ex{h, uh.ops, 1, dyn_chain_ceiling_twiceJ(one, ctx)};
        const ExactSystemReport rep = verify_exact_system(space, u1.ops, one, ex, ctx, false);
        col.add("spin1_dynamical_exchange+", rep.exchange_plus);
        col.add("spin1_dynamical_exchange-", rep.exchange_minus);
        col.add("spin1_weight_shift", rep.weight_shift);
        col.add("spin1_cartan_dressing", rep.cartan_dressing);
    }

    // Singlet component.
    {
        const SingletReport rep =
            identity_twist ? singlet_component_with(space, twist, 0, ctx)
                           : singlet_component(space, ctx);
        col.add("singlet_commutant", rep.commutant);
        col.add("singlet_determinant_ratio_constant", rep.ratio_spread);
    }

    // Group-like fusion of the inverse L-operator.
    {
        const OpMatrix lp = as_op_matrix(build_L(space, Sign::Plus, ctx), h);
        const OpMatrix g = op_matrix_inverse(lp);
        const OpMatrix g1 = fuse_grouplike(g, one, fundamental_R(Sign::Plus, ctx), ctx);

        const Cplx s2 = sqrt_pos(ctx.qnum(2.0), ctx);
        const Mat& a = g.at(0, 0);
        const Mat& b = g.at(0, 1);
        const Mat& c = g.at(1, 0);
        const Mat& d = g.at(1, 1);
        double pat = 0.0;
        pat = std::max(pat, max_abs_diff(g1.at(0, 0), a * a));
        pat = std::max(pat, max_abs_diff(g1.at(0, 1), ctx.qpow(-0.5) * s2 * a * b));
        pat = std::max(pat, max_abs_diff(g1.at(0, 2), b * b));
        pat = std::max(pat, max_abs_diff(g1.at(1, 0), ctx.qpow(-0.5) * s2 * a * c));
        pat = std::max(pat, max_abs_diff(g1.at(1, 1), a * d + ctx.qpow(-1.0) * b * c));
        pat = std::max(pat, max_abs_diff(g1.at(1, 2), ctx.qpow(-0.5) * s2 * b * d));
        pat = std::max(pat, max_abs_diff(g1.at(2, 0), c * c));
        pat = std::max(pat, max_abs_diff(g1.at(2, 1), ctx.qpow(-0.5) * s2 * c * d));
        pat = std::max(pat, max_abs_diff(g1.at(2, 2), d * d));
        col.add("grouplike_monomial_pattern", pat);

        const OpMatrix g0 = fuse_grouplike(g, Spin(0), fundamental_R(Sign::Plus, ctx), ctx);
        col.add("grouplike_scalar_component", max_abs_diff(g0.at(0, 0), eye(space.dim())));

        // The fused spin-1 component inverts back to the spin-1 L-operator,
        // which must satisfy the generating relation against the fused matrix.
        const OpMatrix l1 = op_matrix_inverse(g1);
        col.add("grouplike_spin1_generating_relation",
                generating_relation_residual(space, l1, u1.ops, one, one, Sign::Plus, ctx, 2,
                                             u1.low_valid_twiceJ + 2));
    }
}

// ---------------------------------------------------------------------------

void suite_spin_three_half(Collector& col, const RunConfig& cfg) {
    // The spin-3/2 descendant needs head-room in both p and J (its twist
    // chain reaches three q-number steps beyond the block), so it runs on a
    // wider space with a correspondingly smaller deformation angle.
    const QContext ctx = cfg.regime == Regime::UnitCircle
                             ? QContext::unit_circle(0.175, cfg.tol)
                             : cfg.context();
    const ModelSpace space(Spin(12), ctx);
    const GeneratingMatrix uh = fundamental_generating_matrix(space, ctx);
    const GeneratingMatrix u1 = fuse_exact_spin1(space, ctx);
    const GeneratingMatrix u32 = fuse_exact_next(u1, space, ctx);
    const Spin k = u32.spin;
    const int low = u32.low_valid_twiceJ;

    double adj = 0.0;
    for (int i = 0; i < k.dim(); ++i) {
        std::vector<Mat> row;
        for (int j = 0; j < k.dim(); ++j) row.push_back(u32.ops.at(i, j));
        adj = std::max(adj, adjoint_check(row, k, space, ctx, 3, low + 3).max());
    }
    col.add("spin32_rows_are_tensor_operators", adj);

    double sp = 0.0;
    for (int i = 0; i < k.dim(); ++i)
        for (int j = 0; j < k.dim(); ++j)
            sp = std::max(sp,
                          shift_pattern_residual(u32.ops.at(i, j), space, 3 - 2 * i, 3 - 2 * j));
    col.add("spin32_shift_pattern", sp);

    const PrecisenessReport prec =
        preciseness_check(u32, space, ctx, low + 3, space.jmax().twice() - 3);
    col.add("spin32_preciseness_spread", prec.phase_spread);
    col.add("spin32_preciseness_zeros", prec.zero_residual);
    col.add("spin32_preciseness_nontrivial", prec.compared >= 16 ? 0.0 : 1.0);

    ExchangeCheck ex{Spin::half(), uh.ops, 3, dyn_chain_ceiling_twiceJ(k, ctx)};
    const ExactSystemReport rep = verify_exact_system(space, u32.ops, k, ex, ctx, false);
    col.add("spin32_dynamical_exchange+", rep.exchange_plus);
    col.add("spin32_dynamical_exchange-", rep.exchange_minus);
    col.add("spin32_weight_shift", rep.weight_shift);
}

// ---------------------------------------------------------------------------

void suite_asymptotics(Collector& col, const QContext& ctx, double asym_tol) {
    const AsymptoticsReport rep = asymptotics_check(ctx, 60.0);
    col.add("limit_r_plus_positive", rep.r_plus_pos, asym_tol);
    col.add("limit_r_minus_positive", rep.r_minus_pos, asym_tol);
    col.add("limit_r_plus_negative", rep.r_plus_neg, asym_tol);
    col.add("limit_r_minus_negative", rep.r_minus_neg, asym_tol);
    col.add("limit_twist_identity", rep.f_pos, asym_tol);
    col.add("limit_twist_chi", rep.f_neg, asym_tol);
    col.add("limit_decay_slope", rep.decay_slope_error, 0.2);
}

}  // namespace

Report run_suite(const RunConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    rep.config = cfg;
    Collector col{rep, cfg.tol};

    const bool all = cfg.suite == "all";
    if (cfg.suite == "asymptotics" && cfg.regime != Regime::RealQ)
        throw DomainError("the asymptotics suite needs the RealQ regime");
    if (!(all || cfg.suite == "hopf" || cfg.suite == "twisted" || cfg.suite == "model" ||
          cfg.suite == "fusion" || cfg.suite == "asymptotics"))
        throw DomainError("unknown suite '" + cfg.suite + "'");

    try {
        if (all || cfg.suite == "hopf") suite_hopf(col, cfg.context());
        if (all || cfg.suite == "twisted") suite_twisted(col, cfg.context(), cfg.pgrid);
        if (all || cfg.suite == "model") suite_model(col, cfg.context(), cfg.jmax_twice);
        if (all || cfg.suite == "fusion") {
            suite_fusion(col, cfg.context(), cfg.jmax_twice, cfg.identity_twist);
            if (!cfg.identity_twist) suite_spin_three_half(col, cfg);
        }
        if (cfg.suite == "asymptotics" ||
            (all && cfg.regime == Regime::RealQ))
            suite_asymptotics(col, QContext::real_q(cfg.q, cfg.tol), cfg.asym_tol);
    } catch (const std::exception& e) {
        rep.errors.push_back(e.what());
    }
    return rep;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::UnitCircle: return "unit-circle";
        case Regime::RealQ: return "real-q";
        case Regime::Classical: return "classical";
    }
    return "?";
}

}  // namespace

std::string render_report_json(const Report& rep) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": 1,\n";
    os << "  \"generator\": \"qfusion 1.0.0\",\n";
    os << "  \"suite\": \"" << rep.suite << "\",\n";
    os << "  \"regime\": \"" << regime_name(rep.config.regime) << "\",\n";
    if (rep.config.regime == Regime::UnitCircle)
        os << "  \"gamma\": " << fmt_double(rep.config.gamma) << ",\n";
    else
        os << "  \"q\": " << fmt_double(rep.config.q) << ",\n";
    os << "  \"tol\": " << fmt_double(rep.config.tol) << ",\n";
    os << "  \"jmax\": " << fmt_double(0.5 * rep.config.jmax_twice) << ",\n";
    os << "  \"pgrid\": [";
    for (size_t i = 0; i < rep.config.pgrid.size(); ++i)
        os << (i ? ", " : "") << fmt_double(rep.config.pgrid[i]);
    os << "],\n";
    os << "  \"all_pass\": " << (rep.all_pass() ? "true" : "false") << ",\n";
    os << "  \"errors\": [";
    for (size_t i = 0; i < rep.errors.size(); ++i)
        os << (i ? ", " : "") << "\"" << rep.errors[i] << "\"";
    os << "],\n";
    os << "  \"checks\": [\n";
    for (size_t i = 0; i < rep.checks.size(); ++i) {
        const auto& c = rep.checks[i];
        os << "    {\"name\": \"" << c.name << "\", \"residual\": " << fmt_double(c.residual)
           << ", \"threshold\": " << fmt_double(c.threshold)
           << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
           << (i + 1 < rep.checks.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

std::string render_report_csv(const Report& rep) {
    std::ostringstream os;
    os << "# suite=" << rep.suite << " regime=" << regime_name(rep.config.regime);
    if (rep.config.regime == Regime::UnitCircle)
        os << " gamma=" << fmt_double(rep.config.gamma);
    else
        os << " q=" << fmt_double(rep.config.q);
    os << " tol=" << fmt_double(rep.config.tol)
       << " jmax=" << fmt_double(0.5 * rep.config.jmax_twice) << "\n";
    os << "name,residual,threshold,pass\n";
    for (const auto& c : rep.checks)
        os << c.name << "," << fmt_double(c.residual) << "," << fmt_double(c.threshold) << ","
           << (c.pass ? 1 : 0) << "\n";
    return os.str();
}

}  // namespace qfusion
