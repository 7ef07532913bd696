#include "qfusion/structure.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>

namespace qfusion {

Mat fundamental_R(Sign sign, const QContext& ctx) {
    const Cplx w = ctx.omega();
    Mat r = Mat::Zero(4, 4);
    if (sign == Sign::Plus) {
        const Cplx s = ctx.qpow(-0.5);
        r(0, 0) = s * ctx.qpow(1.0);
        r(1, 1) = s;
        r(1, 2) = s * w;
        r(2, 2) = s;
        r(3, 3) = s * ctx.qpow(1.0);
    } else {
        const Cplx s = ctx.qpow(0.5);
        r(0, 0) = s * ctx.qpow(-1.0);
        r(1, 1) = s;
        r(2, 1) = -s * w;
        r(2, 2) = s;
        r(3, 3) = s * ctx.qpow(-1.0);
    }
    return r;
}

Mat braid_of(const Mat& r, int dim_first, int dim_second) {
    return swap_matrix(dim_first, dim_second) * r;
}

Mat prime_of(const Mat& m, int dim_first, int dim_second) {
    return swap_matrix(dim_first, dim_second) * m * swap_matrix(dim_second, dim_first);
}

const Mat& ProjectorFamily::at(Spin K) const {
    for (const auto& [k, p] : members)
        if (k == K) return p;
    throw TriangleError("no projector for spin " + to_string(K) + " in family (" +
                        to_string(I) + "," + to_string(J) + ")");
}

Mat ProjectorFamily::resolution() const {
    Mat acc = Mat::Zero(members.front().second.rows(), members.front().second.cols());
    for (const auto& [k, p] : members) acc += p;
    return acc;
}

ProjectorFamily projectors_from_R(const Mat& rplus, const Mat& rminus, int n,
                                  const QContext& ctx) {
    if (n != 2) throw ShapeError("projectors_from_R: only the rank-1 case n = 2 is built");
    const Mat rp_hat = braid_of(rplus, 2, 2);
    const Mat rm_hat = braid_of(rminus, 2, 2);
    const Cplx den = ctx.qpow(2.0) - ctx.qpow(-2.0);
    const Mat p_sym = (ctx.qpow(1.5) * rp_hat - ctx.qpow(-1.5) * rm_hat) / den;
    const Mat p_asym = (ctx.qpow(-0.5) * rp_hat - ctx.qpow(0.5) * rm_hat) / den;
    ProjectorFamily fam;
    fam.I = Spin::half();
    fam.J = Spin::half();
    fam.members = {{Spin(0), p_asym}, {Spin(2), p_sym}};
    return fam;
}

namespace {

std::vector<std::vector<int>> cluster_indices(const std::vector<Cplx>& vals, double rel_gap) {
    double scale = 0.0;
    for (const Cplx& v : vals) scale = std::max(scale, std::abs(v));
    const double gap = std::max(rel_gap * scale, 1e-300);

    std::vector<std::vector<int>> clusters;
    std::vector<bool> used(vals.size(), false);
    for (size_t i = 0; i < vals.size(); ++i) {
        if (used[i]) continue;
        std::vector<int> c{static_cast<int>(i)};
        used[i] = true;
        for (size_t g = 0; g < c.size(); ++g)
            for (size_t j = 0; j < vals.size(); ++j)
                if (!used[j] && std::abs(vals[j] - vals[c[g]]) <= gap) {
                    used[j] = true;
                    c.push_back(static_cast<int>(j));
                }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

}  // namespace

ProjectorFamily projectors_from_spectra(const Mat& endo, Spin I, Spin J,
                                        const QContext& ctx, double rel_gap) {
    Eigen::ComplexEigenSolver<Mat> es(endo, /*computeEigenvectors=*/false);
    std::vector<Cplx> vals(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    const auto clusters = cluster_indices(vals, rel_gap);

    const std::vector<Spin> range = clebsch_range(I, J);
    if (clusters.size() != range.size())
        throw DegeneracyError("eigenvalue clustering found " + std::to_string(clusters.size()) +
                              " groups, expected " + std::to_string(range.size()));

    // Identify each cluster with the K of matching multiplicity.
    std::map<int, std::pair<Spin, Cplx>> by_dim;
    for (const auto& c : clusters) {
        Cplx mean = 0.0;
        for (int i : c) mean += vals[i];
        mean /= static_cast<double>(c.size());
        bool found = false;
        for (Spin K : range)
            if (K.dim() == static_cast<int>(c.size())) {
                if (by_dim.count(K.dim()))
                    throw DegeneracyError("two eigenvalue clusters share one multiplicity");
                by_dim[K.dim()] = {K, mean};
                found = true;
            }
        if (!found)
            throw DegeneracyError("cluster of size " + std::to_string(c.size()) +
                                  " matches no multiplet dimension");
    }

    ProjectorFamily fam;
    fam.I = I;
    fam.J = J;
    for (Spin K : range) {
        const Cplx rk = by_dim.at(K.dim()).second;
        Mat p = eye(endo.rows());
        for (Spin L : range) {
            if (L == K) continue;
            const Cplx rl = by_dim.at(L.dim()).second;
            p = p * (endo - rl * eye(endo.rows())) / (rk - rl);
        }
        fam.members.push_back({K, p});
    }
    return fam;
}

ProjectorFamily projector_family(Spin I, Spin J, const QContext& ctx) {
    if (I == Spin::half() && J == Spin::half())
        return projectors_from_R(fundamental_R(Sign::Plus, ctx),
                                 fundamental_R(Sign::Minus, ctx), 2, ctx);
    if (I == J) {
        const Mat rhat = braid_of(standard_R(I, J, Sign::Plus, ctx), I.dim(), J.dim());
        return projectors_from_spectra(rhat, I, J, ctx);
    }
    // Mixed pair: the braid matrix is not an endomorphism of V^I x V^J, so use
    // the Casimir coproduct, whose spectral projectors are the same family.
    return projectors_from_spectra(casimir_coproduct_rep(I, J, ctx), I, J, ctx);
}

namespace {

// Bilinear normalization v / sqrt(v^t v) followed by the sign convention:
// first significant component gets a positive real part.
Vec normalize_bilinear(Vec v, const QContext& ctx) {
    const Cplx b = (v.transpose() * v)(0, 0);
    if (std::abs(b) < 1e-12)
        throw PhaseError("eigenvector is isotropic for the bilinear form");
    v /= sqrtc(b);
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8 * scale) {
            if (std::abs(v(i).real()) < 1e-10 * scale)
                throw PhaseError("sign convention undecidable: leading component is imaginary");
            if (v(i).real() < 0.0) v = -v;
            break;
        }
    }
    return v;
}

std::vector<int> weight_subspace(Spin I, Spin J, double m) {
    std::vector<int> idx;
    for (int i = 0; i < I.dim(); ++i)
        for (int j = 0; j < J.dim(); ++j)
            if (std::abs(I.weight(i) + J.weight(j) - m) < 1e-9)
                idx.push_back(i * J.dim() + j);
    return idx;
}

}  // namespace

Vec projector_weight_vector(const Mat& proj, Spin I, Spin J, double m, const QContext& ctx) {
    const std::vector<int> idx = weight_subspace(I, J, m);
    Vec best = Vec::Zero(proj.rows());
    double best_norm = 0.0;
    for (int c : idx) {
        Vec cand = Vec::Zero(proj.rows());
        for (int r : idx) cand(r) = proj(r, c);
        const double n = cand.norm();
        if (n > best_norm) {
            best_norm = n;
            best = cand;
        }
    }
    if (best_norm < 1e-10)
        throw DegeneracyError("projector has no range in the requested weight subspace");
    return normalize_bilinear(best, ctx);
}

std::vector<CGMap> cg_maps(Spin I, Spin J, const QContext& ctx) {
    const ProjectorFamily fam = projector_family(I, J, ctx);
    const Mat lower = coproduct_rep(I, J, Gen::Xm, ctx);
    const int d = I.dim() * J.dim();

    std::vector<CGMap> maps;
    for (const auto& [K, proj] : fam.members) {
        std::vector<Vec> basis;
        Vec v = projector_weight_vector(proj, I, J, K.j(), ctx);
        basis.push_back(v);
        for (int step = 0; step < K.twice(); ++step) {
            const double m = K.j() - step;
            const Cplx c2 = ctx.qnum(K.j() + m) * ctx.qnum(K.j() - m + 1.0);
            v = (lower * v) / sqrt_pos(c2, ctx);
            basis.push_back(v);
        }
        for (size_t a = 0; a < basis.size(); ++a)
            for (size_t b = 0; b <= a; ++b) {
                const Cplx g = (basis[a].transpose() * basis[b])(0, 0);
                const Cplx expect = (a == b) ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0);
                if (std::abs(g - expect) > 1e3 * ctx.tol())
                    throw PhaseError("lowered eigenvector family lost bilinear orthonormality");
            }
        CGMap map;
        map.I = I;
        map.J = J;
        map.K = K;
        map.forward = Mat::Zero(K.dim(), d);
        map.backward = Mat::Zero(d, K.dim());
        for (int n = 0; n < K.dim(); ++n) {
            map.forward.row(n) = basis[n].transpose();
            map.backward.col(n) = basis[n];
        }
        maps.push_back(std::move(map));
    }
    return maps;
}

const CGMap& cg_map(const std::vector<CGMap>& maps, Spin K) {
    for (const auto& m : maps)
        if (m.K == K) return m;
    throw TriangleError("no CG map onto spin " + to_string(K));
}

Mat fuse_R(Spin L, Spin I, Spin J, Spin K, Sign sign, const QContext& ctx) {
    const auto range = clebsch_range(I, J);
    if (std::find(range.begin(), range.end(), K) == range.end())
        throw TriangleError("spin " + to_string(K) + " not in the product of " + to_string(I) +
                            " and " + to_string(J));
    const std::vector<int> shape{L.dim(), I.dim(), J.dim()};
    const Mat r13 = embed(standard_R(L, J, sign, ctx), {0, 2}, shape);
    const Mat r12 = embed(standard_R(L, I, sign, ctx), {0, 1}, shape);
    const CGMap cg = cg_map(cg_maps(I, J, ctx), K);
    const Mat c23 = kron(eye(L.dim()), cg.forward);
    const Mat c23p = kron(eye(L.dim()), cg.backward);
    return c23 * r13 * r12 * c23p;
}

Mat standard_R(Spin I, Spin J, Sign sign, const QContext& ctx) {
    if (I == Spin::half() && J == Spin::half()) return fundamental_R(sign, ctx);
    if (J.twice() > 1) {
        const Spin rest(J.twice() - 1);
        return fuse_R(I, Spin::half(), rest, J, sign, ctx);
    }
    // J = 1/2, I > 1/2: exchange slots through R-(p) = (R+'(p))^{-1} pattern.
    const Mat other = standard_R(J, I, sign == Sign::Plus ? Sign::Minus : Sign::Plus, ctx);
    return prime_of(other, J.dim(), I.dim()).inverse();
}

SpectralDecomposition spectral_decompose(const Mat& rhat, const ProjectorFamily& family,
                                         const QContext& ctx) {
    SpectralDecomposition out;
    Mat recon = Mat::Zero(rhat.rows(), rhat.cols());
    for (const auto& [K, p] : family.members) {
        const double comm = max_abs_diff(rhat * p, p * rhat);
        if (comm > ctx.tol())
            throw CommutationError("braid matrix does not commute with the spin-" +
                                   to_string(K) + " projector (residual " +
                                   std::to_string(comm) + ")");
        const Cplx rk = (rhat * p).trace() / static_cast<double>(K.dim());
        out.eigenvalues.push_back({K, rk});
        recon += rk * p;
    }
    out.reconstruction_residual = max_abs_diff(recon, rhat);
    return out;
}

double verify_YBE(Spin I, Spin J, Spin K, Sign sign, const QContext& ctx) {
    const std::vector<int> shape{I.dim(), J.dim(), K.dim()};
    const Mat r12 = embed(standard_R(I, J, sign, ctx), {0, 1}, shape);
    const Mat r13 = embed(standard_R(I, K, sign, ctx), {0, 2}, shape);
    const Mat r23 = embed(standard_R(J, K, sign, ctx), {1, 2}, shape);
    return max_abs_diff(r12 * r13 * r23, r23 * r13 * r12);
}

double intertwining_residual(const Mat& r, Spin I, Spin J, const QContext& ctx) {
    const Mat rhat = braid_of(r, I.dim(), J.dim());
    double res = 0.0;
    for (Gen g : {Gen::H, Gen::Xp, Gen::Xm}) {
        const Mat dij = coproduct_rep(I, J, g, ctx);
        const Mat dji = coproduct_rep(J, I, g, ctx);
        res = std::max(res, max_abs_diff(rhat * dij, dji * rhat));
    }
    return res;
}

}  // namespace qfusion
