#include "qfusion/emit.hpp"

#include "qfusion/fusion.hpp"

#include <cstdio>
#include <sstream>

namespace qfusion {

namespace {

std::string fmt(double v) {
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

struct NamedMat {
    std::string name;
    Mat m;
};

void header_json(std::ostringstream& os, const RunConfig& cfg, const EmitRequest& req) {
    os << "{\n  \"schema_version\": 1,\n  \"generator\": \"qfusion 1.0.0\",\n";
    os << "  \"object\": \"" << req.object << "\",\n";
    os << "  \"regime\": \"" << regime_name(cfg.regime) << "\",\n";
    if (cfg.regime == Regime::UnitCircle)
        os << "  \"gamma\": " << fmt(cfg.gamma) << ",\n";
    else
        os << "  \"q\": " << fmt(cfg.q) << ",\n";
    os << "  \"tol\": " << fmt(cfg.tol) << ",\n";
    os << "  \"p\": " << fmt(req.p) << ",\n";
    os << "  \"jmax\": " << fmt(0.5 * cfg.jmax_twice) << ",\n";
}

std::string render(const std::vector<NamedMat>& mats, const RunConfig& cfg,
                   const EmitRequest& req) {
    if (req.format == "json") {
        std::ostringstream os;
        header_json(os, cfg, req);
        os << "  \"matrices\": [\n";
        for (size_t k = 0; k < mats.size(); ++k) {
            const auto& nm = mats[k];
            os << "    {\"name\": \"" << nm.name << "\", \"rows\": " << nm.m.rows()
               << ", \"cols\": " << nm.m.cols() << ", \"entries\": [";
            for (Eigen::Index i = 0; i < nm.m.rows(); ++i)
                for (Eigen::Index j = 0; j < nm.m.cols(); ++j) {
                    if (i + j > 0) os << ", ";
                    os << "[" << fmt(nm.m(i, j).real()) << ", " << fmt(nm.m(i, j).imag())
                       << "]";
                }
            os << "]}" << (k + 1 < mats.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
        return os.str();
    }
    if (req.format == "csv") {
        std::ostringstream os;
        os << "# object=" << req.object << " regime=" << regime_name(cfg.regime);
        if (cfg.regime == Regime::UnitCircle)
            os << " gamma=" << fmt(cfg.gamma);
        else
            os << " q=" << fmt(cfg.q);
        os << " p=" << fmt(req.p) << " jmax=" << fmt(0.5 * cfg.jmax_twice)
           << " schema_version=1\n";
        os << "name,row,col,re,im\n";
        for (const auto& nm : mats)
            for (Eigen::Index i = 0; i < nm.m.rows(); ++i)
                for (Eigen::Index j = 0; j < nm.m.cols(); ++j)
                    os << nm.name << "," << i << "," << j << "," << fmt(nm.m(i, j).real())
                       << "," << fmt(nm.m(i, j).imag()) << "\n";
        return os.str();
    }
    throw DomainError("unknown format '" + req.format + "'");
}

std::vector<NamedMat> op_matrix_entries(const OpMatrix& u, const std::string& stem) {
    std::vector<NamedMat> out;
    for (int i = 0; i < u.aux.dim(); ++i)
        for (int j = 0; j < u.aux.dim(); ++j)
            out.push_back({stem + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                               "]",
                           u.at(i, j)});
    return out;
}

}  // namespace

std::string emit_object(const EmitRequest& req, const RunConfig& cfg) {
    const QContext ctx = cfg.context();
    std::vector<NamedMat> mats;

    if (req.object == "R") {
        mats.push_back({"R+", fundamental_R(Sign::Plus, ctx)});
        mats.push_back({"R-", fundamental_R(Sign::Minus, ctx)});
    } else if (req.object == "Rdyn") {
        mats.push_back({"R+(p)", dynR(req.p, Sign::Plus, ctx)});
        mats.push_back({"R-(p)", dynR(req.p, Sign::Minus, ctx)});
    } else if (req.object == "F") {
        mats.push_back({"F(p)", twist_F(req.p, ctx)});
    } else if (req.object == "chi") {
        mats.push_back({"chi", chi(ctx)});
        mats.push_back({"chi_hat", chi_hat(ctx)});
    } else if (req.object == "projectors") {
        const ProjectorFamily fam = projector_family(Spin::half(), Spin::half(), ctx);
        for (const auto& [k, m] : fam.members) mats.push_back({"P[" + to_string(k) + "]", m});
    } else if (req.object == "p-projectors") {
        const ProjectorFamily fam = p_projectors(req.p, ctx);
        for (const auto& [k, m] : fam.members)
            mats.push_back({"P_p[" + to_string(k) + "]", m});
    } else if (req.object == "cg") {
        for (const auto& m : cg_maps(Spin::half(), Spin::half(), ctx))
            mats.push_back({"C[1/2,1/2," + to_string(m.K) + "]", m.forward});
    } else if (req.object == "p-cg") {
        for (const auto& m : p_cg_maps(req.p, ctx))
            mats.push_back({"C_p[1/2,1/2," + to_string(m.K) + "]", m.forward});
    } else if (req.object == "Uhalf") {
        const ModelSpace space(Spin(cfg.jmax_twice), ctx);
        const OpMatrix u = as_op_matrix(build_U_half(space, ctx), Spin::half());
        mats = op_matrix_entries(u, "U");
    } else if (req.object == "U1") {
        const ModelSpace space(Spin(cfg.jmax_twice), ctx);
        const GeneratingMatrix u1 = fuse_exact_spin1(space, ctx);
        mats = op_matrix_entries(u1.ops, "U1");
    } else if (req.object == "L") {
        const ModelSpace space(Spin(cfg.jmax_twice), ctx);
        mats = op_matrix_entries(as_op_matrix(build_L(space, Sign::Plus, ctx), Spin::half()),
                                 "L+");
        const auto lm = op_matrix_entries(
            as_op_matrix(build_L(space, Sign::Minus, ctx), Spin::half()), "L-");
        mats.insert(mats.end(), lm.begin(), lm.end());
    } else if (req.object == "detU") {
        const ModelSpace space(Spin(cfg.jmax_twice), ctx);
        mats.push_back({"DetU", det_U(space, ctx).det});
    } else {
        throw ShapeError("unknown object '" + req.object + "'");
    }
    return render(mats, cfg, req);
}

std::string emit_cg_table(Spin K, const std::string& format, const RunConfig& cfg) {
    const QContext ctx = cfg.context();
    const ModelSpace space(Spin(cfg.jmax_twice), ctx);

    GeneratingMatrix u;
    if (K == Spin::half())
        u = fundamental_generating_matrix(space, ctx);
    else if (K == Spin::one())
        u = fuse_exact_spin1(space, ctx);
    else if (K.twice() == 3)
        u = fuse_exact_next(fuse_exact_spin1(space, ctx), space, ctx);
    else
        throw DomainError("cg table supports auxiliary spins up to 3/2");

    struct Row {
        int tjs, tms, i, j, tjt, tmt;
        Cplx elem, cg;
    };
    std::vector<Row> rows;
    const int margin = K.twice();
    for (int src = 0; src < space.dim(); ++src) {
        const int tj = space.twiceJ(src), tm = space.twiceM(src);
        if (tj > space.jmax().twice() - margin) continue;
        const Spin js(tj);
        for (int i = 0; i < K.dim(); ++i) {
            const int tjt = tj + K.twice() - 2 * i;
            if (tjt < 0 || tjt > space.jmax().twice()) continue;
            if (tjt < u.low_valid_twiceJ || tjt > u.high_valid_twiceJ) continue;
            const auto range = clebsch_range(js, K);
            if (std::find(range.begin(), range.end(), Spin(tjt)) == range.end()) continue;
            const CGMap cg = cg_map(cg_maps(js, K, ctx), Spin(tjt));
            for (int j = 0; j < K.dim(); ++j) {
                const int tmt = tm + K.twice() - 2 * j;
                const int tgt = space.index(tjt, tmt);
                if (tgt < 0) continue;
                const int row = (tjt - tmt) / 2;
                const int col = ((js.twice() - tm) / 2) * K.dim() + j;
                rows.push_back({tj, tm, i + 1, j + 1, tjt, tmt, u.ops.at(i, j)(tgt, src),
                                cg.forward(row, col)});
            }
        }
    }

    std::ostringstream os;
    if (format == "csv") {
        os << "# cgtable aux_spin=" << to_string(K) << " regime=" << regime_name(cfg.regime);
        if (cfg.regime == Regime::UnitCircle)
            os << " gamma=" << fmt(cfg.gamma);
        else
            os << " q=" << fmt(cfg.q);
        os << " jmax=" << fmt(0.5 * cfg.jmax_twice) << " schema_version=1\n";
        os << "twoJ_src,twoM_src,i,j,twoJ_tgt,twoM_tgt,elem_re,elem_im,cg_re,cg_im,abs_diff\n";
        for (const auto& r : rows)
            os << r.tjs << "," << r.tms << "," << r.i << "," << r.j << "," << r.tjt << ","
               << r.tmt << "," << fmt(r.elem.real()) << "," << fmt(r.elem.imag()) << ","
               << fmt(r.cg.real()) << "," << fmt(r.cg.imag()) << ","
               << fmt(std::abs(r.elem - r.cg)) << "\n";
        return os.str();
    }
    os << "{\n  \"schema_version\": 1,\n  \"generator\": \"qfusion 1.0.0\",\n";
    os << "  \"object\": \"cgtable\",\n  \"aux_spin\": \"" << to_string(K) << "\",\n";
    os << "  \"regime\": \"" << regime_name(cfg.regime) << "\",\n";
    if (cfg.regime == Regime::UnitCircle)
        os << "  \"gamma\": " << fmt(cfg.gamma) << ",\n";
    else
        os << "  \"q\": " << fmt(cfg.q) << ",\n";
    os << "  \"jmax\": " << fmt(0.5 * cfg.jmax_twice) << ",\n  \"rows\": [\n";
    for (size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        os << "    {\"twoJ_src\": " << r.tjs << ", \"twoM_src\": " << r.tms
           << ", \"i\": " << r.i << ", \"j\": " << r.j << ", \"twoJ_tgt\": " << r.tjt
           << ", \"twoM_tgt\": " << r.tmt << ", \"elem\": [" << fmt(r.elem.real()) << ", "
           << fmt(r.elem.imag()) << "], \"cg\": [" << fmt(r.cg.real()) << ", "
           << fmt(r.cg.imag()) << "], \"abs_diff\": " << fmt(std::abs(r.elem - r.cg)) << "}"
           << (k + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

}  // namespace qfusion
