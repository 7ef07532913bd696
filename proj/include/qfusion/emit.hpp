#pragma once

#include "qfusion/uqsl2.hpp"
#include "qfusion/verify.hpp"

#include <string>

// Machine-readable emission of constructed objects: matrices and tables with
// a metadata header, complex numbers as [re, im] pairs, deterministic order.

namespace qfusion {

struct EmitRequest {
    std::string object;  // R, Rdyn, F, chi, projectors, p-projectors, cg,
                         // p-cg, Uhalf, U1, L, detU
    double p = 3.0;
    std::string format = "json";  // json | csv
};

// Renders the requested object; throws DomainError for parameter problems
// and ShapeError for an unknown object name.
std::string emit_object(const EmitRequest& req, const RunConfig& cfg);

// Table of generating-matrix elements next to the CG coefficients they must
// reproduce; K is the auxiliary spin (1/2, 1 or 3/2).
std::string emit_cg_table(Spin K, const std::string& format, const RunConfig& cfg);

}  // namespace qfusion
