#include "bvp/reduction.hpp"

namespace bvp {

FirstOrderSystem reduce_order(const Problem& p) {
    p.validate();
    const int m = p.order;
    FirstOrderSystem sys;
    sys.dim = m;
    sys.a = p.a;
    sys.b = p.b;
    sys.rhs = p.rhs;
    sys.companion_row.reserve(static_cast<std::size_t>(m));
    // Column l of the last row holds -a_{m-l+1}: y_m' = -a_1 y_m - ... - a_m y_1 + f.
    for (int l = 1; l <= m; ++l)
        sys.companion_row.push_back(Expr::negate(p.coeffs[static_cast<std::size_t>(m - l)]));
    sys.component_bcs.reserve(p.bcs.size());
    for (const BoundaryCondition& bc : p.bcs)
        sys.component_bcs.push_back({bc.deriv_order + 1, bc.endpoint, bc.value});
    return sys;
}

Matrix companion_matrix_at(const FirstOrderSystem& sys, double t) {
    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Matrix a(m, m);
    for (std::size_t i = 0; i + 1 < m; ++i) a(i, i + 1) = 1.0;
    for (std::size_t l = 0; l < m; ++l) a(m - 1, l) = sys.companion_row[l].eval(t);
    return a;
}

}  // namespace bvp
