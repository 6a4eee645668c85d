#pragma once

#include <vector>

#include "bvp/linalg.hpp"
#include "bvp/problem.hpp"

namespace bvp {

/// Boundary condition on a component of the first-order system:
/// y_component(endpoint) = value, component in [1, m].
struct ComponentBC {
    int component;
    Endpoint endpoint;
    double value;

    bool operator==(const ComponentBC&) const = default;
};

/// Companion-form system dy/dt = A(t) y + f(t) obtained from an m-th order
/// problem via y_i = y^(i-1). Only the last row of A is nontrivial;
/// companion_row[l-1] holds its entry for column l, i.e. -a_{m-l+1}(t).
struct FirstOrderSystem {
    int dim = 0;
    double a = 0.0;
    double b = 0.0;
    std::vector<Expr> companion_row;
    Expr rhs;
    std::vector<ComponentBC> component_bcs;
};

/// Reduce the m-th order problem to companion form. Each boundary condition
/// (k, endpoint, v) becomes the component condition (k+1, endpoint, v).
FirstOrderSystem reduce_order(const Problem& p);

/// Evaluate the companion matrix A(t): unit superdiagonal, evaluated
/// companion row at the bottom, zeros elsewhere.
Matrix companion_matrix_at(const FirstOrderSystem& sys, double t);

}  // namespace bvp
