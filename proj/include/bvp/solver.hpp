#pragma once

#include <vector>

#include "bvp/cheb.hpp"
#include "bvp/linalg.hpp"
#include "bvp/reduction.hpp"

namespace bvp {

/// Knobs threaded through assembly. unscaled_derivative drops the 4/(b-a)
/// chain-rule factor; it exists solely as a mutation fixture for self-checks.
struct AssembleOptions {
    bool unscaled_derivative = false;
};

/// The collocated block system W C = F.
///
/// Rows are node-major: row j*m + (i-1) holds equation i collocated at node
/// t_j. Columns are component-major: column (i-1)*(n+1) + p holds weight
/// C_{i,p}. replaced_rows records boundary-condition rows once imposed.
struct DiscreteSystem {
    Matrix w;
    std::vector<double> f;
    int n = 0;
    int m = 0;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> nodes;        // t_0 = b down to t_n = a
    std::vector<int> replaced_rows;   // empty until impose_bcs
};

/// Collocate the first-order system at the n+1 translated Chebyshev nodes.
/// Requires n >= m so boundary rows cannot consume a full node block.
DiscreteSystem assemble(const FirstOrderSystem& sys, int n, const AssembleOptions& opts = {});

/// Impose the m endpoint conditions by row replacement.
///
/// At each endpoint block, the q conditions there (sorted by component)
/// overwrite the block rows m-1, m-3, m-5, ... (filling m-2, m-4, ... when
/// q exceeds half the block), i.e. the highest-order chain equations and the
/// collocated ODE row are sacrificed first. Keeping the low-order chain
/// equations collocated at the endpoints is what preserves the scheme's
/// spectral accuracy; replacing rows 0..q-1 instead costs several digits.
DiscreteSystem impose_bcs(DiscreteSystem d, const std::vector<ComponentBC>& bcs);

struct SolveResult {
    std::vector<double> weights;     // length m(n+1)
    double condition_estimate = 0.0;
    bool cond_warning = false;       // condition estimate > 1/sqrt(eps)
};

/// Dense LU solve of the imposed system, with a 1-norm condition estimate.
/// Throws SingularMatrixError when a pivot falls below tolerance.
SolveResult solve_discrete(const DiscreteSystem& d);

struct Diagnostics {
    double residual_inf = 0.0;
    double condition_estimate = 0.0;
    int n = 0;
    bool cond_warning = false;
};

/// m Chebyshev series; component i approximates y^(i-1).
struct SpectralSolution {
    std::vector<ChebSeries> components;
    Diagnostics diagnostics;
};

/// Slice the weight vector into per-component series and re-evaluate the
/// max-norm residual of the non-replaced collocation rows.
SpectralSolution build_solution(const SolveResult& result, const FirstOrderSystem& sys,
                                const DiscreteSystem& imposed,
                                const AssembleOptions& opts = {});

/// Value of y^(deriv) at t, read from component deriv+1.
double evaluate(const SpectralSolution& sol, double t, int deriv);

/// Full pipeline: reduce, assemble, impose, solve, package.
SpectralSolution solve_bvp(const Problem& p, int n, const AssembleOptions& opts = {});

}  // namespace bvp
