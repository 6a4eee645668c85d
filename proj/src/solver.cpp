#include "bvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace bvp {

namespace {

std::size_t col_base(int component, int n) {
    return static_cast<std::size_t>(component - 1) * (static_cast<std::size_t>(n) + 1);
}

// Block rows sacrificed for q boundary conditions: m-1, m-3, ... then
// m-2, m-4, ..., returned ascending.
std::vector<int> replacement_rows(int m, int q) {
    std::vector<int> rows;
    for (int r = m - 1; r >= 0 && static_cast<int>(rows.size()) < q; r -= 2) rows.push_back(r);
    for (int r = m - 2; r >= 0 && static_cast<int>(rows.size()) < q; r -= 2) rows.push_back(r);
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

DiscreteSystem assemble(const FirstOrderSystem& sys, int n, const AssembleOptions& opts) {
    const int m = sys.dim;
    if (m < 1) throw std::invalid_argument("assemble: system dimension must be >= 1");
    if (n < m)
        throw std::invalid_argument("assemble: n must be >= order (n=" + std::to_string(n) +
                                    ", order=" + std::to_string(m) + ")");

    DiscreteSystem d;
    d.n = n;
    d.m = m;
    d.a = sys.a;
    d.b = sys.b;
    d.nodes = cheb_nodes(n, sys.a, sys.b);

    const std::size_t block = static_cast<std::size_t>(n) + 1;
    const std::size_t dim = static_cast<std::size_t>(m) * block;
    d.w = Matrix(dim, dim);
    d.f.assign(dim, 0.0);

    const Matrix& deriv = deriv_operator(n).entries;
    const double scale = opts.unscaled_derivative ? 1.0 : 4.0 / (sys.b - sys.a);

    for (int j = 0; j <= n; ++j) {
        const double t = d.nodes[static_cast<std::size_t>(j)];
        const std::vector<double> basis = basis_row(n, t, sys.a, sys.b);

        // Row vector of derivative-series values: scale * (T(t) . M).
        std::vector<double> dbasis(block, 0.0);
        for (std::size_t c = 0; c < block; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < block; ++r) acc += basis[r] * deriv(r, c);
            dbasis[c] = scale * acc;
        }

        std::vector<double> companion(static_cast<std::size_t>(m));
        for (int l = 0; l < m; ++l) {
            try {
                companion[static_cast<std::size_t>(l)] =
                    sys.companion_row[static_cast<std::size_t>(l)].eval(t);
            } catch (const EvalError& err) {
                throw std::runtime_error("assemble: coefficient evaluation failed at node t_" +
                                         std::to_string(j) + "=" + std::to_string(t) + ": " +
                                         err.what());
            }
        }

        for (int i = 1; i <= m; ++i) {
            const std::size_t row = static_cast<std::size_t>(j * m + (i - 1));
            const std::size_t own = col_base(i, n);
            for (std::size_t c = 0; c < block; ++c) d.w(row, own + c) += dbasis[c];
            if (i < m) {
                // Chain equation y_i' - y_{i+1} = 0.
                const std::size_t next = col_base(i + 1, n);
                for (std::size_t c = 0; c < block; ++c) d.w(row, next + c) -= basis[c];
            } else {
                // ODE row y_m' - sum_l A_{m,l}(t) y_l = f(t).
                for (int l = 1; l <= m; ++l) {
                    const double alv = companion[static_cast<std::size_t>(l - 1)];
                    if (alv == 0.0) continue;
                    const std::size_t base = col_base(l, n);
                    for (std::size_t c = 0; c < block; ++c) d.w(row, base + c) -= alv * basis[c];
                }
                try {
                    d.f[row] = sys.rhs.eval(t);
                } catch (const EvalError& err) {
                    throw std::runtime_error("assemble: rhs evaluation failed at node t_" +
                                             std::to_string(j) + "=" + std::to_string(t) + ": " +
                                             err.what());
                }
            }
        }
    }
    return d;
}

DiscreteSystem impose_bcs(DiscreteSystem d, const std::vector<ComponentBC>& bcs) {
    const int m = d.m;
    if (static_cast<int>(bcs.size()) != m)
        throw std::invalid_argument("impose_bcs: expected m=" + std::to_string(m) +
                                    " boundary conditions, found " + std::to_string(bcs.size()));
    std::set<std::pair<int, Endpoint>> seen;
    for (const ComponentBC& bc : bcs) {
        if (bc.component < 1 || bc.component > m)
            throw std::invalid_argument("impose_bcs: component " + std::to_string(bc.component) +
                                        " out of range");
        if (!seen.insert({bc.component, bc.endpoint}).second)
            throw std::invalid_argument("impose_bcs: conflicting boundary conditions on component " +
                                        std::to_string(bc.component));
    }

    const std::size_t block = static_cast<std::size_t>(d.n) + 1;
    const std::size_t dim = static_cast<std::size_t>(m) * block;

    for (Endpoint ep : {Endpoint::Right, Endpoint::Left}) {
        std::vector<ComponentBC> group;
        for (const ComponentBC& bc : bcs)
            if (bc.endpoint == ep) group.push_back(bc);
        if (group.empty()) continue;
        std::sort(group.begin(), group.end(),
                  [](const ComponentBC& x, const ComponentBC& y) { return x.component < y.component; });

        const int node_block = (ep == Endpoint::Right) ? 0 : d.n;  // t_0 = b, t_n = a
        const double t = d.nodes[static_cast<std::size_t>(node_block)];
        const std::vector<double> basis = basis_row(d.n, t, d.a, d.b);
        const std::vector<int> rows = replacement_rows(m, static_cast<int>(group.size()));

        for (std::size_t idx = 0; idx < group.size(); ++idx) {
            const std::size_t row = static_cast<std::size_t>(node_block * m + rows[idx]);
            for (std::size_t c = 0; c < dim; ++c) d.w(row, c) = 0.0;
            const std::size_t base = col_base(group[idx].component, d.n);
            for (std::size_t c = 0; c < block; ++c) d.w(row, base + c) = basis[c];
            d.f[row] = group[idx].value;
            d.replaced_rows.push_back(static_cast<int>(row));
        }
    }
    std::sort(d.replaced_rows.begin(), d.replaced_rows.end());
    return d;
}

SolveResult solve_discrete(const DiscreteSystem& d) {
    if (d.replaced_rows.empty())
        throw std::logic_error("solve_discrete: boundary conditions not imposed");
    const LuFactors lu = LuFactors::factor(d.w);
    SolveResult r;
    r.weights = lu.solve(d.f);
    r.condition_estimate = lu.condition_estimate();
    r.cond_warning = r.condition_estimate > 1.0 / std::sqrt(std::numeric_limits<double>::epsilon());
    return r;
}

SpectralSolution build_solution(const SolveResult& result, const FirstOrderSystem& sys,
                                const DiscreteSystem& imposed, const AssembleOptions& opts) {
    const int m = imposed.m;
    const std::size_t block = static_cast<std::size_t>(imposed.n) + 1;

    SpectralSolution sol;
    sol.components.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        ChebSeries s;
        s.a = imposed.a;
        s.b = imposed.b;
        s.coeffs.assign(result.weights.begin() + static_cast<std::ptrdiff_t>(i * block),
                        result.weights.begin() + static_cast<std::ptrdiff_t>((i + 1) * block));
        sol.components.push_back(std::move(s));
    }

    // Residual of the original collocation rows, skipping the replaced ones.
    const DiscreteSystem fresh = assemble(sys, imposed.n, opts);
    const std::vector<double> wx = fresh.w.multiply(result.weights);
    double residual = 0.0;
    std::size_t next_replaced = 0;
    for (std::size_t row = 0; row < wx.size(); ++row) {
        if (next_replaced < imposed.replaced_rows.size() &&
            static_cast<std::size_t>(imposed.replaced_rows[next_replaced]) == row) {
            ++next_replaced;
            continue;
        }
        residual = std::max(residual, std::abs(wx[row] - fresh.f[row]));
    }

    sol.diagnostics =
        Diagnostics{residual, result.condition_estimate, imposed.n, result.cond_warning};
    return sol;
}

double evaluate(const SpectralSolution& sol, double t, int deriv) {
    if (deriv < 0 || static_cast<std::size_t>(deriv) >= sol.components.size())
        throw std::invalid_argument("evaluate: derivative order " + std::to_string(deriv) +
                                    " out of range [0, " +
                                    std::to_string(sol.components.size() - 1) + "]");
    return clenshaw_eval(sol.components[static_cast<std::size_t>(deriv)], t);
}

SpectralSolution solve_bvp(const Problem& p, int n, const AssembleOptions& opts) {
    const FirstOrderSystem sys = reduce_order(p);
    const DiscreteSystem imposed = impose_bcs(assemble(sys, n, opts), sys.component_bcs);
    const SolveResult result = solve_discrete(imposed);
    return build_solution(result, sys, imposed, opts);
}

}  // namespace bvp
