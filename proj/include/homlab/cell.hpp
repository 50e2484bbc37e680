#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "homlab/perforation.hpp"

namespace homlab {

/// Inner boundary condition of a cell problem.
struct InnerCondition {
    enum class Kind { dirichlet, robin };
    Kind kind = Kind::dirichlet;
    double b = 1.0;                       // constant Robin coefficient
    std::function<double(double)> b_fn;   // optional b(theta), 2D only

    static InnerCondition dirichlet() { return {Kind::dirichlet, 0.0, nullptr}; }
    static InnerCondition robin(double b) { return {Kind::robin, b, nullptr}; }
};

/// Exterior cell problem truncated at the ellipsoid |A^{-1/2} xi| = truncation.
/// The scalar multiple of A cancels from the equation; K is extracted in the
/// determinant-normalized metric, so A = c*I gives the same K for every c.
struct CellProblem {
    int n = 2;
    Eigen::MatrixXd A;          // symmetric positive definite, n x n
    CavityShape shape;
    InnerCondition inner;
    double truncation = 1e3;    // R4/eta, outer radius in xi-coordinates

    void validate() const;
    /// Determinant-normalized anisotropy factor A / c, c = det(A)^(1/n).
    Eigen::MatrixXd unit_det_part() const;
    static CellProblem isotropic(int n, const CavityShape& shape,
                                 const InnerCondition& inner, double truncation);
};

struct CellResolution {
    int radial = 512;
    int angular = 256;   // 2D tensor solver only
};

/// Solution of the truncated cell problem: profile plus the extracted
/// capacity-type constant of the far-field template.
struct CellSolution {
    int n = 2;
    double K = 0.0;
    double residual = 0.0;
    bool flagged = false;
    double truncation = 0.0;
    double cavity_radius = 0.0;   // max boundary radius of the cavity

    // radial table (theta-averaged for the tensor solver)
    std::vector<double> radii;
    std::vector<double> values;

    // full 2D field for non-round cavities: values[i*n_theta + j] at
    // radius grid level i, angle j (uniform in [0, 2pi)).
    int n_theta = 0;
    std::vector<double> grid_values;
    std::vector<double> grid_log_rin;  // ln rho_in(theta_j), for evaluation

    /// Evaluate the profile at xi (2D grid solutions) or |xi| (radial).
    double evaluate(const Vec2& xi) const;
    double evaluate_radial(double rho) const;
};

/// Closed-form capacity constants for disks (n=2) and balls (n>=3) with a
/// scalar matrix A = c*I. Rejects shapes whose level sets are not spherical.
double capacity_analytic(const CavityShape& shape, const InnerCondition& inner,
                         int n, double a_scale = 1.0);

/// Truncated cell problem solved numerically: radial scheme for round
/// cavities, log-blended tensor grid for ellipses. The self-referential outer
/// datum is resolved by iterating datum <-> extraction to its fixed point.
CellSolution capacity_numeric(const CellProblem& problem,
                              const CellResolution& resolution = {});

struct TruncationRow {
    double radius;
    double K;
    double error;  // |K - K_ref|
};

/// K as a function of the truncation radius, against a reference value.
std::vector<TruncationRow> truncation_study(const CellProblem& problem,
                                            const std::vector<double>& radii,
                                            double K_ref,
                                            const CellResolution& resolution = {});

/// CSV radial table (radius, Z) and JSON record {K, residual, truncation}.
void save_cell_csv(const CellSolution& sol, std::ostream& os);
void save_cell_json(const CellSolution& sol, std::ostream& os);

} // namespace homlab
