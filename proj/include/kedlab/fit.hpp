#ifndef KEDLAB_FIT_HPP
#define KEDLAB_FIT_HPP

#include <functional>
#include <string>
#include <vector>

#include "kedlab/grid.hpp"
#include "kedlab/term.hpp"

namespace kedlab {

enum class Weighting { Measure, Uniform };

struct FitResult {
    std::vector<std::string> basis_tokens;
    std::vector<double> coefficients;  // a_j, one per basis term
    double residual_rms = 0.0;         // sqrt(sum W_i d_i^2 / sum W_i)
    double t_fit = 0.0;                // sum_j a_j * integral(t_j)
    double t_ref = 0.0;                // integral of the reference KED
    double cond = 0.0;                 // sigma_max / sigma_min of the design
};

/// Linear least squares min_a sum_i W_i (t_ref(r_i) - sum_j a_j t_j(r_i))^2
/// through an orthogonalizing (SVD) solve; normal equations are never
/// formed.  Basis terms must be admissible for localized densities in the
/// profile's dimension.  Singular values below 1e-12 of the largest mark
/// null directions and raise RankDeficiency with the null-space dimension.
FitResult fit_expansion(const std::function<double(double)>& reference,
                        const std::vector<KedTerm>& basis,
                        const RadialProfile& profile,
                        const RadialGrid& grid,
                        Weighting weighting = Weighting::Measure);

/// {"basis": [...], "a": [...], "residual_rms": ..., "T_fit": ...,
///  "T_ref": ..., "cond": ...}
std::string fit_result_json(const FitResult& result, int indent = -1);

} // namespace kedlab

#endif
