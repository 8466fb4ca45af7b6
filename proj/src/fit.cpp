#include "kedlab/fit.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <json.hpp>

#include "kedlab/errors.hpp"
#include "kedlab/profiles.hpp"
#include "kedlab/util.hpp"

namespace kedlab {

FitResult fit_expansion(const std::function<double(double)>& reference,
                        const std::vector<KedTerm>& basis, const RadialProfile& profile,
                        const RadialGrid& grid, Weighting weighting) {
    for (const auto& term : basis) {
        if (term.dim() != profile.dim())
            throw DimensionMismatch("fit: basis term " + term_token(term) +
                                    " does not match profile dimension " +
                                    std::to_string(profile.dim()));
        if (classify(term, BoundaryMode::Localized).admissibility !=
            Admissibility::LocalizedAdmissible)
            throw DomainError("fit: basis term " + term_token(term) +
                              " is not admissible for localized densities");
    }

    const std::size_t n = grid.size();
    const std::size_t m = basis.size();

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = weighting == Weighting::Measure ? grid.weights[i] : 1.0;

    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd design(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) {
        const double sw = std::sqrt(w[i]);
        const double ref = reference(grid.nodes[i]);
        if (!std::isfinite(ref))
            throw DomainError("fit: reference KED is non-finite at r = " + fmt_g(grid.nodes[i]));
        rhs(static_cast<Eigen::Index>(i)) = sw * ref;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = term_value(basis[j], profile, grid.nodes[i]);
            if (!std::isfinite(v))
                throw DomainError("fit: basis term " + term_token(basis[j]) +
                                  " is non-finite at r = " + fmt_g(grid.nodes[i]));
            design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sw * v;
        }
    }

    FitResult result;
    for (const auto& term : basis) result.basis_tokens.push_back(term_token(term));

    double w_total = 0.0;
    for (double wi : w) w_total += wi;

    Eigen::VectorXd residual = rhs;
    if (m > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double sv_max = sv(0);
        int rank = 0;
        for (Eigen::Index j = 0; j < sv.size(); ++j)
            if (sv(j) > 1e-12 * sv_max) ++rank;
        if (rank < static_cast<int>(m))
            throw RankDeficiency(
                "fit: design matrix is rank deficient (null-space dimension " +
                    std::to_string(static_cast<int>(m) - rank) +
                    "); remove redundant basis terms",
                static_cast<int>(m) - rank);

        const Eigen::VectorXd a = svd.solve(rhs);
        residual = rhs - design * a;
        result.coefficients.assign(a.data(), a.data() + a.size());
        result.cond = sv_max / sv(sv.size() - 1);
    }

    result.residual_rms = w_total > 0.0 ? std::sqrt(residual.squaredNorm() / w_total) : 0.0;
    result.t_ref = integrate(reference, grid);
    CompensatedSum t_fit;
    for (std::size_t j = 0; j < m; ++j) {
        const double tj = integrate(
            [&](double r) { return term_value(basis[j], profile, r); }, grid);
        t_fit.add(result.coefficients[j] * tj);
    }
    result.t_fit = t_fit.value();
    return result;
}

std::string fit_result_json(const FitResult& result, int indent) {
    nlohmann::ordered_json j;
    j["basis"] = result.basis_tokens;
    j["a"] = result.coefficients;
    j["residual_rms"] = result.residual_rms;
    j["T_fit"] = result.t_fit;
    j["T_ref"] = result.t_ref;
    j["cond"] = result.cond;
    return j.dump(indent);
}

} // namespace kedlab
