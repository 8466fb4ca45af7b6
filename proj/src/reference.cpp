#include "kedlab/reference.hpp"

#include <cmath>
#include <numbers>

#include "kedlab/errors.hpp"

namespace kedlab {

double tf_constant(int dim) {
    constexpr double pi = std::numbers::pi;
    switch (dim) {
        case 1: return pi * pi / 24.0;
        case 2: return pi / 2.0;
        case 3: return 0.3 * std::pow(3.0 * pi * pi, 2.0 / 3.0);
        default:
            throw DomainError("tf_constant: supported dimensions are 1, 2, 3");
    }
}

ReferenceKind parse_reference_kind(const std::string& name) {
    if (name == "tf") return ReferenceKind::ThomasFermi;
    if (name == "vw") return ReferenceKind::VonWeizsacker;
    if (name == "positive") return ReferenceKind::SingleOrbitalPositive;
    if (name == "laplacian") return ReferenceKind::SingleOrbitalLaplacian;
    throw DomainError("unknown reference KED \"" + name +
                      "\" (one of: tf, vw, positive, laplacian)");
}

std::string reference_kind_name(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::ThomasFermi: return "tf";
        case ReferenceKind::VonWeizsacker: return "vw";
        case ReferenceKind::SingleOrbitalPositive: return "positive";
        case ReferenceKind::SingleOrbitalLaplacian: return "laplacian";
    }
    throw DomainError("unknown reference kind");
}

std::function<double(double)> reference_evaluator(ReferenceKind kind,
                                                  const RadialProfile& profile) {
    const int d = profile.dim();
    switch (kind) {
        case ReferenceKind::ThomasFermi: {
            const double c = tf_constant(d);
            const double expo = static_cast<double>(d + 2) / d;
            return [c, expo, profile](double r) { return c * std::pow(profile.value(r), expo); };
        }
        case ReferenceKind::VonWeizsacker:
            return [profile](double r) {
                const double g1 = profile.deriv(1, r);
                return g1 * g1 / (8.0 * profile.value(r));
            };
        case ReferenceKind::SingleOrbitalPositive:
        case ReferenceKind::SingleOrbitalLaplacian: {
            if (!profile.single_orbital())
                throw DomainError("reference \"" + reference_kind_name(kind) + "\": profile \"" +
                                  profile.id() +
                                  "\" is not usable as a one-electron orbital (needs N = 1 and a "
                                  "node-free square root)");
            if (kind == ReferenceKind::SingleOrbitalPositive)
                // |grad phi|^2/2 with phi = sqrt(rho) reduces to the vW form.
                return [profile](double r) {
                    const double g1 = profile.deriv(1, r);
                    return g1 * g1 / (8.0 * profile.value(r));
                };
            return [profile](double r) {
                const double g1 = profile.deriv(1, r);
                return g1 * g1 / (8.0 * profile.value(r)) - 0.25 * profile.deriv(2, r);
            };
        }
    }
    throw DomainError("unknown reference kind");
}

std::vector<KedTerm> standard_basis(int dim) {
    return {
        make_term(dim, ExponentVector{}).with_coefficient(tf_constant(dim)),
        make_term(dim, std::vector<int>{2}).with_coefficient(1.0 / 8.0),
        make_term(dim, std::vector<int>{0, 1}).with_coefficient(1.0 / 4.0),
    };
}

} // namespace kedlab
