#ifndef KEDLAB_REFERENCE_HPP
#define KEDLAB_REFERENCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "kedlab/profiles.hpp"

namespace kedlab {

/// Uniform-electron-gas kinetic constant c_TF^(D) for the spin-paired
/// (doubly occupied) gas, dims 1..3:
///   pi^2/24,  pi/2,  (3/10)(3 pi^2)^{2/3}.
double tf_constant(int dim);

/// Exact reference kinetic energy densities.
///   ThomasFermi            c_TF rho^{(D+2)/D}
///   VonWeizsacker          |grad rho|^2 / (8 rho)
///   SingleOrbitalPositive  |grad phi|^2 / 2 with phi = sqrt(rho)
///   SingleOrbitalLaplacian positive form minus (1/4) laplacian(rho)
/// The single-orbital kinds require a profile whose square root is a valid
/// one-electron orbital.
enum class ReferenceKind { ThomasFermi, VonWeizsacker, SingleOrbitalPositive, SingleOrbitalLaplacian };

ReferenceKind parse_reference_kind(const std::string& name);
std::string reference_kind_name(ReferenceKind kind);

std::function<double(double)> reference_evaluator(ReferenceKind kind,
                                                  const RadialProfile& profile);

/// Fitting basis carrying the conventional physical prefactors, so that a
/// coefficient of 1 means "exactly the named functional":
///   TF-shape            c_TF^(D) * rho^{(D+2)/D}
///   vW-shape            (1/8) * rho^{-1} |grad rho|^2
///   laplacian-shape     (1/4) * |laplacian rho|
std::vector<KedTerm> standard_basis(int dim);

} // namespace kedlab

#endif
