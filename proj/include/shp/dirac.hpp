#pragma once

// Covariant Dirac-operator toolkit on the sectors labelled by a unit
// timelike vector n.
//
// Conventions:
//   * Clifford algebra {gamma^mu, gamma^nu} = -2 g^{mu nu} with g = diag(-1,1,1,1),
//     so (gamma.n)^2 = +1 for unit timelike n and (gamma^5)^2 = +1.
//   * gamma^0 is the Bjorken-Drell gamma^0; the spatial gamma^k are the
//     Bjorken-Drell matrices with the index lowered (gamma^k = -gamma^k_BD).
//     This is the choice for which the block assembly below, with the first
//     representation in the upper slot, reproduces the sector norm
//     |psi_hat|^2 + |phi_hat|^2.
//   * gamma.a = gamma^mu a_mu (index lowered with g).

#include <array>

#include <Eigen/Core>

#include "shp/minkowski.hpp"
#include "shp/sl2c.hpp"

namespace shp::dirac {

using Mat4c = Eigen::Matrix4cd;

const Mat4c& gamma(int mu);
const Mat4c& gamma5();
/// gamma^mu a_mu
Mat4c slash(const FourVector& a);

Mat4c commutator(const Mat4c& a, const Mat4c& b);
Mat4c anticommutator(const Mat4c& a, const Mat4c& b);

/// Sigma^{mu nu} = (i/4) [gamma^mu, gamma^nu]
const Mat4c& sigma(int mu, int nu);
/// K^mu = Sigma^{mu nu} n_nu
Mat4c k_vec(int mu, const FourVector& n);
/// K.p = K^mu p_mu
Mat4c k_dot(const FourVector& p, const FourVector& n);
/// Sigma_n^{mu nu} = Sigma^{mu nu} + K^mu n^nu - K^nu n^mu
Mat4c sigma_n(int mu, int nu, const FourVector& n);
/// pi^{lambda mu} = g^{lambda mu} + n^lambda n^mu
double projector(int lambda, int mu, const FourVector& n);
/// gamma_n^mu = gamma_lambda pi^{lambda mu}
Mat4c gamma_n(int mu, const FourVector& n);

/// Hermitian part of gamma.p in the sector scalar product: -(p.n)(gamma.n).
Mat4c k_l(const FourVector& p, const FourVector& n);
/// -2i gamma^5 (p.K)(gamma.n)
Mat4c k_t(const FourVector& p, const FourVector& n);
/// (gamma.p + gamma.n gamma.p gamma.n) / 2
Mat4c k_l_symmetrized(const FourVector& p, const FourVector& n);
/// gamma^5 (gamma.p - gamma.n gamma.p gamma.n) / 2
Mat4c k_t_symmetrized(const FourVector& p, const FourVector& n);

/// (K_T^2 - K_L^2) / 2M, which equals (p.p / 2M) times the identity.
Mat4c free_k0(const FourVector& p, double mass);

/// Electromagnetic field tensor with lower indices, F_{0i} = E_i and
/// F_{ij} = eps_{ijk} B_k, plus the charge e and mass parameter M that
/// enter the spin coupling.
struct FieldTensor {
    Eigen::Matrix4d lower = Eigen::Matrix4d::Zero();
    double charge = 1.0;
    double mass = 1.0;

    static FieldTensor from_fields(const Eigen::Vector3d& e_field, const Eigen::Vector3d& b_field, double charge,
                                   double mass);
    /// Tensor projected on both indices into the surface orthogonal to n.
    FieldTensor projected(const FourVector& n) const;
};

/// (e / 2M) Sigma_n^{mu nu} F_{mu nu}, with F projected on n.
Mat4c spin_coupling_term(const FourVector& n, const FieldTensor& field);
/// (p_kin.p_kin / 2M) I + spin_coupling_term
Mat4c spin_hamiltonian(const FourVector& p_kinetic, const FourVector& n, const FieldTensor& field);
/// -i e gamma^5 (K^mu n^nu - K^nu n^mu) F_{mu nu}
Mat4c dipole_rhs(const FourVector& n, const FieldTensor& field);

struct ProjectorPair {
    Mat4c plus;
    Mat4c minus;
};

struct Projections {
    ProjectorPair sector;    // (1 -+ gamma.n) / 2
    ProjectorPair energy;    // (1 -+ sign(p.n)) / 2
    ProjectorPair helicity;  // (1 +- helicity_operator) / 2
};

/// 2i gamma^5 (K.p) / sqrt(p.p + (p.n)^2). Throws when p.p + (p.n)^2 <= 0.
Mat4c helicity_operator(const FourVector& p, const FourVector& n);
/// Throws InvalidArgument when p.n = 0 or p.p + (p.n)^2 <= 0.
Projections projections(const FourVector& p, const FourVector& n);

/// -1 for n in the future cone, +1 for the past cone (the upper and lower
/// signs of the sector norm).
double sector_sign(const FourVector& n);
/// eta = sign * gamma^0 (gamma.n); positive definite for unit timelike n.
Mat4c sector_metric(const FourVector& n);
/// max |eta O - O^dagger eta|; zero for operators Hermitian in the sector product.
double sector_hermiticity_defect(const Mat4c& op, const FourVector& n);

struct TwoSpinorPair {
    Eigen::Vector2cd psi_hat{0.0, 0.0};  // first representation
    Eigen::Vector2cd phi_hat{0.0, 0.0};  // second representation
    FourVector n = kRestFrame;
};

struct FourSpinor {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    FourVector n = kRestFrame;
};

/// (1/sqrt 2) [[1, 1], [-1, 1]] in 2x2 blocks.
const Mat4c& assembly_matrix();
/// psi_n = A (L(n) psi_hat, Lbar(n) phi_hat). For past-cone n the boosts of -n are used.
FourSpinor assemble_spinor(const TwoSpinorPair& pair);
/// sign * psi^dagger gamma^0 (gamma.n) psi
double sector_norm(const FourSpinor& psi);
/// A diag(Lambda, second_rep(Lambda)) A^-1
Mat4c s_lambda(const SL2CElement& lambda);

}  // namespace shp::dirac
