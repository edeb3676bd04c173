#pragma once

#include <Eigen/Core>

#include "shp/minkowski.hpp"

namespace shp {

using Mat2c = Eigen::Matrix2cd;

/// Which fundamental representation a 2x2 matrix belongs to. The second
/// representation of A is (A^dagger)^-1.
enum class Rep { First, Second };

/// Pauli matrices; index 0 is the identity.
const Mat2c& pauli(int mu);

/// X(n) = n^0 sigma^0 + n . sigma, built from contravariant components.
Mat2c hermitian_of(const FourVector& n);
/// Inverse of hermitian_of: n^mu = tr(sigma^mu X) / 2.
FourVector vector_of(const Mat2c& x);

/// 2x2 complex matrix with unit determinant and a representation tag.
class SL2CElement {
public:
    SL2CElement() : m_(Mat2c::Identity()) {}
    /// Throws InvalidArgument when |det - 1| > 1e-10.
    explicit SL2CElement(const Mat2c& m, Rep rep = Rep::First);

    static SL2CElement identity() { return {}; }
    /// exp(-i angle axis.sigma / 2): active rotation by angle about axis.
    static SL2CElement rotation(const Eigen::Vector3d& axis, double angle);
    /// exp(rapidity axis.sigma / 2): boost along +axis.
    static SL2CElement boost(const Eigen::Vector3d& axis, double rapidity);

    const Mat2c& matrix() const { return m_; }
    Rep rep() const { return rep_; }

    SL2CElement inverse() const;
    SL2CElement adjoint() const;

    /// Product; both factors must carry the same representation tag.
    friend SL2CElement operator*(const SL2CElement& a, const SL2CElement& b);

private:
    Mat2c m_;
    Rep rep_ = Rep::First;
};

/// Lorentz matrix L with A X(n) A^dagger = X(L n). Equivalently, with
/// covariant contraction sigma^mu n_mu, A^dagger (sigma.n) A = sigma.(L^-1 n).
/// Requires the first representation.
LorentzMatrix spinor_map(const SL2CElement& a);

/// Raw 4x4 matrix of the map above, without the LorentzMatrix validation.
Eigen::Matrix4d spinor_map_matrix(const Mat2c& a);

/// Unique positive Hermitian L(n) with spinor_map(L(n)) (1,0,0,0) = n,
/// the principal square root of X(n).
SL2CElement canonical_boost(const FourVector& n);

/// (A^dagger)^-1 tagged as the second representation.
SL2CElement second_rep(const SL2CElement& a);

/// Element of SL(2,C) covering a proper orthochronous Lorentz matrix; the
/// sign is chosen so that the trace has non-negative real part.
SL2CElement lift(const LorentzMatrix& lambda);

}  // namespace shp
