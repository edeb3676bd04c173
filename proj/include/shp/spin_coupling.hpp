#pragma once

// Angular-momentum coupling of spins that live on a common fiber (n, tau).
//
// Magnetic components are always ordered m = j, j-1, ..., -j, so index 0 is
// the highest weight. For spin 1/2 this matches the little-group column
// (up, down).

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "shp/minkowski.hpp"
#include "shp/sl2c.hpp"

namespace shp {

/// Non-negative or negative half-integer, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    /// Throws InvalidArgument unless 2v is an integer within 1e-12.
    static HalfInt from_double(double v);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice_ - b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice_); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
    constexpr explicit HalfInt(int twice) : twice_(twice) {}
    int twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

/// Number of magnetic components, 2j + 1.
int multiplicity(HalfInt j);
/// Position of m in the ordering j, j-1, ..., -j.
int m_index(HalfInt j, HalfInt m);
HalfInt m_at(HalfInt j, int index);

/// <j1 m1; j2 m2 | J M> with the Condon-Shortley phase. Zero when
/// M != m1 + m2. Throws InvalidArgument on malformed quantum numbers
/// (|m| > j, m - j not integral, or J outside the triangle).
double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);
double cg(double j1, double m1, double j2, double m2, double J, double M);

/// Coupled state |J M> expanded over the product basis: entry (i, k) is
/// <j1 m_at(j1,i); j2 m_at(j2,k) | J M>.
Eigen::MatrixXd cg_matrix(HalfInt j1, HalfInt j2, HalfInt J, HalfInt M);

/// Fiber-match tolerance for n (componentwise) and tau.
inline constexpr double kFiberTolerance = 1e-9;

struct SpinState {
    HalfInt j = kHalf;
    Eigen::VectorXcd coefficients;
    FourVector n = kRestFrame;
    double tau = 0.0;

    /// Throws InvalidArgument on a wrong length or a norm off 1 by more than 1e-10.
    void validate() const;

    static SpinState basis(HalfInt j, HalfInt m, const FourVector& n = kRestFrame, double tau = 0.0);
    /// Normalizes the given coefficients.
    static SpinState from_coefficients(HalfInt j, Eigen::VectorXcd c, const FourVector& n = kRestFrame,
                                       double tau = 0.0);
};

enum class SymmetryTag { None, Symmetric, Antisymmetric };
const char* to_string(SymmetryTag tag);

struct TwoBodySpinState {
    HalfInt j1 = kHalf;
    HalfInt j2 = kHalf;
    Eigen::MatrixXcd coefficients;  // rows m1, columns m2
    FourVector n = kRestFrame;
    double tau = 0.0;
    SymmetryTag symmetry = SymmetryTag::None;

    /// Checks shape, unit Frobenius norm (1e-10) and, for j1 = j2, that the
    /// tag matches the exchange symmetry of the coefficients.
    void validate() const;
};

/// Throws FiberMismatch unless n and tau agree within kFiberTolerance.
void require_common_fiber(const FourVector& n1, double tau1, const FourVector& n2, double tau2);

/// The coupled state |J M> of spins a.j and b.j on the common fiber of a and b.
TwoBodySpinState couple_two(const SpinState& a, const SpinState& b, HalfInt J, HalfInt M);

/// Plain tensor product a (x) b on the common fiber.
TwoBodySpinState tensor_product(const SpinState& a, const SpinState& b);

/// Normalized a (x) b + sign * b (x) a. Requires equal j and a common fiber;
/// throws PauliExclusion when the combination vanishes.
TwoBodySpinState symmetrize(const SpinState& a, const SpinState& b, int sign);

/// Swaps the two particles (transposes the coefficients). Requires j1 = j2.
TwoBodySpinState exchange(const TwoBodySpinState& state);

/// Applies independent SU(2) matrices to the two spin-1/2 factors:
/// C -> D1 C D2^T.
TwoBodySpinState apply_local(const Mat2c& d1, const Mat2c& d2, const TwoBodySpinState& state);

/// Two spin-1/2 singlet (up down - down up)/sqrt 2.
TwoBodySpinState singlet(const FourVector& n = kRestFrame, double tau = 0.0);

/// Squared overlaps with each total-J subspace, in increasing J.
std::vector<std::pair<HalfInt, double>> total_spin_decompose(const TwoBodySpinState& state);

/// Total-spin weights of an N-body spin vector given over the product basis
/// (first particle slowest). The coupled basis is built by a left fold:
/// ((j1 j2) J12 j3) J123 ..., all intermediate paths kept.
std::vector<std::pair<HalfInt, double>> total_spin_decompose(const std::vector<HalfInt>& spins,
                                                             const Eigen::VectorXcd& state);

}  // namespace shp
