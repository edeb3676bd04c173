#include "shp/dirac.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/LU>

#include "shp/errors.hpp"

namespace shp::dirac {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

std::array<Mat4c, 4> make_gammas() {
    std::array<Mat4c, 4> g;
    g[0].setZero();
    g[0].diagonal() << 1.0, 1.0, -1.0, -1.0;
    for (int k = 1; k <= 3; ++k) {
        g[k].setZero();
        g[k].block<2, 2>(0, 2) = -pauli(k);
        g[k].block<2, 2>(2, 0) = pauli(k);
    }
    return g;
}

std::array<Mat4c, 16> make_sigmas() {
    std::array<Mat4c, 16> s;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) s[4 * mu + nu] = (kI / 4.0) * commutator(gamma(mu), gamma(nu));
    }
    return s;
}

Mat4c block_diag(const Mat2c& upper, const Mat2c& lower) {
    Mat4c m = Mat4c::Zero();
    m.block<2, 2>(0, 0) = upper;
    m.block<2, 2>(2, 2) = lower;
    return m;
}

FourVector future_representative(const FourVector& n) { return n.t() >= 0.0 ? n : -1.0 * n; }

}  // namespace

const Mat4c& gamma(int mu) {
    static const std::array<Mat4c, 4> g = make_gammas();
    return g[static_cast<std::size_t>(mu)];
}

const Mat4c& gamma5() {
    static const Mat4c g5 = kI * gamma(0) * gamma(1) * gamma(2) * gamma(3);
    return g5;
}

Mat4c slash(const FourVector& a) {
    Mat4c m = Mat4c::Zero();
    for (int mu = 0; mu < 4; ++mu) m += a.lower(mu) * gamma(mu);
    return m;
}

Mat4c commutator(const Mat4c& a, const Mat4c& b) { return a * b - b * a; }
Mat4c anticommutator(const Mat4c& a, const Mat4c& b) { return a * b + b * a; }

const Mat4c& sigma(int mu, int nu) {
    static const std::array<Mat4c, 16> s = make_sigmas();
    return s[static_cast<std::size_t>(4 * mu + nu)];
}

Mat4c k_vec(int mu, const FourVector& n) {
    Mat4c k = Mat4c::Zero();
    for (int nu = 0; nu < 4; ++nu) k += n.lower(nu) * sigma(mu, nu);
    return k;
}

Mat4c k_dot(const FourVector& p, const FourVector& n) {
    Mat4c k = Mat4c::Zero();
    for (int mu = 0; mu < 4; ++mu) k += p.lower(mu) * k_vec(mu, n);
    return k;
}

Mat4c sigma_n(int mu, int nu, const FourVector& n) {
    return sigma(mu, nu) + k_vec(mu, n) * n[nu] - k_vec(nu, n) * n[mu];
}

double projector(int lambda, int mu, const FourVector& n) { return metric(lambda, mu) + n[lambda] * n[mu]; }

Mat4c gamma_n(int mu, const FourVector& n) {
    // gamma_lambda pi^{lambda mu} = gamma^mu + (gamma.n) n^mu
    return gamma(mu) + slash(n) * n[mu];
}

Mat4c k_l(const FourVector& p, const FourVector& n) { return -dot(p, n) * slash(n); }

Mat4c k_t(const FourVector& p, const FourVector& n) {
    return -2.0 * kI * gamma5() * k_dot(p, n) * slash(n);
}

Mat4c k_l_symmetrized(const FourVector& p, const FourVector& n) {
    const Mat4c gp = slash(p);
    const Mat4c gn = slash(n);
    return 0.5 * (gp + gn * gp * gn);
}

Mat4c k_t_symmetrized(const FourVector& p, const FourVector& n) {
    const Mat4c gp = slash(p);
    const Mat4c gn = slash(n);
    return 0.5 * gamma5() * (gp - gn * gp * gn);
}

Mat4c free_k0(const FourVector& p, double mass) {
    if (!(mass > 0.0)) throw InvalidArgument("free_k0: mass must be positive");
    // n only enters through K_L and K_T individually; the difference does not
    // depend on it, so the rest frame is used.
    const Mat4c kt = k_t(p, kRestFrame);
    const Mat4c kl = k_l(p, kRestFrame);
    return (kt * kt - kl * kl) / (2.0 * mass);
}

FieldTensor FieldTensor::from_fields(const Eigen::Vector3d& e_field, const Eigen::Vector3d& b_field, double charge,
                                     double mass) {
    FieldTensor f;
    f.charge = charge;
    f.mass = mass;
    for (int i = 1; i <= 3; ++i) {
        f.lower(0, i) = e_field[i - 1];
        f.lower(i, 0) = -e_field[i - 1];
    }
    f.lower(1, 2) = b_field[2];
    f.lower(2, 1) = -b_field[2];
    f.lower(2, 3) = b_field[0];
    f.lower(3, 2) = -b_field[0];
    f.lower(3, 1) = b_field[1];
    f.lower(1, 3) = -b_field[1];
    return f;
}

FieldTensor FieldTensor::projected(const FourVector& n) const {
    // pi_mu^alpha = delta_mu^alpha + n_mu n^alpha
    Eigen::Matrix4d pi;
    for (int mu = 0; mu < 4; ++mu) {
        for (int a = 0; a < 4; ++a) pi(mu, a) = (mu == a ? 1.0 : 0.0) + n.lower(mu) * n[a];
    }
    FieldTensor out = *this;
    out.lower = pi * lower * pi.transpose();
    return out;
}

Mat4c spin_coupling_term(const FourVector& n, const FieldTensor& field) {
    if (!(field.mass > 0.0)) throw InvalidArgument("spin_coupling_term: mass must be positive");
    const FieldTensor fn = field.projected(n);
    Mat4c s = Mat4c::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            if (fn.lower(mu, nu) != 0.0) s += fn.lower(mu, nu) * sigma_n(mu, nu, n);
        }
    }
    return field.charge / (2.0 * field.mass) * s;
}

Mat4c spin_hamiltonian(const FourVector& p_kinetic, const FourVector& n, const FieldTensor& field) {
    return dot(p_kinetic, p_kinetic) / (2.0 * field.mass) * Mat4c::Identity() + spin_coupling_term(n, field);
}

Mat4c dipole_rhs(const FourVector& n, const FieldTensor& field) {
    Mat4c s = Mat4c::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        const Mat4c k = k_vec(mu, n);
        for (int nu = 0; nu < 4; ++nu) {
            // (K^mu n^nu - K^nu n^mu) F_{mu nu} = 2 K^mu n^nu F_{mu nu}
            s += 2.0 * n[nu] * field.lower(mu, nu) * k;
        }
    }
    return -kI * field.charge * gamma5() * s;
}

Mat4c helicity_operator(const FourVector& p, const FourVector& n) {
    const double pn = dot(p, n);
    const double q2 = dot(p, p) + pn * pn;
    if (!(q2 > 0.0)) {
        std::ostringstream os;
        os << "helicity_operator: p.p + (p.n)^2 = " << q2 << " must be positive";
        throw InvalidArgument(os.str());
    }
    return 2.0 * kI * gamma5() * k_dot(p, n) / std::sqrt(q2);
}

Projections projections(const FourVector& p, const FourVector& n) {
    const double pn = dot(p, n);
    if (pn == 0.0) throw InvalidArgument("projections: p.n = 0 leaves the energy sign undefined");
    const Mat4c id = Mat4c::Identity();
    const Mat4c gn = slash(n);
    const Mat4c h = helicity_operator(p, n);
    const double s = pn > 0.0 ? 1.0 : -1.0;
    Projections out;
    out.sector = {0.5 * (id - gn), 0.5 * (id + gn)};
    out.energy = {0.5 * (1.0 - s) * id, 0.5 * (1.0 + s) * id};
    out.helicity = {0.5 * (id + h), 0.5 * (id - h)};
    return out;
}

double sector_sign(const FourVector& n) { return n.t() >= 0.0 ? -1.0 : 1.0; }

Mat4c sector_metric(const FourVector& n) { return sector_sign(n) * gamma(0) * slash(n); }

double sector_hermiticity_defect(const Mat4c& op, const FourVector& n) {
    const Mat4c eta = sector_metric(n);
    return (eta * op - op.adjoint() * eta).cwiseAbs().maxCoeff();
}

const Mat4c& assembly_matrix() {
    static const Mat4c a = [] {
        Mat4c m = Mat4c::Zero();
        const Mat2c id = Mat2c::Identity() / std::sqrt(2.0);
        m.block<2, 2>(0, 0) = id;
        m.block<2, 2>(0, 2) = id;
        m.block<2, 2>(2, 0) = -id;
        m.block<2, 2>(2, 2) = id;
        return m;
    }();
    return a;
}

FourSpinor assemble_spinor(const TwoSpinorPair& pair) {
    const SL2CElement l = canonical_boost(future_representative(pair.n));
    const SL2CElement lbar = second_rep(l);
    Eigen::Vector4cd chiral;
    chiral.head<2>() = l.matrix() * pair.psi_hat;
    chiral.tail<2>() = lbar.matrix() * pair.phi_hat;
    return {assembly_matrix() * chiral, pair.n};
}

double sector_norm(const FourSpinor& psi) {
    const cd v = psi.psi.dot(sector_metric(psi.n) * psi.psi);
    return v.real();
}

Mat4c s_lambda(const SL2CElement& lambda) {
    if (lambda.rep() != Rep::First) throw InvalidArgument("s_lambda: Lambda must be in the first representation");
    const Mat4c& a = assembly_matrix();
    return a * block_diag(lambda.matrix(), second_rep(lambda).matrix()) * a.adjoint();
}

}  // namespace shp::dirac
