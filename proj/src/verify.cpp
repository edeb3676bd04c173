#include "shp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "shp/dirac.hpp"
#include "shp/errors.hpp"
#include "shp/evolution.hpp"
#include "shp/little_group.hpp"
#include "shp/palacios.hpp"
#include "shp/sampling.hpp"
#include "shp/sl2c.hpp"
#include "shp/spin_coupling.hpp"
#include "shp/units.hpp"

namespace shp::verify {

namespace {

using cd = std::complex<double>;
using dirac::Mat4c;
constexpr cd kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* const kFlagClifford = "clifford_sign";
const char* const kFlagGamma5 = "gamma5_square";
const char* const kFlagHelicity = "helicity_limit_sign";
const char* const kFlagDipole = "dipole_rest_frame_sign";
const char* const kFlagWigner = "wigner_left_action";
const char* const kFlagRpi = "r_pi_exchange_sector";
const char* const kFlagCommutator = "commutator_reference_form";

// Accumulates the worst deviation of one identity over its samples.
class Check {
public:
    Check(std::string id, std::string relation, double tolerance, std::vector<std::string> flags = {})
        : id_(std::move(id)), relation_(std::move(relation)), tolerance_(tolerance), flags_(std::move(flags)) {}

    void observe(double deviation) {
        ++samples_;
        if (!std::isfinite(deviation)) deviation = kInf;
        worst_ = std::max(worst_, deviation);
    }

    IdentityRecord record(const Options& options, bool informational = false) const {
        IdentityRecord r;
        r.id = id_;
        r.relation = relation_;
        r.samples = samples_;
        r.max_deviation = worst_;
        r.tolerance = (!informational && options.tolerance) ? *options.tolerance : tolerance_;
        r.pass = samples_ > 0 && worst_ <= r.tolerance;
        r.informational = informational;
        r.convention_flags = flags_;
        return r;
    }

private:
    std::string id_;
    std::string relation_;
    double tolerance_;
    std::vector<std::string> flags_;
    std::size_t samples_ = 0;
    double worst_ = 0.0;
};

template <typename A, typename B>
double rel(const A& a, const B& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

template <typename A>
double size_of(const A& a) {
    return std::max(1.0, a.cwiseAbs().maxCoeff());
}

Mat4c zero4() { return Mat4c::Zero(); }
Mat4c id4() { return Mat4c::Identity(); }

std::uint64_t suite_seed(std::uint64_t seed, std::size_t index) {
    return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1);
}

// p with p.n != 0 and p.p + (p.n)^2 > 0 away from the excluded sets.
FourVector projection_momentum(Sampler& s, const FourVector& n) {
    for (;;) {
        const FourVector p = s.four_vector(2.0);
        const double pn = dot(p, n);
        if (std::abs(pn) > 0.1 && dot(p, p) + pn * pn > 0.1) return p;
    }
}

dirac::FieldTensor random_field(Sampler& s) {
    const Eigen::Vector3d e(s.normal(), s.normal(), s.normal());
    const Eigen::Vector3d b(s.normal(), s.normal(), s.normal());
    const double charge = s.uniform(0.5, 2.0);
    const double mass = s.uniform(0.5, 2.0);
    return dirac::FieldTensor::from_fields(e, b, charge, mass);
}

Mat4c block_pauli(const Eigen::Vector3d& v) {
    Mat2c m = Mat2c::Zero();
    for (int k = 0; k < 3; ++k) m += v[k] * pauli(k + 1);
    Mat4c out = Mat4c::Zero();
    out.block<2, 2>(0, 0) = m;
    out.block<2, 2>(2, 2) = m;
    return out;
}

// --- operator algebra -------------------------------------------------------

SuiteReport operator_algebra(const Options& o, std::uint64_t seed) {
    using namespace dirac;
    Sampler s(seed);
    Check clifford("clifford", "{gamma^mu, gamma^nu} = -2 g^{mu nu}", 1e-15, {kFlagClifford});
    Check g5("gamma5", "gamma^5 anticommutes with gamma^mu and squares to +1", 1e-15, {kFlagGamma5});
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) clifford.observe(rel(anticommutator(gamma(mu), gamma(nu)), -2.0 * metric(mu, nu) * id4()));
        g5.observe(rel(anticommutator(gamma5(), gamma(mu)), zero4()));
    }
    g5.observe(rel(gamma5() * gamma5(), id4()));

    Check kl2("kl_squared", "K_L^2 = (p.n)^2", 1e-9, {kFlagClifford});
    Check kt2("kt_squared", "K_T^2 = p^2 + (p.n)^2", 1e-9, {kFlagClifford, kFlagGamma5});
    Check diff("kt2_minus_kl2", "K_T^2 - K_L^2 = p^2", 1e-9);
    Check k0("free_k0_scalar", "(K_T^2 - K_L^2) / 2M = (p.p / 2M) I", 1e-12);
    Check kn("k_dot_n", "K^mu n_mu = 0", 1e-9);
    Check sn("n_dot_sigma_n", "n_mu Sigma_n^{mu nu} = 0", 1e-9);
    Check comm("kt_kl_commute", "[K_T, K_L] = 0", 1e-9);
    Check kls("kl_symmetrized", "-(p.n) gamma.n = (gamma.p + gamma.n gamma.p gamma.n) / 2", 1e-9);
    Check kts("kt_symmetrized", "-2i gamma^5 (p.K)(gamma.n) = gamma^5 (gamma.p - gamma.n gamma.p gamma.n) / 2", 1e-9);
    Check proj("sigma_n_projected", "Sigma_n^{mu nu} = (i/4)[gamma_n^mu, gamma_n^nu]", 1e-9);
    Check kk("commutator_k_k", "[K^mu, K^nu] = -i Sigma_n^{mu nu}", 1e-9);
    Check sk("commutator_sigma_k", "[Sigma_n^{mu nu}, K^l] = i(pi^{mu l} K^nu - pi^{nu l} K^mu)", 1e-9, {kFlagCommutator});
    Check ss("commutator_sigma_sigma",
             "[Sigma_n^{mu nu}, Sigma_n^{l s}] = i(pi^{mu l} S^{nu s} - pi^{nu l} S^{mu s} + pi^{mu s} S^{l nu} - pi^{nu s} S^{l mu})",
             1e-9, {kFlagCommutator});
    Check sk_lit("commutator_sigma_k_literal", "[Sigma_n^{mu nu}, K^l] = -i[(g^{mu l} + n^nu n^l) K^mu - (g^{mu l} + n^mu n^l) K^nu]", 1e-9);
    Check ss_lit("commutator_sigma_sigma_literal",
                 "[Sigma_n^{mu nu}, Sigma_n^{l s}] = -i[pi^{nu l} S^{mu s} + pi^{s mu} S^{l nu} - pi^{mu l} S^{nu s} + pi^{s nu} S^{l nu}]", 1e-9);
    Check cov("sigma_n_covariance", "S^-1 Sigma_{Lambda n}^{mu nu} S Lambda_mu^l Lambda_nu^s = Sigma_n^{l s}", 1e-9);
    Check gcov("gamma_covariance", "S^-1 gamma^l S = Lambda^l_nu gamma^nu", 1e-9);
    Check herm("sector_hermitian", "eta O = O^dagger eta for K_L, K_T, spin Hamiltonian, dipole term", 1e-9);
    Check not_herm("gamma_p_not_sector_hermitian", "shortfall of min |eta gamma.p - (gamma.p)^dagger eta| below 1e-3", 1e-12);
    Check pid("projections_idempotent", "P^2 = P for sector, energy and helicity pairs", 1e-9, {kFlagClifford, kFlagGamma5});
    Check port("projections_orthogonal", "P_+ P_- = 0", 1e-9);
    Check pcomp("projections_complete", "P_+ + P_- = 1", 1e-12);
    Check pcommute("projections_commute", "sector, energy and helicity projections commute", 1e-9);

    for (std::size_t i = 0; i < o.samples; ++i) {
        const FourVector n = s.unit_timelike(2.0);
        const FourVector p = s.four_vector(2.0);
        const SL2CElement lam = s.sl2c(1.5);
        const double pn = dot(p, n);
        const double pp = dot(p, p);

        const Mat4c kl = k_l(p, n);
        const Mat4c kt = k_t(p, n);
        kl2.observe(rel(kl * kl, pn * pn * id4()));
        kt2.observe(rel(kt * kt, (pp + pn * pn) * id4()));
        diff.observe(rel(kt * kt - kl * kl, pp * id4()));
        k0.observe(rel(free_k0(p, 1.3), pp / 2.6 * id4()));
        comm.observe(commutator(kt, kl).cwiseAbs().maxCoeff() / std::max(1.0, size_of(kt) * size_of(kl)));
        kls.observe(rel(kl, k_l_symmetrized(p, n)));
        kts.observe(rel(kt, k_t_symmetrized(p, n)));

        std::array<Mat4c, 4> k;
        std::array<std::array<Mat4c, 4>, 4> sig;
        for (int mu = 0; mu < 4; ++mu) {
            k[static_cast<std::size_t>(mu)] = k_vec(mu, n);
            for (int nu = 0; nu < 4; ++nu) sig[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] = sigma_n(mu, nu, n);
        }
        auto K = [&](int mu) -> const Mat4c& { return k[static_cast<std::size_t>(mu)]; };
        auto S = [&](int mu, int nu) -> const Mat4c& {
            return sig[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)];
        };
        auto pi = [&](int a, int b) { return projector(a, b, n); };

        Mat4c kdn = zero4();
        for (int mu = 0; mu < 4; ++mu) kdn += n.lower(mu) * K(mu);
        kn.observe(rel(kdn, zero4()) / size_of(K(0)));
        for (int nu = 0; nu < 4; ++nu) {
            Mat4c c = zero4();
            for (int mu = 0; mu < 4; ++mu) c += n.lower(mu) * S(mu, nu);
            sn.observe(c.cwiseAbs().maxCoeff() / size_of(S(0, nu)));
        }

        std::array<Mat4c, 4> gn;
        for (int mu = 0; mu < 4; ++mu) gn[static_cast<std::size_t>(mu)] = gamma_n(mu, n);
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                proj.observe(rel(S(mu, nu), (kI / 4.0) * commutator(gn[static_cast<std::size_t>(mu)], gn[static_cast<std::size_t>(nu)])));
                kk.observe(rel(commutator(K(mu), K(nu)), -kI * S(mu, nu)));
                for (int l = 0; l < 4; ++l) {
                    const Mat4c lhs = commutator(S(mu, nu), K(l));
                    sk.observe(rel(lhs, kI * (pi(mu, l) * K(nu) - pi(nu, l) * K(mu))));
                    const double a = metric(mu, l) + n[nu] * n[l];
                    const double b = metric(mu, l) + n[mu] * n[l];
                    sk_lit.observe(rel(lhs, -kI * (a * K(mu) - b * K(nu))));
                    for (int t = 0; t < 4; ++t) {
                        const Mat4c lhs2 = commutator(S(mu, nu), S(l, t));
                        ss.observe(rel(lhs2, kI * (pi(mu, l) * S(nu, t) - pi(nu, l) * S(mu, t) + pi(mu, t) * S(l, nu) -
                                                   pi(nu, t) * S(l, mu))));
                        ss_lit.observe(rel(lhs2, -kI * (pi(nu, l) * S(mu, t) + pi(t, mu) * S(l, nu) - pi(mu, l) * S(nu, t) +
                                                        pi(t, nu) * S(l, nu))));
                    }
                }
            }
        }

        // Covariance under S(Lambda).
        const LorentzMatrix L = spinor_map(lam);
        const Eigen::Matrix4d Linv = L.inverse().matrix();
        const FourVector np = apply(L, n);
        const Mat4c sm = s_lambda(lam);
        const Mat4c sinv = sm.inverse();
        std::array<std::array<Mat4c, 4>, 4> conj;
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) conj[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] = sinv * sigma_n(mu, nu, np) * sm;
        }
        for (int l = 0; l < 4; ++l) {
            for (int t = 0; t < 4; ++t) {
                Mat4c lhs = zero4();
                for (int mu = 0; mu < 4; ++mu) {
                    for (int nu = 0; nu < 4; ++nu) {
                        lhs += Linv(l, mu) * Linv(t, nu) * conj[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)];
                    }
                }
                cov.observe(rel(lhs, S(l, t)));
            }
            Mat4c rhs = zero4();
            for (int nu = 0; nu < 4; ++nu) rhs += L(l, nu) * gamma(nu);
            gcov.observe(rel(sinv * gamma(l) * sm, rhs));
        }

        // Hermiticity in the sector product.
        const FieldTensor f = random_field(s);
        for (const Mat4c& op : {kl, kt, spin_hamiltonian(p, n, f), dipole_rhs(n, f)}) {
            herm.observe(sector_hermiticity_defect(op, n) / std::max(1.0, size_of(op) * size_of(sector_metric(n))));
        }
        const double defect = sector_hermiticity_defect(slash(p), n);
        not_herm.observe(std::max(0.0, 1e-3 - defect));

        // Projections.
        const FourVector q = projection_momentum(s, n);
        const Projections pr = projections(q, n);
        for (const ProjectorPair* pair : {&pr.sector, &pr.energy, &pr.helicity}) {
            pid.observe(rel(pair->plus * pair->plus, pair->plus));
            pid.observe(rel(pair->minus * pair->minus, pair->minus));
            port.observe(rel(pair->plus * pair->minus, zero4()));
            port.observe(rel(pair->minus * pair->plus, zero4()));
            pcomp.observe(rel(pair->plus + pair->minus, id4()));
        }
        pcommute.observe(rel(commutator(pr.sector.plus, pr.helicity.plus), zero4()));
        pcommute.observe(rel(commutator(pr.sector.plus, pr.energy.plus), zero4()));
        pcommute.observe(rel(commutator(pr.energy.plus, pr.helicity.plus), zero4()));
    }

    SuiteReport r{"operator_algebra", {}};
    for (const Check* c : {&clifford, &g5, &kl2, &kt2, &diff, &k0, &kn, &sn, &comm, &kls, &kts, &proj, &kk, &sk, &ss, &cov,
                           &gcov, &herm, &not_herm, &pid, &port, &pcomp, &pcommute}) {
        r.records.push_back(c->record(o));
    }
    r.records.push_back(sk_lit.record(o, true));
    r.records.push_back(ss_lit.record(o, true));
    return r;
}

// --- little group ------------------------------------------------------------

FourVector transform_inverse(const SL2CElement& lam, const FourVector& n) { return apply(spinor_map(lam.inverse()), n); }

SuiteReport little_group(const Options& o, std::uint64_t seed) {
    Sampler s(seed);
    Check su2("su2_membership", "D(Lambda, n) is unitary with det 1", 1e-10);
    Check cocycle("cocycle", "D(L1 L2, n) = D(L1, n) D(L2, L1^-1 n)", 1e-9, {kFlagWigner});
    Check hom("spinor_map_homomorphism", "Phi(A B) = Phi(A) Phi(B)", 1e-9);
    Check map("spinor_map_action", "A X(n) A^dagger = X(Phi(A) n)", 1e-9);
    Check contr("covariant_contraction", "B^dagger (sigma^mu n_mu) B = sigma^mu (Phi(B)^-1 n)_mu", 1e-9);
    Check cboost("canonical_boost", "L(n) is positive Hermitian with Phi(L(n)) n0 = n", 1e-9);
    Check collinear("collinear_identity", "D(B2, n) = 1 for n = B1 n0 with B1, B2 along one axis", 1e-10);
    Check perp("perpendicular_boost_angle", "tan(theta/2) = tanh(w1/2) tanh(w2/2) for perpendicular boosts", 1e-9);
    Check mom("momentum_orbit", "momentum construction with L(p/m) equals the n construction at n = p/m", 1e-9);
    Check induced("induced_composition", "T(L1) T(L2) = T(L1 L2) on packet states", 1e-9, {kFlagWigner});
    Check lift_check("lift_roundtrip", "Phi(lift(Lambda)) = Lambda", 1e-9);
    Check gen("generator_order", "|Phi(exp(eps xi)) - (1 + eps G)| scales as eps^2", 0.02);
    Check gen_dirac("spinor_generator_order", "|S(exp(eps xi)) - (1 - i eps Sigma^{mu nu})| scales as eps^2", 0.02);

    for (std::size_t i = 0; i < o.samples; ++i) {
        const SL2CElement a = s.sl2c(1.5);
        const SL2CElement b = s.sl2c(1.5);
        const FourVector n = s.unit_timelike(2.0);

        const WignerRotation d = wigner_d(a, n);
        su2.observe(std::max(d.unitarity_defect(), d.determinant_defect()));
        const Mat2c lhs = wigner_d(a * b, n).matrix();
        const Mat2c rhs = d.matrix() * wigner_d(b, transform_inverse(a, n)).matrix();
        cocycle.observe(rel(lhs, rhs));

        hom.observe(rel(spinor_map(a * b).matrix(), spinor_map(a).matrix() * spinor_map(b).matrix()));
        const Mat2c x = a.matrix() * hermitian_of(n) * a.matrix().adjoint();
        map.observe(rel(x, hermitian_of(apply(spinor_map(a), n))));

        // sigma^mu n_mu = -(n^0 I - n.sigma)
        auto covariant = [](const FourVector& v) {
            Mat2c m = Mat2c::Zero();
            for (int mu = 0; mu < 4; ++mu) m += v.lower(mu) * pauli(mu);
            return m;
        };
        contr.observe(rel(b.matrix().adjoint() * covariant(n) * b.matrix(), covariant(transform_inverse(b, n))));

        const SL2CElement l = canonical_boost(n);
        const Eigen::SelfAdjointEigenSolver<Mat2c> es(l.matrix());
        cboost.observe(std::max({rel(l.matrix(), Mat2c(l.matrix().adjoint())),
                                 std::max(0.0, -es.eigenvalues().minCoeff()),
                                 rel(apply(spinor_map(l), kRestFrame).vec(), n.vec())}));

        const Eigen::Vector3d axis = s.unit_vector();
        const double w1 = s.uniform(-2.0, 2.0);
        const double w2 = s.uniform(-2.0, 2.0);
        const FourVector nc = apply(spinor_map(SL2CElement::boost(axis, w1)), kRestFrame);
        collinear.observe(rel(wigner_d(SL2CElement::boost(axis, w2), nc).matrix(), Mat2c(Mat2c::Identity())));

        // Perpendicular pair built in a random orientation.
        const Eigen::Vector3d u1 = s.unit_vector();
        Eigen::Vector3d u2 = s.unit_vector();
        u2 = (u2 - u2.dot(u1) * u1).normalized();
        const double r1 = s.uniform(0.1, 2.0);
        const double r2 = s.uniform(0.1, 2.0);
        const SL2CElement b1 = SL2CElement::boost(u1, r1);
        const SL2CElement b2 = SL2CElement::boost(u2, r2);
        const FourVector n1 = apply(spinor_map(b1), kRestFrame);
        const double angle = wigner_d(b2, apply(spinor_map(b2), n1)).angle();
        perp.observe(std::abs(angle - 2.0 * std::atan(std::tanh(r1 / 2.0) * std::tanh(r2 / 2.0))));

        const double m = s.uniform(0.5, 3.0);
        const FourVector pm = m * n;
        mom.observe(rel(momentum_wigner_d(a, pm, m).matrix(), d.matrix()));

        InducedPacketState st;
        st.n = n;
        st.spin = s.spinor().normalized();
        st.center_x = s.four_vector(1.0);
        st.center_p = s.four_vector(1.0);
        st.width = s.uniform(0.5, 2.0);
        const InducedPacketState two = induced_transform(induced_transform(st, b), a);
        const InducedPacketState one = induced_transform(st, a * b);
        induced.observe(std::max({rel(two.spin, one.spin), rel(two.n.vec(), one.n.vec()),
                                  rel(two.center_x.vec(), one.center_x.vec()), rel(two.center_p.vec(), one.center_p.vec()),
                                  std::abs(two.width - one.width)}));

        const LorentzMatrix lm = s.lorentz(2.0);
        lift_check.observe(rel(spinor_map(lift(lm)).matrix(), lm.matrix()));
    }

    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu + 1; nu < 4; ++nu) {
            const Eigen::Matrix4d g = lorentz_generator(mu, nu);
            auto err = [&](double eps) {
                return (spinor_map(generator_exponential(mu, nu, eps)).matrix() - (Eigen::Matrix4d::Identity() + eps * g))
                    .cwiseAbs()
                    .maxCoeff();
            };
            auto err_dirac = [&](double eps) {
                return (dirac::s_lambda(generator_exponential(mu, nu, eps)) - (id4() - kI * eps * dirac::sigma(mu, nu)))
                    .cwiseAbs()
                    .maxCoeff();
            };
            for (double eps : {1e-2, 5e-3, 2.5e-3}) {
                gen.observe(std::abs(std::log2(err(eps) / err(eps / 2.0)) - 2.0));
                gen_dirac.observe(std::abs(std::log2(err_dirac(eps) / err_dirac(eps / 2.0)) - 2.0));
            }
        }
    }

    SuiteReport r{"little_group", {}};
    for (const Check* c : {&su2, &cocycle, &hom, &map, &contr, &cboost, &collinear, &perp, &mom, &induced, &lift_check, &gen,
                           &gen_dirac}) {
        r.records.push_back(c->record(o));
    }
    return r;
}

// --- rest frame --------------------------------------------------------------

SuiteReport rest_frame(const Options& o, std::uint64_t seed) {
    using namespace dirac;
    Sampler s(seed);
    const FourVector n0 = kRestFrame;
    Check s0j("sigma_n_0j", "Sigma_n^{0j} = 0 at n = (1,0,0,0)", 1e-12);
    Check sij("sigma_n_ij_spectrum", "Sigma_n^{ij} has eigenvalues +1/2, +1/2, -1/2, -1/2 at n = (1,0,0,0)", 1e-12);
    Check pauli_form("sigma_n_ij_pauli", "Sigma_n^{ij} = diag(sigma^k, sigma^k) / 2 with (i,j,k) cyclic", 1e-12);
    Check closure("su2_closure", "[Sigma_n^{12}, Sigma_n^{23}] = i Sigma_n^{31} and cyclic", 1e-12);
    Check hel("helicity_limit", "2i gamma^5 K.p / |q| -> -diag(sigma.p, sigma.p)/|p| as n -> (1,0,0,0)", 1e-12, {kFlagHelicity});
    Check mono("helicity_limit_monotone", "deviation along the limit sequence never increases", 1e-15, {kFlagHelicity});
    Check mag("spin_term_magnetic", "B along z: spin term eigenvalues +-(e/2M)|B|", 1e-12);
    Check elec("spin_term_electric", "pure electric field: spin term vanishes at n = (1,0,0,0)", 1e-12);
    Check dip("dipole_electric", "dipole term = -e diag(sigma.E, sigma.E) at n = (1,0,0,0), eigenvalues +-e|E|", 1e-12, {kFlagDipole});
    Check dipm("dipole_magnetic", "pure magnetic field: dipole term vanishes at n = (1,0,0,0)", 1e-12);

    for (int j = 1; j < 4; ++j) s0j.observe(sigma_n(0, j, n0).cwiseAbs().maxCoeff());
    const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (const auto& c : cyc) {
        const Mat4c m = sigma_n(c[0], c[1], n0);
        Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Mat4c>(m).eigenvalues();
        std::sort(ev.data(), ev.data() + 4);
        sij.observe((ev - Eigen::Vector4d(-0.5, -0.5, 0.5, 0.5)).cwiseAbs().maxCoeff());
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e[c[2] - 1] = 1.0;
        pauli_form.observe(rel(m, 0.5 * block_pauli(e)));
        closure.observe(rel(commutator(sigma_n(c[0], c[1], n0), sigma_n(c[1], c[2], n0)), kI * sigma_n(c[2], c[0], n0)));
    }

    const std::size_t limit_samples = std::max<std::size_t>(1, o.samples / 10);
    for (std::size_t i = 0; i < limit_samples; ++i) {
        Eigen::Vector3d pv(s.normal(), s.normal(), s.normal());
        const FourVector p(s.normal(), pv[0], pv[1], pv[2]);
        const Mat4c target = -block_pauli(pv / pv.norm());
        const Eigen::Vector3d dir = s.unit_vector();
        double prev = kInf;
        double worst_increase = 0.0;
        for (int k = 3; k <= 40; ++k) {
            const double w = std::ldexp(1.0, -k);
            const FourVector nk(std::cosh(w), std::sinh(w) * dir[0], std::sinh(w) * dir[1], std::sinh(w) * dir[2]);
            const double dev = (helicity_operator(p, nk) - target).cwiseAbs().maxCoeff();
            if (dev > 1e-13) worst_increase = std::max(worst_increase, dev - prev);
            prev = dev;
        }
        hel.observe((helicity_operator(p, n0) - target).cwiseAbs().maxCoeff());
        mono.observe(worst_increase);

        const double bz = s.uniform(0.1, 3.0);
        const double e = s.uniform(0.5, 2.0);
        const double m = s.uniform(0.5, 2.0);
        const FieldTensor fb = FieldTensor::from_fields(Eigen::Vector3d::Zero(), Eigen::Vector3d(0.0, 0.0, bz), e, m);
        const Mat4c term = spin_coupling_term(n0, fb);
        Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Mat4c>(term).eigenvalues();
        std::sort(ev.data(), ev.data() + 4);
        const double x = e * bz / (2.0 * m);
        mag.observe((ev - Eigen::Vector4d(-x, -x, x, x)).cwiseAbs().maxCoeff());

        const Eigen::Vector3d ef(s.normal(), s.normal(), s.normal());
        const FieldTensor fe = FieldTensor::from_fields(ef, Eigen::Vector3d::Zero(), e, m);
        elec.observe(spin_coupling_term(n0, fe).cwiseAbs().maxCoeff());
        const Mat4c dterm = dipole_rhs(n0, fe);
        Eigen::Vector4d dv = Eigen::SelfAdjointEigenSolver<Mat4c>(dterm).eigenvalues();
        std::sort(dv.data(), dv.data() + 4);
        const double y = e * ef.norm();
        dip.observe(std::max(rel(dterm, -e * block_pauli(ef)), (dv - Eigen::Vector4d(-y, -y, y, y)).cwiseAbs().maxCoeff()));
        const FieldTensor fm = FieldTensor::from_fields(Eigen::Vector3d::Zero(), ef, e, m);
        dipm.observe(dipole_rhs(n0, fm).cwiseAbs().maxCoeff());
    }

    SuiteReport r{"rest_frame", {}};
    for (const Check* c : {&s0j, &sij, &pauli_form, &closure, &hel, &mono, &mag, &elec, &dip, &dipm}) r.records.push_back(c->record(o));
    return r;
}

// --- sector norm -------------------------------------------------------------

SuiteReport sector_norm_suite(const Options& o, std::uint64_t seed) {
    using namespace dirac;
    Sampler s(seed);
    Check norm("assembled_norm", "sector norm of the assembled spinor = |psi_hat|^2 + |phi_hat|^2", 1e-10, {kFlagClifford});
    Check past("assembled_norm_past_cone", "same identity with n in the past cone", 1e-10);
    Check inv("norm_lorentz_invariance", "sector norm of S(Lambda) psi at Lambda n = sector norm of psi at n", 1e-10);
    Check covar("spinor_covariance", "assemble(D psi_hat, D phi_hat at Lambda n) = S(Lambda) assemble(psi_hat, phi_hat at n)", 1e-9);
    Check ident("s_lambda_identity", "S(1) = 1", 1e-15);
    ident.observe(rel(s_lambda(SL2CElement::identity()), id4()));

    for (std::size_t i = 0; i < o.samples; ++i) {
        const FourVector n = s.unit_timelike(2.0);
        TwoSpinorPair pair;
        pair.psi_hat = s.spinor();
        pair.phi_hat = s.spinor();
        pair.n = n;
        const double expected = pair.psi_hat.squaredNorm() + pair.phi_hat.squaredNorm();
        const FourSpinor psi = assemble_spinor(pair);
        norm.observe(std::abs(sector_norm(psi) - expected) / std::max(1.0, expected));

        TwoSpinorPair past_pair = pair;
        past_pair.n = -1.0 * n;
        past.observe(std::abs(sector_norm(assemble_spinor(past_pair)) - expected) / std::max(1.0, expected));

        const SL2CElement lam = s.sl2c(1.5);
        const FourVector np = apply(spinor_map(lam), n);
        FourSpinor moved{s_lambda(lam) * psi.psi, np};
        inv.observe(std::abs(sector_norm(moved) - sector_norm(psi)) / std::max(1.0, expected));

        const Mat2c d = wigner_d(lam, np).matrix();
        TwoSpinorPair turned{d * pair.psi_hat, d * pair.phi_hat, np};
        covar.observe(rel(assemble_spinor(turned).psi, moved.psi));
    }

    SuiteReport r{"sector_norm", {}};
    for (const Check* c : {&norm, &past, &inv, &covar, &ident}) r.records.push_back(c->record(o));
    return r;
}

// --- spin coupling -----------------------------------------------------------

SuiteReport spin_suite(const Options& o, std::uint64_t seed) {
    Sampler s(seed);
    Check orth("cg_orthogonality", "<j1 m1; j2 m2 | J M> is an orthogonal matrix", 1e-12);
    Check known("cg_values", "singlet coefficients +-1/sqrt 2 and highest weight 1", 1e-15);
    Check sing("singlet_invariance", "(D x D) singlet = phase * singlet, |phase| = 1", 1e-10);
    Check rpi("r_pi_exchange", "(R_pi x R_pi) psi = -exchange(psi) on M = 0 product states", 1e-10, {kFlagRpi});
    Check rpi_lit("r_pi_exchange_any_product", "(R_pi x R_pi) psi = -exchange(psi) on every product state", 1e-10, {kFlagRpi});
    Check fiber("fiber_mismatch", "coupling across different n or tau raises FiberMismatch", 0.5);
    Check excl("pauli_exclusion", "antisymmetrizing a state with itself raises PauliExclusion", 0.5);
    Check exch("exchange_parity", "singlet is odd and triplet M = 0 even under exchange", 1e-15);
    Check comp("spin_weights_complete", "total-spin weights sum to 1", 1e-12);

    for (int tj1 = 0; tj1 <= 4; ++tj1) {
        for (int tj2 = 0; tj2 <= 4; ++tj2) {
            const HalfInt j1 = HalfInt::from_twice(tj1);
            const HalfInt j2 = HalfInt::from_twice(tj2);
            const int dim = multiplicity(j1) * multiplicity(j2);
            Eigen::MatrixXd u(dim, dim);
            int col = 0;
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                const HalfInt J = HalfInt::from_twice(tJ);
                for (int k = 0; k < multiplicity(J); ++k) {
                    const Eigen::MatrixXd c = cg_matrix(j1, j2, J, m_at(J, k));
                    u.col(col++) = Eigen::Map<const Eigen::VectorXd>(c.data(), dim);
                }
            }
            orth.observe((u.transpose() * u - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
        }
    }
    known.observe(std::abs(cg(0.5, 0.5, 0.5, -0.5, 0.0, 0.0) - 1.0 / std::sqrt(2.0)));
    known.observe(std::abs(cg(0.5, -0.5, 0.5, 0.5, 0.0, 0.0) + 1.0 / std::sqrt(2.0)));
    for (double j1 : {0.5, 1.0, 1.5, 2.0}) {
        for (double j2 : {0.5, 1.0, 2.5}) known.observe(std::abs(cg(j1, j1, j2, j2, j1 + j2, j1 + j2) - 1.0));
    }

    const SpinState up = SpinState::basis(kHalf, kHalf);
    const SpinState down = SpinState::basis(kHalf, -kHalf);
    const TwoBodySpinState singlet_state = singlet();
    const TwoBodySpinState triplet0 = couple_two(up, down, HalfInt::from_twice(2), HalfInt::from_twice(0));
    exch.observe(rel(exchange(singlet_state).coefficients, Eigen::MatrixXcd(-singlet_state.coefficients)));
    exch.observe(rel(exchange(triplet0).coefficients, triplet0.coefficients));

    const Mat2c rpi_m = SL2CElement::rotation(Eigen::Vector3d::UnitY(), std::numbers::pi).matrix();
    for (const auto& [a, b] : {std::pair{up, down}, std::pair{down, up}}) {
        const TwoBodySpinState prod = tensor_product(a, b);
        rpi.observe(rel(apply_local(rpi_m, rpi_m, prod).coefficients, Eigen::MatrixXcd(-exchange(prod).coefficients)));
    }
    for (const auto& [a, b] : {std::pair{up, up}, std::pair{up, down}, std::pair{down, up}, std::pair{down, down}}) {
        const TwoBodySpinState prod = tensor_product(a, b);
        rpi_lit.observe(rel(apply_local(rpi_m, rpi_m, prod).coefficients, Eigen::MatrixXcd(-exchange(prod).coefficients)));
    }

    auto raises_fiber = [&](const SpinState& a, const SpinState& b) {
        try {
            couple_two(a, b, HalfInt::from_twice(0), HalfInt::from_twice(0));
        } catch (const FiberMismatch&) {
            return 0.0;
        }
        return 1.0;
    };
    SpinState shifted = down;
    shifted.n = apply(LorentzMatrix::boost(Eigen::Vector3d::UnitX(), 1e-6), kRestFrame);
    fiber.observe(raises_fiber(up, shifted));
    SpinState later = down;
    later.tau = 1e-6;
    fiber.observe(raises_fiber(up, later));
    try {
        symmetrize(up, up, -1);
        excl.observe(1.0);
    } catch (const PauliExclusion&) {
        excl.observe(0.0);
    }

    for (std::size_t i = 0; i < o.samples; ++i) {
        const SL2CElement lam = s.sl2c(1.5);
        const FourVector n = s.unit_timelike(2.0);
        const Mat2c d = wigner_d(lam, n).matrix();
        const Eigen::MatrixXcd moved = apply_local(d, d, singlet_state).coefficients;
        const cd phase = (singlet_state.coefficients.adjoint() * moved).trace();
        sing.observe(std::max(rel(moved, Eigen::MatrixXcd(phase * singlet_state.coefficients)), std::abs(std::abs(phase) - 1.0)));

        const cd alpha = s.complex_normal();
        const cd beta = s.complex_normal();
        Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(2, 2);
        m0(0, 1) = alpha;
        m0(1, 0) = beta;
        TwoBodySpinState mixed;
        mixed.coefficients = m0 / m0.norm();
        rpi.observe(rel(apply_local(rpi_m, rpi_m, mixed).coefficients, Eigen::MatrixXcd(-exchange(mixed).coefficients)));

        TwoBodySpinState random_state;
        Eigen::MatrixXcd c(2, 2);
        c << s.complex_normal(), s.complex_normal(), s.complex_normal(), s.complex_normal();
        random_state.coefficients = c / c.norm();
        double total = 0.0;
        for (const auto& [j, w] : total_spin_decompose(random_state)) total += w;
        comp.observe(std::abs(total - 1.0));

        Eigen::VectorXcd v(8);
        for (int k = 0; k < 8; ++k) v[k] = s.complex_normal();
        v.normalize();
        double total3 = 0.0;
        for (const auto& [j, w] : total_spin_decompose({kHalf, kHalf, kHalf}, v)) total3 += w;
        comp.observe(std::abs(total3 - 1.0));
    }

    SuiteReport r{"spin_coupling", {}};
    for (const Check* c : {&orth, &known, &sing, &rpi, &fiber, &excl, &exch, &comp}) r.records.push_back(c->record(o));
    r.records.push_back(rpi_lit.record(o, true));
    return r;
}

// --- evolution ---------------------------------------------------------------

SuiteReport evolution_suite(const Options& o, std::uint64_t seed) {
    Sampler s(seed);
    Check qnorm("quantum_norm_drift", "grid norm constant over 10^4 free-evolution steps", 1e-10);
    Check gauss("gaussian_pointwise", "|a(p)|^2 of a Gaussian packet invariant under free evolution", 1e-12);
    Check two("two_body_factorization", "evolving a product equals the product of evolved factors", 1e-12);
    Check kcons("classical_k_conservation", "relative change of K over 10^4 RK4 steps", 1e-8);
    Check free_line("free_trajectory", "x(tau) = x(0) + p tau / M", 1e-12);
    Check einstein("observed_velocity", "dx/dt = p / E along free trajectories", 1e-12);
    Check shell("proper_time_rate", "ds/dtau = m / M along free trajectories", 1e-12);
    Check canon("poisson_canonical", "{x^mu, p_nu} = delta^mu_nu", 1e-8);
    Check flow("poisson_flow", "dF/dtau along a trajectory = {F, K} for F = x^1 p^2", 1e-7);
    Check te("time_energy_gaussian", "Gaussian packet: Delta t Delta E = 1/2", 1e-9);
    Check te_fs("min_energy_spread", "Delta t = 0.75 fs Gaussian gives Delta E = hbar / (2 * 0.75 fs)", 1e-9);
    Check moments("mass_moments_two_point", "equal weights on m^2 = 1 and 4 give mean 2.5", 1e-12);

    {
        GridPacket g = gaussian_energy_packet(3.0, 1.2, 2.0, 256, 8.0);
        const double n0 = g.norm();
        const double dtau = 0.37;
        for (int k = 0; k < 10000; ++k) {
            g = free_evolve(g, dtau);
            if (k % 100 == 99) qnorm.observe(std::abs(g.norm() - n0));
        }
    }
    {
        GaussianPacket gp;
        gp.center = FourVector(2.0, 0.3, -0.2, 0.1);
        gp.widths = Eigen::Vector4d(0.2, 0.1, 0.15, 0.3);
        gp.mass = 1.7;
        const GaussianPacket later = free_evolve(gp, 12.5);
        for (int k = 0; k < 64; ++k) {
            const FourVector p = gp.center + FourVector(0.3 * s.normal(), 0.2 * s.normal(), 0.2 * s.normal(), 0.3 * s.normal());
            gauss.observe(std::abs(std::norm(later.amplitude(p)) - std::norm(gp.amplitude(p))));
        }
    }
    {
        const GridPacket a = gaussian_energy_packet(2.0, 1.0, 1.5, 64);
        const GridPacket b = gaussian_energy_packet(3.5, 0.7, 2.5, 48);
        const double dtau = 3.3;
        const TwoBodyGridPacket lhs = free_evolve(TwoBodyGridPacket::product(a, b), dtau);
        const TwoBodyGridPacket rhs = TwoBodyGridPacket::product(free_evolve(a, dtau), free_evolve(b, dtau));
        for (std::size_t k = 0; k < lhs.re.size(); ++k) {
            two.observe(std::abs(cd(lhs.re[k], lhs.im[k]) - cd(rhs.re[k], rhs.im[k])));
        }
    }
    {
        const ClassicalModel osc = ClassicalModel::harmonic(1.5, 0.8);
        const PhasePoint start{FourVector(0.2, 1.0, -0.5, 0.3), FourVector(2.0, 0.1, 0.4, -0.2), 0.0};
        const StepSelection sel = select_step(start, osc, 1.0);
        const std::vector<PhasePoint> traj = classical_integrate(start, osc, sel.dtau, 10000);
        const double k0 = osc.hamiltonian(start);
        for (const PhasePoint& pt : traj) kcons.observe(std::abs(osc.hamiltonian(pt) - k0) / std::abs(k0));

        const PhasePoint mid = traj[traj.size() / 2];
        auto f = [](const PhasePoint& z) { return z.x[1] * z.p[2]; };
        auto kf = [&osc](const PhasePoint& z) { return osc.hamiltonian(z); };
        const double h = 1e-2;
        const std::vector<PhasePoint> fwd = classical_integrate(mid, osc, h, 2);
        PhasePoint rev = mid;
        rev.p = -1.0 * mid.p;
        rev.x = mid.x;
        // Backward points from integrating the time-reversed motion.
        const std::vector<PhasePoint> bwd = classical_integrate(rev, osc, h, 2);
        const double d = (-f(fwd[2]) + 8.0 * f(fwd[1]) - 8.0 * f(PhasePoint{bwd[1].x, -1.0 * bwd[1].p, 0.0}) +
                          f(PhasePoint{bwd[2].x, -1.0 * bwd[2].p, 0.0})) /
                         (12.0 * h);
        flow.observe(std::abs(d - poisson(f, kf, mid)) / std::max(1.0, std::abs(d)));
    }
    {
        const ClassicalModel free_model = ClassicalModel::free(1.3);
        for (std::size_t i = 0; i < std::max<std::size_t>(1, o.samples / 10); ++i) {
            const double m = s.uniform(0.5, 2.0);
            const FourVector p = m * s.unit_timelike(1.5);
            const PhasePoint start{s.four_vector(1.0), p, 0.0};
            const double dtau = 0.05;
            const std::vector<PhasePoint> traj = classical_integrate(start, free_model, dtau, 100);
            for (std::size_t k = 1; k < traj.size(); ++k) {
                const double tau = static_cast<double>(k) * dtau;
                const FourVector exact = start.x + (tau / free_model.mass) * p;
                free_line.observe(rel(traj[k].x.vec(), exact.vec()));
                const FourVector dx = traj[k].x - start.x;
                einstein.observe(rel(Eigen::Vector3d(dx.spatial() / dx.t()), Eigen::Vector3d(p.spatial() / p.t())));
                shell.observe(std::abs(std::sqrt(-dot(dx, dx)) / tau - m / free_model.mass));
            }
        }
        const PhasePoint at{s.four_vector(1.0), s.four_vector(1.0), 0.0};
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                auto x_mu = [mu](const PhasePoint& z) { return z.x[mu]; };
                auto p_nu = [nu](const PhasePoint& z) { return z.p.lower(nu); };
                canon.observe(std::abs(poisson(x_mu, p_nu, at) - (mu == nu ? 1.0 : 0.0)));
            }
        }
    }
    {
        for (double dt : {0.3, 0.75, 1.0, 2.5}) {
            const Uncertainty u = time_energy_uncertainty(gaussian_energy_packet(1.0, dt, 1.0));
            te.observe(std::abs(u.product - 0.5));
        }
        const double hbar = units::kHbarEvFs;
        const Uncertainty u = time_energy_uncertainty(gaussian_energy_packet(10.0, 0.75, 1.0, 256, 8.0, hbar), hbar);
        te_fs.observe(std::abs(u.delta_e - hbar / 1.5) / (hbar / 1.5));
        te_fs.observe(std::abs(u.delta_t - 0.75) / 0.75);

        GridPacket two_point = GridPacket::sample(GridAxis{1.0, 2.0, 2}, std::nullopt, FourVector{}, 1.0,
                                                  [](const FourVector&) { return cd(1.0, 0.0); });
        two_point.normalize();
        moments.observe(std::abs(mass_moments(two_point).mean - 2.5));
    }

    SuiteReport r{"evolution", {}};
    for (const Check* c : {&qnorm, &gauss, &two, &kcons, &free_line, &einstein, &shell, &canon, &flow, &te, &te_fs, &moments}) {
        r.records.push_back(c->record(o));
    }
    return r;
}

// --- interference ------------------------------------------------------------

SuiteReport interference_suite(const Options& o, std::uint64_t seed) {
    using namespace palacios;
    Sampler s(seed);
    Check quad("closed_form_vs_quadrature", "closed-form P(dt) equals quadrature over T (relative, floor 1e-12 Pmax)", 1e-6);
    Check p42("fringe_period_corrected", "period for dE = 4.2 eV equals h / dE within 0.001 fs", 1e-3);
    Check p34("fringe_period_raw", "period for dE = 34 eV equals h / dE within 0.0005 fs", 5e-4);
    Check shift("energy_shift_invariance", "adding a common constant to both energies leaves P(dt) unchanged", 1e-10);
    Check shift_period("energy_shift_period", "common energy shift leaves the fitted period unchanged (fs)", 1e-7);
    Check sym("reflection_symmetry", "P(dt) = P(-dt)", 1e-12);
    Check relc("relative_coordinates", "A(t1, t2) equals its (T, dt) regrouping", 1e-12);
    Check aswap("spacetime_symmetry", "A(t1, t2) = A(t2, t1)", 1e-12);
    Check anti("total_antisymmetry", "spacetime x singlet changes sign under full exchange", 1e-12);
    Check nonneg("nonnegative", "P(dt) >= 0", 0.0);
    Check vis_far("visibility_separated", "emission spacing 5 fs, sigma 0.5 fs: visibility below 1e-5", 1e-5);
    Check vis_same("visibility_coincident", "zero emission spacing: 1 - visibility", 1e-4);
    Check flat("equal_energies_flat", "equal energies give a flat scan", 0.5);
    Check guard("nyquist_guard", "too coarse a grid raises AliasingError", 0.5);

    const EmissionConfig corrected = EmissionConfig::corrected_energies();
    const EmissionConfig raw = EmissionConfig::raw_energies();
    for (const EmissionConfig* c : {&corrected, &raw}) {
        std::vector<double> cf;
        std::vector<double> qd;
        for (int k = 0; k <= 400; ++k) {
            const double d = -4.0 + 0.02 * k;
            cf.push_back(coincidence_probability(*c, d));
            qd.push_back(coincidence_probability_quadrature(*c, d));
        }
        const double pmax = *std::max_element(cf.begin(), cf.end());
        for (std::size_t k = 0; k < cf.size(); ++k) quad.observe(std::abs(cf[k] - qd[k]) / std::max(cf[k], 1e-12 * pmax));
    }

    const InterferenceResult rc = scan_interference(corrected, -4.0, 4.0, 2001);
    p42.observe(std::abs(rc.fringe_period - units::kPlanckEvFs / 4.2));
    const InterferenceResult rr = scan_interference(raw, -2.0, 2.0, 4001);
    p34.observe(std::abs(rr.fringe_period - units::kPlanckEvFs / 34.0));
    for (double v : rc.probability) nonneg.observe(std::max(0.0, -v));
    for (std::size_t k = 0; k < rc.probability.size(); ++k) {
        sym.observe(std::abs(rc.probability[k] - rc.probability[rc.probability.size() - 1 - k]));
    }

    EmissionConfig shifted = corrected;
    shifted.e1 += 510998.95;
    shifted.e2 += 510998.95;
    const InterferenceResult rs = scan_interference(shifted, -4.0, 4.0, 2001);
    const double pmax = *std::max_element(rc.probability.begin(), rc.probability.end());
    for (std::size_t k = 0; k < rs.probability.size(); ++k) shift.observe(std::abs(rs.probability[k] - rc.probability[k]) / pmax);
    shift_period.observe(std::abs(rs.fringe_period - rc.fringe_period));

    for (std::size_t i = 0; i < std::max<std::size_t>(1, o.samples / 10); ++i) {
        const double t1 = s.uniform(-2.0, 3.0);
        const double t2 = s.uniform(-2.0, 3.0);
        const cd a = amplitude(corrected, t1, t2);
        relc.observe(std::abs(a - amplitude_relative(corrected, to_relative_coords(t1, t2))) / std::max(1.0, std::abs(a)));
        aswap.observe(std::abs(a - amplitude(corrected, t2, t1)));
        const Eigen::Matrix2cd fwd = full_state(corrected, t1, t2);
        const Eigen::Matrix2cd swapped = full_state(corrected, t2, t1).transpose();
        anti.observe(rel(swapped, Eigen::Matrix2cd(-fwd)));
    }

    EmissionConfig far = corrected;
    far.t_emit2 = 5.0;
    vis_far.observe(scan_interference(far, -8.0, 8.0, 4001).visibility);
    EmissionConfig same = corrected;
    same.t_emit2 = same.t_emit1;
    vis_same.observe(1.0 - scan_interference(same, -4.0, 4.0, 2001).visibility);
    EmissionConfig equal = corrected;
    equal.e2 = equal.e1;
    flat.observe(scan_interference(equal, -4.0, 4.0, 201).flat ? 0.0 : 1.0);
    try {
        scan_interference(raw, -4.0, 4.0, 101);
        guard.observe(1.0);
    } catch (const AliasingError&) {
        guard.observe(0.0);
    }

    SuiteReport r{"interference", {}};
    for (const Check* c : {&quad, &p42, &p34, &shift, &shift_period, &sym, &relc, &aswap, &anti, &nonneg, &vis_far, &vis_same, &flat, &guard}) {
        r.records.push_back(c->record(o));
    }
    return r;
}

using SuiteFn = SuiteReport (*)(const Options&, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"operator_algebra", &operator_algebra}, {"little_group", &little_group},   {"rest_frame", &rest_frame},
        {"sector_norm", &sector_norm_suite},     {"spin_coupling", &spin_suite},    {"evolution", &evolution_suite},
        {"interference", &interference_suite},
    };
    return r;
}

void validate(const Options& o) {
    if (o.samples == 0) throw InvalidArgument("verify: samples must be positive");
    if (o.tolerance && !(*o.tolerance > 0.0)) throw InvalidArgument("verify: tolerance must be positive");
    for (const std::string& name : o.suites) {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw InvalidArgument("verify: unknown suite '" + name + "'");
        }
    }
}

}  // namespace

bool SuiteReport::pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const IdentityRecord& r) { return !r.informational && !r.pass; }));
}

bool VerificationReport::pass() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
    std::size_t n = 0;
    for (const SuiteReport& s : suites) n += s.failures();
    return n;
}

const std::vector<ConventionFlag>& convention_flags() {
    static const std::vector<ConventionFlag> flags = {
        {kFlagClifford, "{gamma^mu, gamma^nu} = -2 g^{mu nu}: (gamma.n)^2 = +1 for unit timelike n, which the K_L, K_T "
                        "squares and the idempotent sector projections require"},
        {kFlagGamma5, "gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3 squares to +1, which makes the helicity projections idempotent"},
        {kFlagHelicity, "at n = (1,0,0,0) the helicity operator 2i gamma^5 K.p / |q| equals -diag(sigma.p, sigma.p)/|p|; "
                        "the sign is +1 for n^0 = -1"},
        {kFlagDipole, "at n = (1,0,0,0) the dipole term equals -e diag(sigma.E, sigma.E)"},
        {kFlagWigner, "the spin column is multiplied on the left by D(Lambda, Lambda n); this order composes"},
        {kFlagRpi, "(R_pi x R_pi) = -exchange holds on the M = 0 sector; on up x up it gives down x down"},
        {kFlagCommutator, "Sigma_n / K commutators checked against the closed form of the projected algebra; "
                          "the literal printed forms are reported as informational records"},
    };
    return flags;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const Options& options) {
    validate(options);
    const auto& reg = registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (reg[i].first == name) return reg[i].second(options, suite_seed(options.seed, i));
    }
    throw InvalidArgument("verify: unknown suite '" + name + "'");
}

VerificationReport run(const Options& options) {
    validate(options);
    VerificationReport report;
    report.seed = options.seed;
    report.samples = options.samples;
    for (const auto& [name, fn] : registry()) {
        if (!options.suites.empty() && std::find(options.suites.begin(), options.suites.end(), name) == options.suites.end()) {
            continue;
        }
        report.suites.push_back(run_suite(name, options));
    }
    return report;
}

}  // namespace shp::verify
