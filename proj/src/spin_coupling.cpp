#include "shp/spin_coupling.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "shp/errors.hpp"

namespace shp {

namespace {

using cd = std::complex<double>;

double raise_factor(HalfInt j, HalfInt m) {
    const double jv = j.value();
    const double mv = m.value();
    return std::sqrt(std::max(0.0, (jv - mv) * (jv + mv + 1.0)));
}

double lower_factor(HalfInt j, HalfInt m) {
    const double jv = j.value();
    const double mv = m.value();
    return std::sqrt(std::max(0.0, (jv + mv) * (jv - mv + 1.0)));
}

bool valid_projection(HalfInt j, HalfInt m) {
    return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

bool in_triangle(HalfInt j1, HalfInt j2, HalfInt J) {
    return J.twice() >= std::abs(j1.twice() - j2.twice()) && J.twice() <= j1.twice() + j2.twice() &&
           (j1.twice() + j2.twice() + J.twice()) % 2 == 0;
}

std::string describe(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    std::ostringstream os;
    os << "<" << j1.value() << " " << m1.value() << "; " << j2.value() << " " << m2.value() << " | " << J.value()
       << " " << M.value() << ">";
    return os.str();
}

// All |J M> for fixed (j1, j2, J), M = J down to -J, built by lowering the
// highest-weight state.
using CgTable = std::vector<Eigen::MatrixXd>;

CgTable build_table(HalfInt j1, HalfInt j2, HalfInt J) {
    const int d1 = multiplicity(j1);
    const int d2 = multiplicity(j2);
    Eigen::MatrixXd top = Eigen::MatrixXd::Zero(d1, d2);

    // J+ |J J> = 0 fixes the ratios along m1 + m2 = J.
    const HalfInt m1_lo = std::max(-j1, J - j2);
    const HalfInt m1_hi = std::min(j1, J + j2);
    double c = 1.0;
    top(m_index(j1, m1_lo), m_index(j2, J - m1_lo)) = c;
    for (HalfInt k = m1_lo + HalfInt::from_twice(2); k <= m1_hi; k = k + HalfInt::from_twice(2)) {
        const HalfInt prev = k - HalfInt::from_twice(2);
        c = -c * raise_factor(j1, prev) / raise_factor(j2, J - k);
        top(m_index(j1, k), m_index(j2, J - k)) = c;
    }
    top /= top.norm();
    // Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0.
    if (top(m_index(j1, m1_hi), m_index(j2, J - m1_hi)) < 0.0) top = -top;

    CgTable table;
    table.reserve(static_cast<std::size_t>(multiplicity(J)));
    table.push_back(top);
    for (int k = 1; k < multiplicity(J); ++k) {
        const Eigen::MatrixXd& cur = table.back();
        const HalfInt M = m_at(J, k - 1);
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(d1, d2);
        for (int i = 0; i < d1; ++i) {
            for (int l = 0; l < d2; ++l) {
                const double v = cur(i, l);
                if (v == 0.0) continue;
                if (i + 1 < d1) next(i + 1, l) += lower_factor(j1, m_at(j1, i)) * v;
                if (l + 1 < d2) next(i, l + 1) += lower_factor(j2, m_at(j2, l)) * v;
            }
        }
        table.push_back(next / lower_factor(J, M));
    }
    return table;
}

const CgTable& cached_table(HalfInt j1, HalfInt j2, HalfInt J) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<const CgTable>> cache;
    const auto key = std::make_tuple(j1.twice(), j2.twice(), J.twice());
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<const CgTable>(build_table(j1, j2, J))).first;
    }
    return *it->second;
}

void require_spin(HalfInt j, const char* what) {
    if (j.twice() < 0) throw InvalidArgument(std::string(what) + ": spin must be non-negative");
}

SymmetryTag detect_symmetry(const Eigen::MatrixXcd& c) {
    const double tol = 1e-10;
    if ((c - c.transpose()).norm() <= tol) return SymmetryTag::Symmetric;
    if ((c + c.transpose()).norm() <= tol) return SymmetryTag::Antisymmetric;
    return SymmetryTag::None;
}

}  // namespace

HalfInt HalfInt::from_double(double v) {
    const double t = 2.0 * v;
    const double r = std::round(t);
    if (!std::isfinite(v) || std::abs(t - r) > 1e-12) {
        std::ostringstream os;
        os << "value " << v << " is not a half-integer";
        throw InvalidArgument(os.str());
    }
    return HalfInt(static_cast<int>(r));
}

int multiplicity(HalfInt j) { return j.twice() + 1; }

int m_index(HalfInt j, HalfInt m) { return (j.twice() - m.twice()) / 2; }

HalfInt m_at(HalfInt j, int index) { return j - HalfInt::from_twice(2 * index); }

double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    if (!valid_projection(j1, m1) || !valid_projection(j2, m2) || !valid_projection(J, M) ||
        !in_triangle(j1, j2, J)) {
        throw InvalidArgument("cg: malformed quantum numbers " + describe(j1, m1, j2, m2, J, M));
    }
    if (m1 + m2 != M) return 0.0;
    return cached_table(j1, j2, J)[static_cast<std::size_t>(m_index(J, M))](m_index(j1, m1), m_index(j2, m2));
}

double cg(double j1, double m1, double j2, double m2, double J, double M) {
    return cg(HalfInt::from_double(j1), HalfInt::from_double(m1), HalfInt::from_double(j2), HalfInt::from_double(m2),
              HalfInt::from_double(J), HalfInt::from_double(M));
}

Eigen::MatrixXd cg_matrix(HalfInt j1, HalfInt j2, HalfInt J, HalfInt M) {
    if (j1.twice() < 0 || j2.twice() < 0 || !valid_projection(J, M) || !in_triangle(j1, j2, J)) {
        throw InvalidArgument("cg_matrix: malformed quantum numbers");
    }
    return cached_table(j1, j2, J)[static_cast<std::size_t>(m_index(J, M))];
}

void SpinState::validate() const {
    require_spin(j, "SpinState");
    if (coefficients.size() != multiplicity(j)) throw InvalidArgument("SpinState: coefficient count must be 2j+1");
    if (std::abs(coefficients.norm() - 1.0) > 1e-10) throw InvalidArgument("SpinState: coefficients must have norm 1");
}

SpinState SpinState::basis(HalfInt j, HalfInt m, const FourVector& n, double tau) {
    require_spin(j, "SpinState::basis");
    if (!valid_projection(j, m)) throw InvalidArgument("SpinState::basis: invalid m");
    SpinState s{j, Eigen::VectorXcd::Zero(multiplicity(j)), n, tau};
    s.coefficients[m_index(j, m)] = 1.0;
    return s;
}

SpinState SpinState::from_coefficients(HalfInt j, Eigen::VectorXcd c, const FourVector& n, double tau) {
    require_spin(j, "SpinState::from_coefficients");
    const double norm = c.norm();
    if (c.size() != multiplicity(j) || !(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("SpinState::from_coefficients: need 2j+1 finite coefficients, not all zero");
    }
    SpinState s{j, c / norm, n, tau};
    return s;
}

const char* to_string(SymmetryTag tag) {
    switch (tag) {
        case SymmetryTag::Symmetric: return "symmetric";
        case SymmetryTag::Antisymmetric: return "antisymmetric";
        case SymmetryTag::None: break;
    }
    return "none";
}

void TwoBodySpinState::validate() const {
    require_spin(j1, "TwoBodySpinState");
    require_spin(j2, "TwoBodySpinState");
    if (coefficients.rows() != multiplicity(j1) || coefficients.cols() != multiplicity(j2)) {
        throw InvalidArgument("TwoBodySpinState: coefficient shape must be (2j1+1) x (2j2+1)");
    }
    if (std::abs(coefficients.norm() - 1.0) > 1e-10) {
        throw InvalidArgument("TwoBodySpinState: coefficients must have unit Frobenius norm");
    }
    if (j1 == j2 && symmetry != SymmetryTag::None && detect_symmetry(coefficients) != symmetry) {
        throw InvalidArgument(std::string("TwoBodySpinState: tag '") + to_string(symmetry) +
                              "' does not match the exchange symmetry of the coefficients");
    }
}

void require_common_fiber(const FourVector& n1, double tau1, const FourVector& n2, double tau2) {
    for (int mu = 0; mu < 4; ++mu) {
        if (!(std::abs(n1[mu] - n2[mu]) <= kFiberTolerance)) {
            std::ostringstream os;
            os << "states live on different fibers: n = " << n1 << " vs " << n2;
            throw FiberMismatch(os.str());
        }
    }
    if (!(std::abs(tau1 - tau2) <= kFiberTolerance)) {
        std::ostringstream os;
        os << "states are taken at different invariant times: tau = " << tau1 << " vs " << tau2;
        throw FiberMismatch(os.str());
    }
}

TwoBodySpinState couple_two(const SpinState& a, const SpinState& b, HalfInt J, HalfInt M) {
    a.validate();
    b.validate();
    require_common_fiber(a.n, a.tau, b.n, b.tau);
    TwoBodySpinState out;
    out.j1 = a.j;
    out.j2 = b.j;
    out.coefficients = cg_matrix(a.j, b.j, J, M).cast<cd>();
    out.n = a.n;
    out.tau = a.tau;
    if (a.j == b.j) {
        // Exchange parity of |J M> is (-1)^(2j - J).
        out.symmetry = ((2 * a.j.twice() - J.twice()) / 2) % 2 == 0 ? SymmetryTag::Symmetric : SymmetryTag::Antisymmetric;
    }
    return out;
}

TwoBodySpinState tensor_product(const SpinState& a, const SpinState& b) {
    a.validate();
    b.validate();
    require_common_fiber(a.n, a.tau, b.n, b.tau);
    TwoBodySpinState out;
    out.j1 = a.j;
    out.j2 = b.j;
    out.coefficients = a.coefficients * b.coefficients.transpose();
    out.n = a.n;
    out.tau = a.tau;
    return out;
}

TwoBodySpinState symmetrize(const SpinState& a, const SpinState& b, int sign) {
    if (sign != 1 && sign != -1) throw InvalidArgument("symmetrize: sign must be +1 or -1");
    if (a.j != b.j) throw InvalidArgument("symmetrize: both particles must carry the same spin");
    a.validate();
    b.validate();
    require_common_fiber(a.n, a.tau, b.n, b.tau);
    Eigen::MatrixXcd c = a.coefficients * b.coefficients.transpose();
    c += static_cast<double>(sign) * (b.coefficients * a.coefficients.transpose());
    const double norm = c.norm();
    if (norm < 1e-12) throw PauliExclusion("symmetrize: antisymmetric combination of identical states vanishes");
    TwoBodySpinState out;
    out.j1 = a.j;
    out.j2 = b.j;
    out.coefficients = c / norm;
    out.n = a.n;
    out.tau = a.tau;
    out.symmetry = sign > 0 ? SymmetryTag::Symmetric : SymmetryTag::Antisymmetric;
    return out;
}

TwoBodySpinState exchange(const TwoBodySpinState& state) {
    if (state.j1 != state.j2) throw InvalidArgument("exchange: particles must carry the same spin");
    TwoBodySpinState out = state;
    out.coefficients = state.coefficients.transpose();
    return out;
}

TwoBodySpinState apply_local(const Mat2c& d1, const Mat2c& d2, const TwoBodySpinState& state) {
    if (state.j1 != kHalf || state.j2 != kHalf) throw InvalidArgument("apply_local: both spins must be 1/2");
    TwoBodySpinState out = state;
    out.coefficients = d1 * state.coefficients * d2.transpose();
    if (out.symmetry != SymmetryTag::None && detect_symmetry(out.coefficients) != out.symmetry) {
        out.symmetry = SymmetryTag::None;
    }
    return out;
}

TwoBodySpinState singlet(const FourVector& n, double tau) {
    return couple_two(SpinState::basis(kHalf, kHalf, n, tau), SpinState::basis(kHalf, -kHalf, n, tau),
                      HalfInt::from_twice(0), HalfInt::from_twice(0));
}

std::vector<std::pair<HalfInt, double>> total_spin_decompose(const TwoBodySpinState& state) {
    state.validate();
    std::vector<std::pair<HalfInt, double>> weights;
    const HalfInt lo = HalfInt::from_twice(std::abs(state.j1.twice() - state.j2.twice()));
    for (HalfInt J = lo; J <= state.j1 + state.j2; J = J + HalfInt::from_twice(2)) {
        double w = 0.0;
        for (int k = 0; k < multiplicity(J); ++k) {
            const Eigen::MatrixXd basis = cg_matrix(state.j1, state.j2, J, m_at(J, k));
            w += std::norm((basis.cast<cd>().cwiseProduct(state.coefficients)).sum());
        }
        weights.emplace_back(J, w);
    }
    return weights;
}

std::vector<std::pair<HalfInt, double>> total_spin_decompose(const std::vector<HalfInt>& spins,
                                                             const Eigen::VectorXcd& state) {
    if (spins.empty()) throw InvalidArgument("total_spin_decompose: need at least one particle");
    Eigen::Index dim = 1;
    for (HalfInt j : spins) {
        require_spin(j, "total_spin_decompose");
        dim *= multiplicity(j);
    }
    if (state.size() != dim) throw InvalidArgument("total_spin_decompose: state size must match the product basis");

    // One multiplet per coupling path: total J and the vectors |J M>, M = J..-J,
    // as columns over the product basis of the particles folded so far.
    struct Multiplet {
        HalfInt J;
        Eigen::MatrixXd vectors;
    };
    std::vector<Multiplet> current{{spins[0], Eigen::MatrixXd::Identity(multiplicity(spins[0]), multiplicity(spins[0]))}};

    for (std::size_t p = 1; p < spins.size(); ++p) {
        const HalfInt jk = spins[p];
        const int dk = multiplicity(jk);
        std::vector<Multiplet> next;
        for (const Multiplet& prev : current) {
            const Eigen::Index prev_dim = prev.vectors.rows();
            const HalfInt lo = HalfInt::from_twice(std::abs(prev.J.twice() - jk.twice()));
            for (HalfInt J = lo; J <= prev.J + jk; J = J + HalfInt::from_twice(2)) {
                Multiplet m{J, Eigen::MatrixXd::Zero(prev_dim * dk, multiplicity(J))};
                for (int col = 0; col < multiplicity(J); ++col) {
                    const Eigen::MatrixXd c = cg_matrix(prev.J, jk, J, m_at(J, col));
                    for (int a = 0; a < c.rows(); ++a) {
                        for (int b = 0; b < dk; ++b) {
                            if (c(a, b) == 0.0) continue;
                            for (Eigen::Index r = 0; r < prev_dim; ++r) {
                                m.vectors(r * dk + b, col) += c(a, b) * prev.vectors(r, a);
                            }
                        }
                    }
                }
                next.push_back(std::move(m));
            }
        }
        current = std::move(next);
    }

    std::map<int, double> by_j;
    for (const Multiplet& m : current) {
        by_j[m.J.twice()] += (m.vectors.cast<cd>().adjoint() * state).squaredNorm();
    }
    std::vector<std::pair<HalfInt, double>> weights;
    for (const auto& [twice, w] : by_j) weights.emplace_back(HalfInt::from_twice(twice), w);
    return weights;
}

}  // namespace shp
