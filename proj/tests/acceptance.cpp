// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here.
//
//   shp_acceptance [--known-unattainable N[,N...]]
//
// Exit status 0 when every criterion passes. Criteria named as known
// unattainable are still run and printed; with the flag the exit status is
// 0 when exactly those fail and all others pass.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "shp/cli/commands.hpp"
#include "shp/dirac.hpp"
#include "shp/errors.hpp"
#include "shp/little_group.hpp"
#include "shp/palacios.hpp"
#include "shp/sampling.hpp"
#include "shp/spin_coupling.hpp"
#include "shp/verify.hpp"

using namespace shp;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kSamples = 1000;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

verify::SuiteReport suite(const std::string& name) {
    verify::Options o;
    o.seed = kSeed;
    o.samples = kSamples;
    return verify::run_suite(name, o);
}

const verify::IdentityRecord& record(const verify::SuiteReport& s, const std::string& id) {
    for (const auto& r : s.records)
        if (r.id == id) return r;
    throw std::runtime_error("missing record " + id);
}

void gate(Outcome& out, const verify::SuiteReport& s, const std::string& id, double tol, std::size_t min_samples = 1) {
    const auto& r = record(s, id);
    out.require(r.max_deviation <= tol && r.samples >= min_samples,
                id + " " + sci(r.max_deviation) + " > " + sci(tol) + " or samples " + std::to_string(r.samples));
}

double worst(const verify::SuiteReport& s, const std::vector<std::string>& ids) {
    double w = 0.0;
    for (const auto& id : ids) w = std::max(w, record(s, id).max_deviation);
    return w;
}

Outcome criterion1() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = suite("operator_algebra");
    const double t = seconds_since(t0);
    const std::vector<std::string> ids = {"kl_squared",         "kt_squared",           "kt2_minus_kl2",
                                          "k_dot_n",            "n_dot_sigma_n",        "kt_kl_commute",
                                          "sigma_n_projected",  "sigma_n_covariance",   "projections_idempotent",
                                          "projections_orthogonal", "projections_complete"};
    for (const auto& id : ids) gate(out, s, id, 1e-9, kSamples);
    out.require(t < 30.0, "runtime " + std::to_string(t) + " s");
    out.note("max deviation " + sci(worst(s, ids)) + " over " + std::to_string(kSamples) + " samples, " + sci(t) + " s");
    return out;
}

Outcome criterion2() {
    Outcome out;
    const auto s = suite("little_group");
    gate(out, s, "su2_membership", 1e-10, kSamples);
    gate(out, s, "cocycle", 1e-9, kSamples);
    gate(out, s, "collinear_identity", 1e-10);
    gate(out, s, "generator_order", 0.02);
    gate(out, s, "spinor_generator_order", 0.02);

    Sampler rng(kSeed);
    double angle_dev = 0.0;
    for (std::size_t i = 0; i < kSamples; ++i) {
        const Eigen::Vector3d u1 = rng.unit_vector();
        Eigen::Vector3d u2 = rng.unit_vector();
        u2 = (u2 - u2.dot(u1) * u1).normalized();
        const double w1 = rng.uniform(0.05, 2.5), w2 = rng.uniform(0.05, 2.5);
        const SL2CElement b2 = SL2CElement::boost(u2, w2);
        const FourVector n1 = apply(spinor_map(SL2CElement::boost(u1, w1)), kRestFrame);
        const double got = wigner_d(b2, apply(spinor_map(b2), n1)).angle();
        const double want = oracle::rotation_angle(oracle::polar_rotation(oracle::boost(u2, w2) * oracle::boost(u1, w1)));
        angle_dev = std::max(angle_dev, std::abs(got - want));
    }
    out.require(angle_dev <= 1e-9, "orthogonal-boost angle vs polar oracle " + sci(angle_dev));
    out.note("cocycle " + sci(record(s, "cocycle").max_deviation) + ", polar-oracle angle " + sci(angle_dev));
    return out;
}

Outcome criterion3() {
    Outcome out;
    const auto s = suite("rest_frame");
    gate(out, s, "sigma_n_0j", 1e-12);
    gate(out, s, "sigma_n_ij_spectrum", 1e-12);

    // Helicity projection along n_k -> (1,0,0,0), rapidity 2^-k for k >= 3.
    Sampler rng(kSeed);
    bool monotone = true;
    double final_dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const FourVector p(rng.normal(), rng.normal(), rng.normal(), rng.normal());
        const Eigen::Vector3d ph = p.spatial().normalized();
        dirac::Mat4c sp = dirac::Mat4c::Zero();
        for (int k = 0; k < 3; ++k) {
            sp.block<2, 2>(0, 0) += ph[k] * pauli(k + 1);
            sp.block<2, 2>(2, 2) += ph[k] * pauli(k + 1);
        }
        // Helicity operator at rest is -diag(sigma.p, sigma.p)/|p| in this gamma convention.
        const dirac::Mat4c target = 0.5 * (dirac::Mat4c::Identity() - sp);
        const Eigen::Vector3d dir = rng.unit_vector();
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 3; k <= 45; ++k) {
            const double w = std::ldexp(1.0, -k);
            const FourVector n(std::cosh(w), std::sinh(w) * dir[0], std::sinh(w) * dir[1], std::sinh(w) * dir[2]);
            if (dot(p, n) == 0.0) continue;
            const double d = (dirac::projections(p, n).helicity.plus - target).cwiseAbs().maxCoeff();
            if (d > prev && d > 1e-14) monotone = false;
            prev = d;
        }
        final_dev = std::max(final_dev, prev);
    }
    out.require(monotone, "helicity deviation not monotone");
    out.require(final_dev <= 1e-12, "helicity limit " + sci(final_dev));
    out.note("Sigma^{0j} " + sci(record(s, "sigma_n_0j").max_deviation) + ", helicity limit " + sci(final_dev) +
             " (sign flag helicity_limit_sign)");
    return out;
}

Outcome criterion4() {
    Outcome out;
    const auto s = suite("sector_norm");
    gate(out, s, "assembled_norm", 1e-10, kSamples);
    gate(out, s, "assembled_norm_past_cone", 1e-10, kSamples);
    gate(out, s, "norm_lorentz_invariance", 1e-10, kSamples);
    out.note("norm " + sci(record(s, "assembled_norm").max_deviation) + ", invariance " +
             sci(record(s, "norm_lorentz_invariance").max_deviation));
    return out;
}

Outcome criterion5() {
    Outcome out;
    const auto s = suite("spin_coupling");
    gate(out, s, "cg_orthogonality", 1e-12);
    gate(out, s, "singlet_invariance", 1e-10, kSamples);
    gate(out, s, "fiber_mismatch", 0.0);

    // (R_pi x R_pi)(a x b) against -(b x a) for random product states a x b.
    const Mat2c r = SL2CElement::rotation(Eigen::Vector3d::UnitY(), std::numbers::pi).matrix();
    Sampler rng(kSeed);
    double product_dev = 0.0;
    for (std::size_t i = 0; i < kSamples; ++i) {
        const SpinState a = SpinState::from_coefficients(kHalf, rng.spinor().normalized());
        const SpinState b = SpinState::from_coefficients(kHalf, rng.spinor().normalized());
        const TwoBodySpinState ab = tensor_product(a, b);
        product_dev = std::max(product_dev, (apply_local(r, r, ab).coefficients + exchange(ab).coefficients).cwiseAbs().maxCoeff());
    }
    out.require(product_dev <= 1e-10, "R_pi x R_pi = -exchange on product states, deviation " + sci(product_dev));
    out.note("M = 0 sector " + sci(record(s, "r_pi_exchange").max_deviation) + ", CG " +
             sci(record(s, "cg_orthogonality").max_deviation));
    return out;
}

Outcome criterion6() {
    Outcome out;
    const auto s = suite("evolution");
    gate(out, s, "quantum_norm_drift", 1e-10);
    gate(out, s, "classical_k_conservation", 1e-8, 10000);
    gate(out, s, "observed_velocity", 1e-12);
    gate(out, s, "proper_time_rate", 1e-12);
    gate(out, s, "time_energy_gaussian", 1e-9);
    out.note("norm drift " + sci(record(s, "quantum_norm_drift").max_deviation) + ", K drift " +
             sci(record(s, "classical_k_conservation").max_deviation) + ", dt dE - 1/2 " +
             sci(record(s, "time_energy_gaussian").max_deviation));
    return out;
}

Outcome criterion7() {
    using namespace palacios;
    Outcome out;
    const EmissionConfig c = EmissionConfig::corrected_energies();
    auto t0 = std::chrono::steady_clock::now();
    const InterferenceResult rc = scan_interference(c, -4.0, 4.0, 2001);
    double slowest = seconds_since(t0);
    out.require(std::abs(rc.fringe_period - 0.9847) <= 0.001, "period " + std::to_string(rc.fringe_period));

    const EmissionConfig raw = EmissionConfig::raw_energies();
    t0 = std::chrono::steady_clock::now();
    const InterferenceResult rr = scan_interference(raw, -2.0, 2.0, 4001);
    slowest = std::max(slowest, seconds_since(t0));
    out.require(std::abs(rr.fringe_period - 0.1216) <= 0.0005, "raw period " + std::to_string(rr.fringe_period));

    double quad = 0.0;
    for (const EmissionConfig* e : {&c, &raw}) {
        const oracle::Emission o{e->e1, e->e2, e->t_emit1, e->t_emit2, e->pulse_width};
        const double total = oracle::coincidence_total(o);
        for (double d = -3.0; d <= 3.0; d += 0.05) {
            const double want = oracle::coincidence_unnormalized(o, d) / total;
            quad = std::max(quad, std::abs(coincidence_probability(*e, d) - want) / std::max(want, 1e-12));
        }
    }
    out.require(quad <= 1e-6, "closed form vs quadrature " + sci(quad));

    EmissionConfig shifted = c;
    shifted.e1 += shifted.mass;
    shifted.e2 += shifted.mass;
    const InterferenceResult rs = scan_interference(shifted, -4.0, 4.0, 2001);
    double pmax = 0.0, shift = 0.0;
    for (double v : rc.probability) pmax = std::max(pmax, v);
    for (std::size_t i = 0; i < rc.probability.size(); ++i) shift = std::max(shift, std::abs(rs.probability[i] - rc.probability[i]) / pmax);
    out.require(shift <= 1e-10, "energy-shift invariance " + sci(shift));
    out.require(slowest < 5.0, "scan runtime " + std::to_string(slowest) + " s");

    char buf[160];
    std::snprintf(buf, sizeof buf, "periods %.6f fs and %.6f fs, quadrature %s, shift %s, slowest scan %.2f s", rc.fringe_period,
                  rr.fringe_period, sci(quad).c_str(), sci(shift).c_str(), slowest);
    out.note(buf);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome criterion8() {
    Outcome out;
    cli::RunConfig run;
    run.config_path = std::string(SHP_SOURCE_DIR) + "/configs/palacios.conf";
    const cli::CommandOutput r = cli::run_command("interference", run);
    const cli::Json f = cli::Json::parse(*r.summary)["feasibility"];
    out.require(f["quoted_threshold_ev"].get<double>() == 1e-3, "quoted threshold");
    out.require(f["natural_linewidth_ev"].get<double>() == 1e-6, "natural linewidth");
    const double req = f["required_delta_e_ev"].get<double>();
    out.require(std::abs(req - oracle::kHbar / 1.5) <= 1e-12 && std::abs(req - 0.4388) < 1e-4, "required dE " + std::to_string(req));
    out.require(f["discrepancy"] == true, "discrepancy flag");
    out.require(cli::dump(f) == read_file(std::string(SHP_SOURCE_DIR) + "/tests/golden/feasibility.json"), "golden file");
    char buf[96];
    std::snprintf(buf, sizeof buf, "required %.10f eV vs quoted 1e-3 eV, linewidth 1e-6 eV", req);
    out.note(buf);
    return out;
}

Outcome criterion9() {
    Outcome out;
    cli::RunConfig v;
    v.seed = kSeed;
    v.samples = kSamples;
    const std::string a = cli::run_command("verify", v).primary;
    const std::string b = cli::run_command("verify", v).primary;
    out.require(a == b, "verify output differs between runs");
    cli::RunConfig i;
    i.config_path = std::string(SHP_SOURCE_DIR) + "/configs/palacios.conf";
    const cli::CommandOutput x = cli::run_command("interference", i);
    const cli::CommandOutput y = cli::run_command("interference", i);
    out.require(x.primary == y.primary && *x.summary == *y.summary, "interference output differs between runs");
    out.note("verify " + std::to_string(a.size()) + " bytes, interference " + std::to_string(x.primary.size()) + " bytes");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--known-unattainable" && k + 1 < argc) {
            std::stringstream ss(argv[++k]);
            for (std::string item; std::getline(ss, item, ',');) known.insert(std::stoi(item));
        } else {
            std::fprintf(stderr, "usage: %s [--known-unattainable N[,N...]]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"operator algebra", criterion1}, {"little group", criterion2},      {"rest-frame reductions", criterion3},
        {"norm equality", criterion4},    {"spin coupling", criterion5},     {"evolution", criterion6},
        {"interference", criterion7},     {"feasibility report", criterion8}, {"determinism", criterion9},
    };

    bool all = true;
    bool as_expected = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d [%s]: %s  %s\n", id, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
        as_expected = as_expected && (o.pass != (known.count(id) != 0));
    }
    if (known.empty()) return all ? 0 : 1;
    return as_expected ? 0 : 1;
}
