#include "shp/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "shp/cli/config.hpp"
#include "shp/evolution.hpp"
#include "shp/little_group.hpp"
#include "shp/palacios.hpp"
#include "shp/sl2c.hpp"
#include "shp/units.hpp"
#include "shp/verify.hpp"

namespace shp::cli {

namespace {

Config load(const RunConfig& run) {
    Config c = run.config_path ? Config::load(*run.config_path) : Config{};
    if (run.seed) c.set("seed", std::to_string(*run.seed));
    return c;
}

Format format_or(const RunConfig& run, Format fallback) { return run.format.value_or(fallback); }

Json vec3_json(const Eigen::Vector3d& v) { return Json::array({json_number(v[0]), json_number(v[1]), json_number(v[2])}); }

Json four_json(const FourVector& v) {
    return Json::array({json_number(v[0]), json_number(v[1]), json_number(v[2]), json_number(v[3])});
}

Eigen::Vector3d unit_axis(const Config& c, const std::string& key, const Eigen::Vector3d& fallback) {
    const Eigen::Vector3d a = c.get_vector3(key, fallback);
    if (!(a.norm() > 0.0) || !a.allFinite()) throw ConfigError("key '" + key + "': axis must be a nonzero finite vector");
    return a.normalized();
}

FourVector unit_timelike(const Config& c, const std::string& key) {
    const FourVector n = c.get_four_vector(key, kRestFrame);
    if (!is_unit_future_timelike(n, 1e-9)) {
        throw ConfigError("key '" + key + "': must be a unit future-timelike vector (n.n = -1, n^0 > 0)");
    }
    return n;
}

// --- verify ------------------------------------------------------------------

CommandOutput cmd_verify(const RunConfig& run) {
    Config c = load(run);
    c.require_known({"seed", "samples", "tolerance", "suites"});
    verify::Options o;
    o.seed = c.get_uint64("seed", 42);
    o.samples = run.samples.value_or(c.get_size("samples", 1000));
    if (o.samples == 0) throw ConfigError("samples must be positive");
    o.tolerance = c.get_optional_double("tolerance");
    if (o.tolerance && !(*o.tolerance > 0.0)) throw ConfigError("key 'tolerance': must be positive");
    o.suites = c.get_list("suites");
    for (const std::string& s : o.suites) {
        const auto& names = verify::suite_names();
        if (std::find(names.begin(), names.end(), s) == names.end()) throw ConfigError("key 'suites': unknown suite '" + s + "'");
    }

    const verify::VerificationReport report = verify::run(o);
    CommandOutput result;
    result.exit_code = report.pass() ? kExitOk : kExitFailure;
    if (!report.pass()) result.message = std::to_string(report.failures()) + " identity check(s) failed";

    auto flags_text = [](const std::vector<std::string>& flags) {
        std::string s;
        for (const std::string& f : flags) s += (s.empty() ? "" : ";") + f;
        return s;
    };

    if (format_or(run, Format::Json) == Format::Csv) {
        CsvTable t({"suite", "id", "relation", "samples", "max_deviation", "tolerance", "pass", "informational", "convention_flags"});
        for (const auto& suite : report.suites) {
            for (const auto& r : suite.records) {
                t.add_row({suite.name, r.id, r.relation, std::to_string(r.samples), format_number(r.max_deviation),
                           format_number(r.tolerance), r.pass ? "true" : "false", r.informational ? "true" : "false",
                           flags_text(r.convention_flags)});
            }
        }
        result.primary = t.str();
        return result;
    }

    Json j = json_document("verify");
    j["seed"] = report.seed;
    j["samples"] = report.samples;
    j["pass"] = report.pass();
    j["failures"] = report.failures();
    Json flags = Json::array();
    for (const auto& f : verify::convention_flags()) flags.push_back(Json{{"id", f.id}, {"description", f.description}});
    j["convention_flags"] = flags;
    Json suites = Json::array();
    for (const auto& suite : report.suites) {
        Json s = Json::object();
        s["name"] = suite.name;
        s["pass"] = suite.pass();
        Json records = Json::array();
        for (const auto& r : suite.records) {
            Json x = Json::object();
            x["id"] = r.id;
            x["relation"] = r.relation;
            x["samples"] = r.samples;
            x["max_deviation"] = json_number(r.max_deviation);
            x["tolerance"] = json_number(r.tolerance);
            x["pass"] = r.pass;
            x["informational"] = r.informational;
            x["convention_flags"] = r.convention_flags;
            records.push_back(std::move(x));
        }
        s["records"] = std::move(records);
        suites.push_back(std::move(s));
    }
    j["suites"] = std::move(suites);
    result.primary = dump(j);
    return result;
}

// --- wigner ------------------------------------------------------------------

CommandOutput cmd_wigner(const RunConfig& run) {
    Config c = load(run);
    c.require_known({"seed", "boost1_axis", "boost1_rapidity", "boost2_axis", "boost2_rapidity", "n"});
    const Eigen::Vector3d a1 = unit_axis(c, "boost1_axis", Eigen::Vector3d::UnitX());
    const Eigen::Vector3d a2 = unit_axis(c, "boost2_axis", Eigen::Vector3d::UnitY());
    const double w1 = c.get_double("boost1_rapidity", 1.0);
    const double w2 = c.get_double("boost2_rapidity", 1.0);
    if (!std::isfinite(w1) || !std::isfinite(w2)) throw ConfigError("rapidities must be finite");
    const FourVector n = unit_timelike(c, "n");

    // The first boost carries n to n1; the second acts on a state sitting at n1.
    const SL2CElement b1 = SL2CElement::boost(a1, w1);
    const SL2CElement b2 = SL2CElement::boost(a2, w2);
    const FourVector n1 = apply(spinor_map(b1), n);
    const FourVector n2 = apply(spinor_map(b2), n1);
    const WignerRotation d = wigner_d(b2, n2);
    const Mat2c& m = d.matrix();
    const Eigen::Vector3d axis = d.axis();

    CommandOutput result;
    if (format_or(run, Format::Json) == Format::Csv) {
        CsvTable t({"angle", "axis_x", "axis_y", "axis_z", "d00_re", "d00_im", "d01_re", "d01_im", "d10_re", "d10_im", "d11_re",
                    "d11_im", "unitarity_defect", "determinant_defect"});
        t.add_numbers({d.angle(), axis[0], axis[1], axis[2], m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
                       m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag(), d.unitarity_defect(),
                       d.determinant_defect()});
        result.primary = t.str();
        return result;
    }
    Json j = json_document("wigner");
    j["boost1"] = Json{{"axis", vec3_json(a1)}, {"rapidity", w1}};
    j["boost2"] = Json{{"axis", vec3_json(a2)}, {"rapidity", w2}};
    j["n"] = four_json(n);
    j["n_after_boost1"] = four_json(n1);
    j["n_after_boost2"] = four_json(n2);
    Json re = Json::array();
    Json im = Json::array();
    for (int r = 0; r < 2; ++r) {
        re.push_back(Json::array({json_number(m(r, 0).real()), json_number(m(r, 1).real())}));
        im.push_back(Json::array({json_number(m(r, 0).imag()), json_number(m(r, 1).imag())}));
    }
    j["rotation"] = Json{{"re", re}, {"im", im}};
    j["angle"] = json_number(d.angle());
    j["axis"] = vec3_json(axis);
    j["unitarity_defect"] = json_number(d.unitarity_defect());
    j["determinant_defect"] = json_number(d.determinant_defect());
    result.primary = dump(j);
    return result;
}

// --- interference ------------------------------------------------------------

palacios::EmissionConfig emission_config(const Config& c) {
    palacios::EmissionConfig e;
    e.e1 = c.get_double("e1", e.e1);
    e.e2 = c.get_double("e2", e.e2);
    e.k1 = c.get_vector3("k1", e.k1);
    e.k2 = c.get_vector3("k2", e.k2);
    e.t_emit1 = c.get_double("t_emit1", e.t_emit1);
    e.t_emit2 = c.get_double("t_emit2", e.t_emit2);
    e.pulse_width = c.get_double("pulse_width", e.pulse_width);
    e.mass = c.get_double("mass", e.mass);
    e.n = c.get_four_vector("n", e.n);
    try {
        e.validate();
    } catch (const InvalidArgument& ex) {
        throw ConfigError(std::string("emission parameters: ") + ex.what());
    }
    return e;
}

Json feasibility_json(const palacios::FeasibilityReport& f) {
    Json j = Json::object();
    j["pulse_spacing_fs"] = json_number(f.pulse_spacing_fs);
    j["required_delta_e_ev"] = json_number(f.required_delta_e_ev);
    j["quoted_threshold_ev"] = json_number(f.quoted_threshold_ev);
    j["natural_linewidth_ev"] = json_number(f.natural_linewidth_ev);
    j["ratio_to_quoted"] = json_number(f.ratio_to_quoted);
    j["linewidth_time_spread_fs"] = json_number(f.linewidth_time_spread_fs);
    j["discrepancy"] = f.discrepancy;
    return j;
}

CommandOutput cmd_interference(const RunConfig& run) {
    Config c = load(run);
    c.require_known({"seed", "e1", "e2", "k1", "k2", "t_emit1", "t_emit2", "pulse_width", "mass", "n", "delta_t_min",
                     "delta_t_max", "samples"});
    const palacios::EmissionConfig e = emission_config(c);
    const double lo = c.get_double("delta_t_min", -4.0);
    const double hi = c.get_double("delta_t_max", 4.0);
    const std::size_t samples = run.samples.value_or(c.get_size("samples", 2001));
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("delta_t_max must exceed delta_t_min");
    if (samples < 2) throw ConfigError("samples must be at least 2");

    const palacios::InterferenceResult r = palacios::scan_interference(e, lo, hi, samples);

    CsvTable t({"delta_t_fs", "probability", "envelope", "interference_term"});
    for (std::size_t i = 0; i < r.delta_t.size(); ++i) {
        t.add_numbers({r.delta_t[i], r.probability[i], r.envelope[i], r.interference[i]});
    }

    Json s = json_document("interference");
    s["e1_ev"] = e.e1;
    s["e2_ev"] = e.e2;
    s["delta_e_ev"] = e.delta_e();
    s["pulse_width_fs"] = e.pulse_width;
    s["intensity_fwhm_fs"] = json_number(e.intensity_fwhm());
    s["emit_spacing_fs"] = e.emit_spacing();
    s["delta_t_min_fs"] = lo;
    s["delta_t_max_fs"] = hi;
    s["samples"] = samples;
    s["fringe_period_fs"] = json_number(r.fringe_period);
    s["predicted_period_fs"] = json_number(r.predicted_period);
    s["visibility"] = json_number(r.visibility);
    s["raw_visibility"] = json_number(r.raw_visibility);
    s["flat"] = r.flat;
    try {
        s["feasibility"] = feasibility_json(palacios::feasibility_report(e));
    } catch (const InvalidArgument&) {
        s["feasibility"] = nullptr;  // zero emission spacing
    }

    CommandOutput result;
    if (format_or(run, Format::Csv) == Format::Json) {
        s["scan"] = t.to_json();
        result.primary = dump(s);
    } else {
        result.primary = t.str();
        result.summary = dump(s);
    }
    return result;
}

// --- evolve ------------------------------------------------------------------

CsvTable evolve_classical(const Config& c, const RunConfig& run) {
    const double mass = c.get_double("mass", 1.0);
    if (!(mass > 0.0)) throw ConfigError("key 'mass': must be positive");
    const std::string potential = c.get_string("potential", "free");
    ClassicalModel model;
    if (potential == "free") {
        model = ClassicalModel::free(mass);
    } else if (potential == "harmonic") {
        model = ClassicalModel::harmonic(mass, c.get_double("spring_constant", 1.0));
    } else {
        throw ConfigError("key 'potential': expected free or harmonic, got '" + potential + "'");
    }
    const PhasePoint start{c.get_four_vector("x0", FourVector(0.0, 0.0, 0.0, 0.0)),
                           c.get_four_vector("p0", FourVector(std::sqrt(1.25), 0.5, 0.0, 0.0)), 0.0};
    const double total = c.get_double("tau_total", 10.0);
    if (!(total > 0.0)) throw ConfigError("key 'tau_total': must be positive");

    double dtau = 0.0;
    std::size_t steps = run.samples.value_or(c.get_size("steps", 0));
    if (steps > 0) {
        dtau = total / static_cast<double>(steps);
    } else {
        const StepSelection sel = select_step(start, model, total);
        dtau = sel.dtau;
        steps = sel.steps;
    }
    const std::vector<PhasePoint> traj = classical_integrate(start, model, dtau, steps);

    CsvTable t({"tau", "t", "x", "y", "z", "E", "px", "py", "pz", "K", "on_shell"});
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const PhasePoint& z = traj[k];
        // ds/dtau from neighbouring points against m/M with m from the local momentum.
        const PhasePoint& a = traj[k == 0 ? 0 : k - 1];
        const PhasePoint& b = traj[k == 0 ? std::min<std::size_t>(1, traj.size() - 1) : k];
        double on_shell = 0.0;
        if (&a != &b) {
            const FourVector dx = b.x - a.x;
            const double m = std::sqrt(std::max(0.0, -dot(z.p, z.p)));
            on_shell = std::sqrt(std::max(0.0, -dot(dx, dx))) / (b.tau - a.tau) - m / mass;
        }
        t.add_numbers({z.tau, z.x[0], z.x[1], z.x[2], z.x[3], z.p[0], z.p[1], z.p[2], z.p[3], model.hamiltonian(z), on_shell});
    }
    return t;
}

CsvTable evolve_quantum(const Config& c, const RunConfig& run) {
    const double mass = c.get_double("mass", 1.0);
    const double e0 = c.get_double("e0", 1.0);
    const double delta_t = c.get_double("delta_t", 1.0);
    const std::size_t count = c.get_size("count", 64);
    const double half_span = c.get_double("half_span", 8.0);
    const double dtau = c.get_double("dtau", 1.0);
    const std::size_t steps = run.samples.value_or(c.get_size("steps", 10));
    const std::size_t every = c.get_size("dump_every", 1);
    if (!(mass > 0.0) || !(delta_t > 0.0) || !(half_span > 0.0) || count < 2 || every == 0) {
        throw ConfigError("quantum evolve needs mass, delta_t, half_span > 0, count >= 2 and dump_every >= 1");
    }
    GridPacket g = gaussian_energy_packet(e0, delta_t, mass, count, half_span);

    CsvTable t({"tau", "energy", "abs2", "phase", "norm"});
    auto dump_grid = [&](const GridPacket& p) {
        const double norm = p.norm();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::complex<double> a = p.amplitude(i);
            t.add_numbers({p.tau, p.momentum(i)[0], std::norm(a), std::arg(a), norm});
        }
    };
    dump_grid(g);
    for (std::size_t k = 1; k <= steps; ++k) {
        g = free_evolve(g, dtau);
        if (k % every == 0 || k == steps) dump_grid(g);
    }
    return t;
}

CommandOutput cmd_evolve(const RunConfig& run) {
    Config c = load(run);
    c.require_known({"seed", "mode", "mass", "potential", "spring_constant", "x0", "p0", "tau_total", "steps", "e0", "delta_t",
                     "count", "half_span", "dtau", "dump_every"});
    const std::string mode = c.get_string("mode", "classical");
    CsvTable t = [&] {
        if (mode == "classical") return evolve_classical(c, run);
        if (mode == "quantum") return evolve_quantum(c, run);
        throw ConfigError("key 'mode': expected classical or quantum, got '" + mode + "'");
    }();
    CommandOutput result;
    if (format_or(run, Format::Csv) == Format::Json) {
        Json j = json_document("evolve");
        j["mode"] = mode;
        const Json table = t.to_json();
        j["columns"] = table["columns"];
        j["rows"] = table["rows"];
        result.primary = dump(j);
    } else {
        result.primary = t.str();
    }
    return result;
}

// --- constants ---------------------------------------------------------------

CommandOutput cmd_constants(const RunConfig& run) {
    if (run.config_path) Config::load(*run.config_path).require_known({"seed"});
    struct Row {
        const char* name;
        double value;
        const char* unit;
    };
    using namespace units;
    const Row rows[] = {
        {"hbar", kHbarEvFs, "eV*fs"},
        {"h", kPlanckEvFs, "eV*fs"},
        {"electron_mass", palacios::EmissionConfig{}.mass, "eV"},
        {"angular_frequency_per_ev", angular_frequency_per_fs(1.0), "rad/fs per eV"},
        {"fringe_period_times_delta_e", kPlanckEvFs, "fs*eV"},
        {"fringe_period_4.2ev", kPlanckEvFs / 4.2, "fs"},
        {"fringe_period_34ev", kPlanckEvFs / 34.0, "fs"},
        {"min_energy_spread_0.75fs", min_energy_spread_ev(0.75), "eV"},
        {"intensity_fwhm_per_sigma", 2.0 * std::sqrt(std::numbers::ln2), "1"},
    };
    CommandOutput result;
    if (format_or(run, Format::Json) == Format::Csv) {
        CsvTable t({"name", "value", "unit"});
        for (const Row& r : rows) t.add_row({r.name, format_number(r.value), r.unit});
        result.primary = t.str();
        return result;
    }
    Json j = json_document("constants");
    j["hbar_ev_fs"] = kHbarEvFs;
    j["h_ev_fs"] = kPlanckEvFs;
    Json table = Json::array();
    for (const Row& r : rows) table.push_back(Json{{"name", r.name}, {"value", r.value}, {"unit", r.unit}});
    j["conversions"] = table;
    result.primary = dump(j);
    return result;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << text;
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"verify", "wigner", "interference", "evolve", "constants"};
    return names;
}

CommandOutput run_command(const std::string& name, const RunConfig& run) {
    if (name == "verify") return cmd_verify(run);
    if (name == "wigner") return cmd_wigner(run);
    if (name == "interference") return cmd_interference(run);
    if (name == "evolve") return cmd_evolve(run);
    if (name == "constants") return cmd_constants(run);
    throw ConfigError("unknown command '" + name + "'");
}

int execute(const std::string& name, const RunConfig& run, std::ostream& out, std::ostream& err) {
    CommandOutput result;
    try {
        result = run_command(name, run);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const AliasingError& e) {
        err << "scan rejected: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return kExitConfig;
    } catch (const StepRejected& e) {
        err << "integration failed at tau = " << format_number(e.tau()) << ": " << e.what() << "\n";
        return kExitFailure;
    }

    try {
        if (run.out) {
            write_file(*run.out, result.primary);
            if (result.summary) {
                std::filesystem::path p(*run.out);
                p.replace_extension(".summary.json");
                write_file(p.string(), *result.summary);
            }
        } else {
            out << result.primary;
        }
    } catch (const ConfigError& e) {
        err << "output error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (!result.message.empty()) err << result.message << "\n";
    return result.exit_code;
}

}  // namespace shp::cli
