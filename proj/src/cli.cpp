#include "abflux/cli.hpp"
#include "abflux/asymptotics.hpp"
#include "abflux/monopole3d.hpp"
#include "abflux/numerics.hpp"
#include "abflux/perturbation.hpp"
#include "abflux/specfun.hpp"
#include "abflux/thick2d.hpp"
#include "abflux/thin2d.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace abflux::cli {

namespace {

using ojson = nlohmann::ordered_json;

const char* const version = "abflux 1.0.0";

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct JobConfig {
    std::string command;
    double mu = 0.5;
    double mu1 = 1.0;
    double k = 1.0;
    double rho = 10.0;
    double a = 0.0;
    int angles = 64;
    std::string grid;
    std::string profile = "linear";
    std::string profile_table;
    double a0 = 1e-3;
    int radii = 6;
    double tol = 1e-14;
    std::string kind = "schwinger";
    double theta_k = 0.0, phi_k = 0.0, string_theta = 0.0, string_phi = 0.0;
    double lmax = 40.0;
    int ntheta = 8, nphi = 8;
    long n = 1;
    double krho = 1.0;
    int mmax = 6;
    int series_mmax = 0;
    std::vector<double> krhos{100.0, 200.0, 400.0, 800.0};
    std::string output;
    std::string format;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    ojson results = ojson::object();
    std::string default_format = "csv";
};

void require(bool ok, const std::string& msg)
{
    if (!ok) throw ConfigError(msg);
}

ojson number_json(double v)
{
    if (std::isfinite(v) && v == std::round(v) && std::abs(v) < 9e15)
        return static_cast<long long>(v);
    return v;
}

std::string json_scalar_to_arg(const ojson& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    throw ConfigError("config: unsupported value " + v.dump());
}

// Turn --config into ordinary arguments; later command-line flags override.
std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            require(i + 1 < args.size(), "--config needs a path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    std::ifstream in(path);
    require(static_cast<bool>(in), "config: cannot open " + path);
    ojson cfg;
    try {
        cfg = ojson::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("config: invalid JSON in " + path + ": " + e.what());
    }
    require(cfg.is_object(), "config: top level must be an object");
    std::string command;
    if (!rest.empty() && !rest.front().empty() && rest.front()[0] != '-') {
        command = rest.front();
        rest.erase(rest.begin());
    } else {
        require(cfg.contains("command") && cfg["command"].is_string(), "config: missing command");
        command = cfg["command"].get<std::string>();
    }
    std::vector<std::string> out{command};
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (it.key() == "command") continue;
        if (it.value().is_array()) {
            std::string joined;
            for (const auto& v : it.value()) joined += (joined.empty() ? "" : ",") + json_scalar_to_arg(v);
            out.push_back("--" + it.key());
            out.push_back(joined);
        } else {
            out.push_back("--" + it.key());
            out.push_back(json_scalar_to_arg(it.value()));
        }
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

thick2d::FluxProfile make_profile(const JobConfig& c, double a)
{
    if (c.profile == "linear") return thick2d::FluxProfile::linear(a);
    if (c.profile == "quadratic") return thick2d::FluxProfile::quadratic(a);
    if (c.profile == "tabulated") {
        require(!c.profile_table.empty(), "--profile tabulated needs --profile-table");
        std::ifstream in(c.profile_table);
        require(static_cast<bool>(in), "cannot open profile table " + c.profile_table);
        std::vector<double> xs, gs;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double x, g;
            if (!(ls >> x >> g)) continue;
            xs.push_back(x);
            gs.push_back(g);
        }
        try {
            return thick2d::FluxProfile::tabulated(a, xs, gs);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("profile table: ") + e.what());
        }
    }
    throw ConfigError("unknown profile '" + c.profile + "' (linear, quadratic, tabulated)");
}

std::vector<double> uniform_phi(int n)
{
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = 2.0 * pi * j / n;
    return out;
}

Table cmd_amplitude_thin(const JobConfig& c)
{
    require(c.angles >= 1, "--angles must be >= 1");
    auto flux = thin2d::flux_decompose(c.mu);
    Table t;
    t.columns = {"dphi_rad", "re_f", "im_f", "abs_f"};
    for (double d : thick2d::angle_grid(c.angles, c.grid != "half")) {
        cplx f = thin2d::amplitude_thin(flux, d);
        t.rows.push_back({d, f.real(), f.imag(), std::abs(f)});
    }
    return t;
}

Table cmd_cross_section(const JobConfig& c)
{
    require(c.angles >= 1, "--angles must be >= 1");
    auto flux = thin2d::flux_decompose(c.mu);
    Table t;
    t.columns = {"dphi_rad", "sigma"};
    for (double d : thick2d::angle_grid(c.angles, c.grid == "full"))
        t.rows.push_back({d, thin2d::cross_section_thin(flux, d)});
    return t;
}

Table cmd_wavefunction(const JobConfig& c)
{
    require(c.angles >= 1, "--angles must be >= 1");
    require(c.k > 0.0, "--k must be positive");
    require(c.rho >= 0.0, "--rho must be >= 0");
    Table t;
    t.columns = {"phi_rad", "re_psi", "im_psi", "abs_psi"};
    auto phis = uniform_phi(c.angles);
    std::vector<cplx> vals(phis.size());
    if (c.profile == "thin") {
        auto flux = thin2d::flux_decompose(c.mu);
        thin2d::PlaneKinematics2D kin{c.k, 0.0, 0.0};
        require(c.series_mmax >= 0, "--mmax must be >= 0");
        for (std::size_t i = 0; i < phis.size(); ++i)
            vals[i] = c.series_mmax > 0 ? thin2d::wavefunction_thin(flux, kin, c.rho, phis[i], c.series_mmax)
                                        : thin2d::wavefunction_thin(flux, kin, c.rho, phis[i]);
    } else {
        require(c.a > 0.0, "--a must be positive for a finite-radius profile");
        auto prof = make_profile(c, c.a);
        auto ch = thick2d::thick_channels(c.mu, c.k, prof, c.tol);
        for (std::size_t i = 0; i < phis.size(); ++i)
            vals[i] = thick2d::wavefunction_thick(ch, prof, c.rho, phis[i]);
    }
    for (std::size_t i = 0; i < phis.size(); ++i)
        t.rows.push_back({phis[i], vals[i].real(), vals[i].imag(), std::abs(vals[i])});
    return t;
}

Table cmd_thick_converge(const JobConfig& c)
{
    require(c.radii >= 2, "--radii must be >= 2");
    require(c.a0 > 0.0, "--a0 must be positive");
    require(c.angles >= 1, "--angles must be >= 1");
    require(c.k > 0.0, "--k must be positive");
    auto rep = thick2d::amplitude_convergence(c.mu, c.k, make_profile(c, c.a0), c.a0, c.radii, c.angles);
    Table t;
    t.columns = {"a", "sup_angle_error", "fitted_exponent"};
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        t.rows.push_back({rep.radii[i], rep.errors[i], rep.exponent});
    auto fl = thin2d::flux_decompose(c.mu);
    t.results["fitted_exponent"] = rep.exponent;
    t.results["expected_exponent"] = std::min(2.0 * fl.dmu, 2.0 - 2.0 * fl.dmu);
    return t;
}

monopole3d::PotentialKind parse_kind(const std::string& s)
{
    if (s == "schwinger") return monopole3d::PotentialKind::schwinger;
    if (s == "dirac") return monopole3d::PotentialKind::dirac;
    throw ConfigError("unknown --kind '" + s + "' (schwinger, dirac)");
}

Table cmd_monopole_amplitude(const JobConfig& c)
{
    require(c.ntheta >= 1 && c.nphi >= 1, "--ntheta and --nphi must be >= 1");
    require(c.k > 0.0, "--k must be positive");
    monopole3d::StringPotential p{parse_kind(c.kind), c.mu, unit_vector(c.string_theta, c.string_phi)};
    require(monopole3d::is_quantized(p),
            "flux is not quantized for this potential (Schwinger needs integer mu, Dirac integer 2 mu)");
    auto shifts = monopole3d::phase_shifts_free(c.mu, c.k, c.lmax);
    monopole3d::Incidence inc{c.k, c.theta_k, c.phi_k};
    Table t;
    t.columns = {"theta", "phi", "re_f", "im_f", "abs2_f"};
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < c.ntheta; ++i)
        for (int j = 0; j < c.nphi; ++j)
            pts.push_back({pi * (i + 0.5) / c.ntheta, 2.0 * pi * (j + 0.5) / c.nphi});
    std::vector<cplx> f(pts.size());
    numerics::parallel_for(pts.size(), [&](std::size_t i) {
        f[i] = monopole3d::amplitude_monopole(p, shifts, inc, pts[i][0], pts[i][1], shifts.Lmax());
    });
    for (std::size_t i = 0; i < pts.size(); ++i)
        t.rows.push_back({pts[i][0], pts[i][1], f[i].real(), f[i].imag(), std::norm(f[i])});
    return t;
}

Table cmd_monopole_spectrum(const JobConfig& c)
{
    Table t;
    t.default_format = "json";
    t.columns = {"L", "lambda", "degeneracy"};
    for (const auto& e : monopole3d::spectrum(c.mu1, c.lmax))
        t.rows.push_back({e.L, e.lambda, static_cast<double>(e.degeneracy)});
    return t;
}

Table cmd_perturbation(const JobConfig& c)
{
    require(c.krho > 0.0, "--krho must be positive");
    require(c.mmax >= 0, "--mmax must be >= 0");
    Table t;
    t.columns = {"m", "re_perturbative", "im_perturbative", "re_exact", "im_exact", "abs_diff"};
    for (long j = -c.mmax; j <= c.mmax; ++j) {
        perturbation::PerturbationChannel ch{j - c.n, c.n, c.krho};
        cplx p = perturbation::perturbative_partial_wave(ch);
        cplx e = perturbation::exact_expansion_partial_wave(ch);
        t.rows.push_back({static_cast<double>(ch.m), p.real(), p.imag(), e.real(), e.imag(), std::abs(e - p)});
    }
    t.results["missing_channel"] = -c.n;
    t.results["hankel_modulus"] = 0.5 * pi * std::abs(specfun::hankel_1(0.0, c.krho));
    return t;
}

Table cmd_asymptotics(const JobConfig& c)
{
    require(!c.krhos.empty(), "--krho list must be nonempty");
    for (double x : c.krhos) require(x >= asymptotics::min_krho, "--krho values must be >= 50");
    auto f2 = [](double phi) { return cplx(1.0 + 0.5 * std::cos(phi), 0.25 * std::sin(phi)); };
    auto f3 = [](double th, double ph) { return cplx(1.0 + 0.5 * std::cos(th), 0.25 * std::sin(th) * std::cos(ph)); };
    asymptotics::SpherePoint kd{0.7, 0.3};
    Table t;
    t.columns = {"krho", "rel_err_2d", "rel_err_3d"};
    std::vector<double> e2, e3;
    for (double x : c.krhos) {
        cplx q2 = asymptotics::quadrature_2d(f2, 1.0, x, 0.4);
        cplx s2 = asymptotics::stationary_phase_2d(f2, 1.0, x, 0.4);
        cplx q3 = asymptotics::quadrature_3d(f3, 1.0, x, kd);
        cplx s3 = asymptotics::stationary_phase_3d(f3, 1.0, x, kd);
        e2.push_back(std::abs(s2 - q2) / std::abs(q2));
        e3.push_back(std::abs(s3 - q3) / std::abs(q3));
        t.rows.push_back({x, e2.back(), e3.back()});
    }
    if (c.krhos.size() >= 2) {
        t.results["fitted_exponent_2d"] = numerics::fit_loglog(c.krhos, e2).slope;
        t.results["fitted_exponent_3d"] = numerics::fit_loglog(c.krhos, e3).slope;
    }
    return t;
}

Table cmd_deficiency(const JobConfig& c)
{
    auto d = thin2d::deficiency_indices(c.mu);
    Table t;
    t.columns = {"mu", "nplus", "nminus"};
    t.rows.push_back({c.mu, static_cast<double>(d.nplus), static_cast<double>(d.nminus)});
    ojson w = ojson::array();
    for (long m : d.witnesses) w.push_back(m);
    t.results["witness_channels"] = w;
    return t;
}

std::string render(const Table& t, const JobConfig& c, const ojson& echo)
{
    std::string fmt = c.format.empty() ? t.default_format : c.format;
    std::ostringstream os;
    if (fmt == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << "\r\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
            os << "\r\n";
        }
        return os.str();
    }
    ojson doc;
    doc["meta"]["command"] = c.command;
    doc["meta"]["version"] = version;
    doc["meta"]["config"] = echo;
    doc["meta"]["columns"] = t.columns;
    if (!t.results.empty()) doc["meta"]["results"] = t.results;
    ojson data = ojson::array();
    for (const auto& row : t.rows) {
        ojson r = ojson::array();
        for (double v : row) r.push_back(number_json(v));
        data.push_back(r);
    }
    doc["data"] = data;
    return doc.dump(2) + "\n";
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    JobConfig c;
    CLI::App app{"Aharonov-Bohm and monopole-string scattering tables", "abflux"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    std::string config_path;
    app.add_option("--config", config_path, "JSON job file; keys are long option names");

    auto common = [&](CLI::App* s) {
        s->add_option("--output,-o", c.output, "output file (default stdout)");
        s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto angles = [&](CLI::App* s) { s->add_option("--angles", c.angles, "number of grid angles"); };

    auto* amp = app.add_subcommand("amplitude-thin", "thin-solenoid amplitude on an angle grid");
    amp->add_option("--mu", c.mu, "flux parameter")->required();
    angles(amp);
    amp->add_option("--grid", c.grid, "full (0, 2pi) or half (0, pi]")->check(CLI::IsMember({"full", "half"}));
    common(amp);

    auto* cs = app.add_subcommand("cross-section", "thin-solenoid cross-section");
    cs->add_option("--mu", c.mu, "flux parameter")->required();
    angles(cs);
    cs->add_option("--grid", c.grid, "half (0, pi] or full (0, 2pi)")->check(CLI::IsMember({"full", "half"}));
    common(cs);

    auto* wf = app.add_subcommand("wavefunction", "wave function on a circle of radius rho");
    wf->add_option("--mu", c.mu, "flux parameter")->required();
    wf->add_option("--k", c.k, "wavenumber");
    wf->add_option("--rho", c.rho, "radius");
    wf->add_option("--profile", c.profile, "thin, linear, quadratic or tabulated");
    wf->add_option("--profile-table", c.profile_table, "CSV of (rho/a, f) pairs");
    wf->add_option("--a", c.a, "solenoid radius");
    wf->add_option("--tol", c.tol, "channel tolerance");
    wf->add_option("--mmax", c.series_mmax, "thin-profile truncation (0 picks it from the tail bound)");
    angles(wf);
    common(wf);

    auto* tc = app.add_subcommand("thick-converge", "amplitude convergence over a dyadic radius ladder");
    tc->add_option("--mu", c.mu, "flux parameter")->required();
    tc->add_option("--k", c.k, "wavenumber");
    tc->add_option("--profile", c.profile, "linear, quadratic or tabulated");
    tc->add_option("--profile-table", c.profile_table, "CSV of (rho/a, f) pairs");
    tc->add_option("--a0", c.a0, "largest radius");
    tc->add_option("--radii", c.radii, "number of radii a0 2^-j");
    angles(tc);
    common(tc);

    auto* ma = app.add_subcommand("monopole-amplitude", "monopole-string amplitude on a (theta, phi) grid");
    ma->add_option("--kind", c.kind, "schwinger or dirac");
    ma->add_option("--mu,--mu1", c.mu, "potential coefficient (mu1 for Schwinger)")->required();
    ma->add_option("--k", c.k, "wavenumber");
    ma->add_option("--theta-k", c.theta_k, "incidence polar angle");
    ma->add_option("--phi-k", c.phi_k, "incidence azimuth");
    ma->add_option("--string-theta", c.string_theta, "string polar angle");
    ma->add_option("--string-phi", c.string_phi, "string azimuth");
    ma->add_option("--lmax", c.lmax, "largest L");
    ma->add_option("--ntheta", c.ntheta, "polar grid size");
    ma->add_option("--nphi", c.nphi, "azimuthal grid size");
    common(ma);

    auto* ms = app.add_subcommand("monopole-spectrum", "angular spectrum (L, L(L+1), 2L+1)");
    ms->add_option("--mu1", c.mu1, "integer flux mu1")->required();
    ms->add_option("--lmax", c.lmax, "largest L")->required();
    common(ms);

    auto* pd = app.add_subcommand("perturbation-demo", "first-order vs exact partial waves");
    pd->add_option("--n", c.n, "integer flux");
    pd->add_option("--krho", c.krho, "k rho");
    pd->add_option("--mmax", c.mmax, "channels |m + n| <= mmax");
    common(pd);

    auto* ac = app.add_subcommand("asymptotics-check", "stationary phase against quadrature");
    ac->add_option("--krho", c.krhos, "k rho ladder")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    common(ac);

    auto* df = app.add_subcommand("deficiency", "deficiency indices of the thin-solenoid operator");
    df->add_option("--mu", c.mu, "flux parameter")->required();
    common(df);

    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "abflux: " << e.what() << "\n";
        return exit_config;
    } catch (const ConfigError& e) {
        err << "abflux: " << e.what() << "\n";
        return exit_config;
    }

    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    ojson echo = ojson::object();
    for (const CLI::Option* o : sub->get_options()) {
        std::string name = o->get_name(false, true);
        if (name.empty() || name == "--help" || name == "--output" || name == "-o,--output") continue;
        std::string key = o->get_lnames().empty() ? name : o->get_lnames().front();
        if (key == "output" || key == "help") continue;
        if (o->count() > 0) {
            auto res = o->results();
            echo[key] = res.size() == 1 ? ojson(res.front()) : ojson(res);
        } else if (!o->get_default_str().empty()) {
            echo[key] = o->get_default_str();
        }
    }

    Table t;
    try {
        if (c.command == "amplitude-thin") t = cmd_amplitude_thin(c);
        else if (c.command == "cross-section") t = cmd_cross_section(c);
        else if (c.command == "wavefunction") t = cmd_wavefunction(c);
        else if (c.command == "thick-converge") t = cmd_thick_converge(c);
        else if (c.command == "monopole-amplitude") t = cmd_monopole_amplitude(c);
        else if (c.command == "monopole-spectrum") t = cmd_monopole_spectrum(c);
        else if (c.command == "perturbation-demo") t = cmd_perturbation(c);
        else if (c.command == "asymptotics-check") t = cmd_asymptotics(c);
        else if (c.command == "deficiency") t = cmd_deficiency(c);
    } catch (const ConfigError& e) {
        err << "abflux " << c.command << ": " << e.what() << "\n";
        return exit_config;
    } catch (const DomainError& e) {
        err << "abflux " << c.command << ": invalid input: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        err << "abflux " << c.command << ": numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }

    std::string text = render(t, c, echo);
    if (c.output.empty() || c.output == "-") {
        out << text;
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) {
            err << "abflux: cannot write " << c.output << "\n";
            return exit_config;
        }
        f << text;
    }
    return exit_ok;
}

} // namespace abflux::cli
