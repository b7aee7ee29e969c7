#include "agr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "agr/numerics.hpp"
#include "agr/parallel.hpp"
#include "agr/phantoms.hpp"

namespace agr {

Pipeline pipeline_from_string(const std::string& s) {
    if (s == "forward") return Pipeline::Forward;
    if (s == "dual") return Pipeline::Dual;
    if (s == "invert_qr") return Pipeline::InvertQR;
    if (s == "invert_general") return Pipeline::InvertGeneral;
    if (s == "invert_dual_qr") return Pipeline::InvertDualQR;
    if (s == "invert_dual_general") return Pipeline::InvertDualGeneral;
    if (s == "selftest") return Pipeline::Selftest;
    throw std::invalid_argument("unknown pipeline: " + s);
}

std::string pipeline_to_string(Pipeline p) {
    switch (p) {
    case Pipeline::Forward: return "forward";
    case Pipeline::Dual: return "dual";
    case Pipeline::InvertQR: return "invert_qr";
    case Pipeline::InvertGeneral: return "invert_general";
    case Pipeline::InvertDualQR: return "invert_dual_qr";
    case Pipeline::InvertDualGeneral: return "invert_dual_general";
    case Pipeline::Selftest: return "selftest";
    }
    return "?";
}

void ExperimentSpec::validate() const {
    if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (sample_points < 1) throw std::invalid_argument("sample_points must be >= 1");
    switch (pipeline) {
    case Pipeline::Forward:
    case Pipeline::Dual:
        cfg.validate_dims();
        break;
    case Pipeline::InvertQR:
        cfg.validate_dims();
        if (cfg.k + cfg.kprime > cfg.n)
            throw std::invalid_argument("k+k' <= n required for Funk injectivity");
        break;
    case Pipeline::InvertGeneral:
        cfg.validate_forward_inversion();
        break;
    case Pipeline::InvertDualQR:
        cfg.validate_dims();
        if (cfg.k + cfg.kprime < cfg.n)
            throw std::invalid_argument("k+k' >= n required for dual Funk injectivity");
        break;
    case Pipeline::InvertDualGeneral:
        cfg.validate_dual_inversion();
        break;
    case Pipeline::Selftest:
        break;
    }
}

ExperimentSpec default_spec(Pipeline p) {
    ExperimentSpec spec;
    spec.pipeline = p;
    spec.cfg.seed = 20240817;
    spec.cfg.funk.seed = spec.cfg.seed;
    spec.cfg.dplane.seed = spec.cfg.seed;

    switch (p) {
    case Pipeline::Forward:
        spec.cfg.n = 3;
        spec.tolerance = 1e-3;
        spec.sample_points = 10;
        break;
    case Pipeline::Dual:
        spec.cfg.n = 3;
        spec.tolerance = 1e-3;
        spec.sample_points = 10;
        break;
    case Pipeline::InvertQR:
        spec.cfg.n = 3;
        spec.tolerance = 0.05;
        spec.sample_points = 2; // subspace samples; the rows sweep the grid
        spec.cfg.radial_nodes = 48;
        spec.cfg.r_max = 6.0;
        spec.cfg.grass_points = 32;
        spec.cfg.line_points = 32;
        spec.cfg.funk.r_nodes = 24;
        spec.cfg.funk.circle_points = 48;
        break;
    case Pipeline::InvertGeneral:
        spec.cfg.n = 4;
        spec.cfg.kappa = 1;
        spec.tolerance = 0.10;
        spec.sample_points = 10;
        spec.cfg.grass_points = 16;
        spec.cfg.line_points = 20;
        spec.cfg.line_scale = 1.5;
        spec.cfg.funk.r_nodes = 16;
        spec.cfg.funk.circle_points = 24;
        spec.cfg.step2_sphere_band = 9;
        spec.cfg.step2_t_nodes = 6;
        spec.cfg.step2_h = 0.15;
        break;
    case Pipeline::InvertDualQR:
        spec.cfg.n = 3;
        spec.tolerance = 0.05;
        spec.sample_points = 2;
        spec.cfg.radial_nodes = 40;
        spec.cfg.r_max = 5.0;
        spec.cfg.m_avg_points = 32;
        spec.cfg.dual_circle_points = 128;
        spec.cfg.funk.r_nodes = 24;
        spec.cfg.funk.circle_points = 32;
        break;
    case Pipeline::InvertDualGeneral:
        spec.phantom = "cauchy";
        spec.cfg.n = 3;
        spec.cfg.kappa = 0;
        spec.cfg.mu = 2.0;
        spec.tolerance = 0.02;
        spec.sample_points = 10;
        spec.cfg.dual_circle_points = 256;
        spec.cfg.dplane.mc_budget = 12000;
        spec.cfg.dplane.t_nodes = 48;
        spec.cfg.dplane.t_max = 8.0;
        spec.cfg.dplane.tail = TailModel::power(-1.0);
        break;
    case Pipeline::Selftest:
        spec.tolerance = 1e-3;
        spec.sample_points = 1;
        break;
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Spec file parsing

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

TailModel parse_tail(const std::string& v) {
    if (v == "zero") return TailModel::zero();
    if (v == "gaussian") return TailModel::gaussian();
    if (v.rfind("power:", 0) == 0) return TailModel::power(std::stod(v.substr(6)));
    throw std::invalid_argument("unknown tail model: " + v +
                                " (want zero | gaussian | power:<exponent>)");
}

std::string tail_to_string(const TailModel& t) {
    switch (t.kind) {
    case TailKind::Zero: return "zero";
    case TailKind::GaussianFit: return "gaussian";
    case TailKind::PowerFit: return fmt::format("power:{}", t.exponent);
    }
    return "?";
}

void apply_config_key(PipelineConfig& c, const std::string& key, const std::string& value) {
    auto as_int = [&] { return std::stoi(value); };
    auto as_dbl = [&] { return std::stod(value); };
    if (key == "n") c.n = as_int();
    else if (key == "k") c.k = as_int();
    else if (key == "kprime") c.kprime = as_int();
    else if (key == "kappa") c.kappa = as_int();
    else if (key == "mu") c.mu = as_dbl();
    else if (key == "p_class") c.p_class = as_dbl();
    else if (key == "grass_points") c.grass_points = as_int();
    else if (key == "line_points") c.line_points = as_int();
    else if (key == "line_scale") c.line_scale = as_dbl();
    else if (key == "dual_circle_points") c.dual_circle_points = as_int();
    else if (key == "dual_mc") c.dual_mc = as_int();
    else if (key == "m_avg_points") c.m_avg_points = as_int();
    else if (key == "radial_nodes") c.radial_nodes = as_int();
    else if (key == "r_max") c.r_max = as_dbl();
    else if (key == "tail") c.tail = parse_tail(value);
    else if (key == "funk_circle_points") c.funk.circle_points = as_int();
    else if (key == "funk_r_nodes") c.funk.r_nodes = as_int();
    else if (key == "funk_mc_budget") c.funk.mc_budget = as_int();
    else if (key == "step2_sphere_band") c.step2_sphere_band = as_int();
    else if (key == "step2_t_nodes") c.step2_t_nodes = as_int();
    else if (key == "step2_h") c.step2_h = as_dbl();
    else if (key == "so_mc") c.so_mc = as_int();
    else if (key == "dplane_quad_points") c.dplane.quad_points = as_int();
    else if (key == "dplane_mc_budget") c.dplane.mc_budget = as_int();
    else if (key == "dplane_t_nodes") c.dplane.t_nodes = as_int();
    else if (key == "dplane_t_max") c.dplane.t_max = as_dbl();
    else if (key == "dplane_tail") c.dplane.tail = parse_tail(value);
    else if (key == "seed") c.seed = std::stoull(value);
    else if (key == "limit_rel_tol") c.limit_rel_tol = as_dbl();
    else throw std::invalid_argument("unknown [config] key: " + key);
}

} // namespace

ExperimentSpec parse_spec_text(const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    std::map<std::string, std::string> experiment_kv;
    std::vector<std::pair<std::string, std::string>> config_kv;
    std::map<std::string, double> phantom_kv;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            if (section != "experiment" && section != "config" && section != "phantom")
                throw std::invalid_argument("unknown section: [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key = value, got: " + t);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (section == "experiment") experiment_kv[key] = value;
        else if (section == "config") config_kv.emplace_back(key, value);
        else if (section == "phantom") phantom_kv[key] = std::stod(value);
        else throw std::invalid_argument("key outside of a section: " + t);
    }

    auto it = experiment_kv.find("pipeline");
    if (it == experiment_kv.end())
        throw std::invalid_argument("[experiment] must set pipeline");
    ExperimentSpec spec = default_spec(pipeline_from_string(it->second));
    for (const auto& [key, value] : experiment_kv) {
        if (key == "pipeline") continue;
        else if (key == "phantom") spec.phantom = value;
        else if (key == "output") spec.output_path = value;
        else if (key == "tolerance") spec.tolerance = std::stod(value);
        else if (key == "sample_points") spec.sample_points = std::stoi(value);
        else if (key == "seed") {
            spec.cfg.seed = std::stoull(value);
            spec.cfg.funk.seed = spec.cfg.seed;
            spec.cfg.dplane.seed = spec.cfg.seed;
        } else {
            throw std::invalid_argument("unknown [experiment] key: " + key);
        }
    }
    for (const auto& [key, value] : config_kv) apply_config_key(spec.cfg, key, value);
    spec.phantom_params = phantom_kv;
    spec.validate();
    return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

std::string defaults_table() {
    std::ostringstream os;
    os << "pipeline              key                  default\n";
    for (Pipeline p : {Pipeline::Forward, Pipeline::Dual, Pipeline::InvertQR,
                       Pipeline::InvertGeneral, Pipeline::InvertDualQR,
                       Pipeline::InvertDualGeneral, Pipeline::Selftest}) {
        const ExperimentSpec s = default_spec(p);
        auto row = [&](const std::string& key, const std::string& value) {
            os << fmt::format("{:<21} {:<20} {}\n", pipeline_to_string(p), key, value);
        };
        row("phantom", s.phantom);
        row("tolerance", format_shortest(s.tolerance));
        row("sample_points", std::to_string(s.sample_points));
        row("n,k,kprime,kappa", fmt::format("{},{},{},{}", s.cfg.n, s.cfg.k, s.cfg.kprime,
                                            s.cfg.kappa));
        row("seed", std::to_string(s.cfg.seed));
        row("grass_points", std::to_string(s.cfg.grass_points));
        row("line_points", std::to_string(s.cfg.line_points));
        row("dual_circle_points", std::to_string(s.cfg.dual_circle_points));
        row("m_avg_points", std::to_string(s.cfg.m_avg_points));
        row("radial_nodes", std::to_string(s.cfg.radial_nodes));
        row("r_max", format_shortest(s.cfg.r_max));
        row("tail", tail_to_string(s.cfg.tail));
        row("funk_r_nodes", std::to_string(s.cfg.funk.r_nodes));
        row("funk_circle_points", std::to_string(s.cfg.funk.circle_points));
        row("step2_sphere_band", std::to_string(s.cfg.step2_sphere_band));
        row("step2_t_nodes", std::to_string(s.cfg.step2_t_nodes));
        row("step2_h", format_shortest(s.cfg.step2_h));
        row("dplane_t_nodes", std::to_string(s.cfg.dplane.t_nodes));
        row("dplane_t_max", format_shortest(s.cfg.dplane.t_max));
        row("dplane_mc_budget", std::to_string(s.cfg.dplane.mc_budget));
        row("dplane_tail", tail_to_string(s.cfg.dplane.tail));
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Run

namespace {

std::string describe_plane(const AffinePlane& p) {
    std::string out = "frame=[";
    const Mat& f = p.subspace().frame();
    for (int j = 0; j < f.cols(); ++j)
        for (int i = 0; i < f.rows(); ++i)
            out += fmt::format("{}{:.6f}", (i == 0 && j == 0) ? "" : " ", f(i, j));
    out += "];u=[";
    for (int i = 0; i < p.offset().size(); ++i)
        out += fmt::format("{}{:.6f}", i == 0 ? "" : " ", p.offset()(i));
    out += "]";
    return out;
}

ResultRow make_row(std::string point, double rec, double ref, double scale,
                   double error_bar, std::uint64_t seed) {
    ResultRow row;
    row.point = std::move(point);
    row.reconstructed = rec;
    row.reference = ref;
    row.abs_error = std::abs(rec - ref);
    row.rel_error = row.abs_error / scale;
    row.error_bar = error_bar;
    row.seed = seed;
    return row;
}

AffinePlane sample_plane(int n, int k, double dist_lo, double dist_hi, RngStream& rng) {
    const GrassmannPoint s = sample_grassmann(n, k, rng);
    const Vec w = random_unit_in_span(s.orthocomplement().frame(), rng);
    const double r = rng.uniform(dist_lo, dist_hi);
    return AffinePlane(s, Vec(r * w));
}

double reference_scale(const std::vector<double>& refs) {
    double m = 0.0;
    for (double r : refs) m = std::max(m, std::abs(r));
    return std::max(m, 1e-12);
}

std::vector<ResultRow> run_forward(const ExperimentSpec& spec) {
    const AffinePhantom ph = make_affine_phantom(spec.phantom, spec.phantom_params, spec.cfg.n);
    if (!ph.radon_exact)
        throw std::invalid_argument("phantom " + spec.phantom +
                                    " has no closed-form Radon transform to compare against");
    RngStream rng(spec.cfg.seed);
    std::vector<AffinePlane> zetas;
    for (int i = 0; i < spec.sample_points; ++i)
        zetas.push_back(sample_plane(spec.cfg.n, spec.cfg.kprime, 0.1, 2.0, rng));
    std::vector<double> recs(zetas.size()), refs(zetas.size());
    parallel_for(zetas.size(), [&](std::size_t i) {
        recs[i] = radon_forward(ph.field, zetas[i], spec.cfg);
        refs[i] = ph.radon_exact(zetas[i]);
    });
    const double scale = reference_scale(refs);
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < zetas.size(); ++i)
        rows.push_back(make_row(describe_plane(zetas[i]), recs[i], refs[i], scale, 0.0,
                                spec.cfg.seed));
    return rows;
}

std::vector<ResultRow> run_dual(const ExperimentSpec& spec) {
    const AffinePhantom ph = make_affine_phantom(spec.phantom, spec.phantom_params, spec.cfg.n);
    if (!ph.dual_exact)
        throw std::invalid_argument("phantom " + spec.phantom +
                                    " has no closed-form dual transform to compare against");
    RngStream rng(spec.cfg.seed);
    std::vector<AffinePlane> taus;
    for (int i = 0; i < spec.sample_points; ++i)
        taus.push_back(sample_plane(spec.cfg.n, spec.cfg.k, 0.1, 2.0, rng));
    std::vector<double> recs(taus.size()), refs(taus.size());
    parallel_for(taus.size(), [&](std::size_t i) {
        recs[i] = radon_dual(ph.field, taus[i], spec.cfg);
        refs[i] = ph.dual_exact(taus[i]);
    });
    const double scale = reference_scale(refs);
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < taus.size(); ++i)
        rows.push_back(make_row(describe_plane(taus[i]), recs[i], refs[i], scale, 0.0,
                                spec.cfg.seed));
    return rows;
}

std::vector<ResultRow> run_invert_qr(const ExperimentSpec& spec) {
    const AffinePhantom ph = make_affine_phantom(spec.phantom, spec.phantom_params, spec.cfg.n);
    if (!ph.profile)
        throw std::invalid_argument("phantom " + spec.phantom + " is not quasi-radial");
    PipelineConfig cfg = spec.cfg;
    if (spec.phantom == "rational") {
        const double nu =
            spec.phantom_params.count("nu") ? spec.phantom_params.at("nu") : 2.0;
        cfg.tail = TailModel::power(-(2.0 * nu - 1.0)); // decay of the image Rf
    }

    MemoizedPlaneFn rf([&ph, &cfg](const AffinePlane& zeta) {
        return radon_forward(ph.field, zeta, cfg);
    });
    AffineFieldFn phi;
    phi.eval = rf;
    phi.quasi_radial = true; // quasi-radial images of quasi-radial phantoms
    phi.mu = ph.field.mu;

    const QuasiRadialProfile prof = invert_quasi_radial(phi, cfg);
    RngStream rng(cfg.seed);
    std::vector<GrassmannPoint> xis;
    for (int i = 0; i < spec.sample_points; ++i)
        xis.push_back(sample_grassmann(cfg.n, cfg.k, rng));

    std::vector<std::vector<ResultRow>> per_xi(xis.size());
    parallel_for(xis.size(), [&](std::size_t i) {
        const RadialGridFn& grid = prof.grid(xis[i]);
        std::vector<double> refs;
        for (double r : grid.nodes)
            if (r <= 3.0) refs.push_back(ph.profile(r));
        const double scale = reference_scale(refs);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (grid.nodes[j] > 3.0) continue;
            const std::string point =
                describe_plane(AffinePlane(xis[i], Vec(Vec::Zero(cfg.n)))) +
                fmt::format(";r={:.6f}", grid.nodes[j]);
            per_xi[i].push_back(make_row(point, grid.values[j], refs[idx++], scale, 0.0,
                                         cfg.seed));
        }
    });
    std::vector<ResultRow> rows;
    for (auto& chunk : per_xi)
        for (auto& r : chunk) rows.push_back(std::move(r));
    return rows;
}

std::vector<ResultRow> run_invert_general(const ExperimentSpec& spec) {
    const AffinePhantom ph = make_affine_phantom(spec.phantom, spec.phantom_params, spec.cfg.n);
    const PipelineConfig& cfg = spec.cfg;
    MemoizedPlaneFn rf([&ph, &cfg](const AffinePlane& zeta) {
        return radon_forward(ph.field, zeta, cfg);
    });
    RngStream rng(cfg.seed);
    std::vector<AffinePlane> taus;
    for (int i = 0; i < spec.sample_points; ++i)
        taus.push_back(sample_plane(cfg.n, cfg.k, 0.0, 1.2, rng));
    std::vector<double> recs(taus.size()), refs(taus.size());
    parallel_for(taus.size(), [&](std::size_t i) {
        recs[i] = invert_general(rf, taus[i], cfg);
        refs[i] = ph.field.eval(taus[i]);
    });
    const double scale = reference_scale(refs);
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < taus.size(); ++i)
        rows.push_back(make_row(describe_plane(taus[i]), recs[i], refs[i], scale, 0.0,
                                cfg.seed));
    return rows;
}

std::vector<ResultRow> run_invert_dual_qr(const ExperimentSpec& spec) {
    const AffinePhantom ph = make_affine_phantom(spec.phantom, spec.phantom_params, spec.cfg.n);
    if (!ph.profile)
        throw std::invalid_argument("phantom " + spec.phantom + " is not quasi-radial");
    const PipelineConfig& cfg = spec.cfg;
    MemoizedPlaneFn rdual([&ph, &cfg](const AffinePlane& tau) {
        return radon_dual(ph.field, tau, cfg);
    });
    AffineFieldFn f;
    f.eval = rdual;

    const QuasiRadialProfile prof = dual_quasi_radial_invert(f, cfg);
    RngStream rng(cfg.seed);
    std::vector<GrassmannPoint> etas;
    for (int i = 0; i < spec.sample_points; ++i)
        etas.push_back(sample_grassmann(cfg.n, cfg.kprime, rng));

    std::vector<std::vector<ResultRow>> per_eta(etas.size());
    parallel_for(etas.size(), [&](std::size_t i) {
        const RadialGridFn& grid = prof.grid(etas[i]);
        std::vector<double> refs;
        for (double t : grid.nodes)
            if (t <= 3.0) refs.push_back(ph.profile(t));
        const double scale = reference_scale(refs);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (grid.nodes[j] > 3.0) continue;
            const std::string point =
                describe_plane(AffinePlane(etas[i], Vec(Vec::Zero(cfg.n)))) +
                fmt::format(";t={:.6f}", grid.nodes[j]);
            per_eta[i].push_back(make_row(point, grid.values[j], refs[idx++], scale, 0.0,
                                          cfg.seed));
        }
    });
    std::vector<ResultRow> rows;
    for (auto& chunk : per_eta)
        for (auto& r : chunk) rows.push_back(std::move(r));
    return rows;
}

std::vector<ResultRow> run_invert_dual_general(const ExperimentSpec& spec) {
    const AffinePhantom ph = make_affine_phantom(spec.phantom, spec.phantom_params, spec.cfg.n);
    const PipelineConfig& cfg = spec.cfg;
    MemoizedPlaneFn rdual([&ph, &cfg](const AffinePlane& tau) {
        return radon_dual(ph.field, tau, cfg);
    });
    AffineFieldFn f;
    f.eval = rdual;
    f.mu = cfg.mu;

    RngStream rng(cfg.seed);
    std::vector<AffinePlane> zetas;
    for (int i = 0; i < spec.sample_points; ++i)
        zetas.push_back(sample_plane(cfg.n, cfg.kprime, 0.4, 2.0, rng));
    std::vector<double> recs(zetas.size()), refs(zetas.size());
    parallel_for(zetas.size(), [&](std::size_t i) {
        recs[i] = dual_general_invert(f, zetas[i], cfg);
        refs[i] = ph.field.eval(zetas[i]);
    });
    const double scale = reference_scale(refs);
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < zetas.size(); ++i)
        rows.push_back(make_row(describe_plane(zetas[i]), recs[i], refs[i], scale, 0.0,
                                cfg.seed));
    return rows;
}

std::vector<ResultRow> run_selftest(const ExperimentSpec& spec) {
    std::vector<ResultRow> rows;
    PipelineConfig cfg = spec.cfg;
    cfg.n = 3;
    cfg.k = 1;
    cfg.kprime = 2;

    // Witness that the dual transform does not preserve quasi-radiality:
    // phi0(eta, v) = |v . e2| averaged at (R^1, e2) and (R^1, e3).
    const AffineFieldFn phi0 = abs_component_affine(1);
    Mat e1frame = Mat::Zero(3, 1);
    e1frame(0, 0) = 1.0;
    const GrassmannPoint r1(e1frame);
    Vec e2 = Vec::Zero(3), e3 = Vec::Zero(3);
    e2(1) = 1.0;
    e3(2) = 1.0;
    const double v2 = radon_dual(phi0, AffinePlane(r1, e2), cfg);
    const double v3 = radon_dual(phi0, AffinePlane(r1, e3), cfg);
    rows.push_back(make_row("dual(|v.e2|) at (R^1, e2)", v2, 0.5, 1.0, 0.0, cfg.seed));
    rows.push_back(make_row("dual(|v.e2|) at (R^1, e3)", v3, 1.0 / M_PI, 1.0, 0.0, cfg.seed));

    // Left-inverse identity suite.
    struct Case {
        const char* name;
        std::function<double(double)> f;
        TailModel tail;
    };
    const Case cases[] = {
        {"exp(-r^2)", [](double r) { return std::exp(-r * r); }, TailModel::gaussian()},
        {"(1+r^2)^-2", [](double r) { return std::pow(1.0 + r * r, -2.0); },
         TailModel::power(-4.0)},
        {"r^2 exp(-r^2)", [](double r) { return r * r * std::exp(-r * r); },
         TailModel::gaussian()},
    };
    for (const auto& c : cases) {
        auto grid = RadialGridFn::sample(c.f, RadialGridFn::uniform_nodes(6.0, 512), c.tail);
        for (double a : {0.5, 1.0, 1.5}) {
            const FracOrder o{a, FracSide::Minus, FracKind::ErdelyiKober};
            const RadialGridFn back = frac_derivative(frac_integral(grid, o), o);
            double sup = 0.0;
            for (std::size_t i = 0; i < back.size(); ++i) {
                const double t = back.nodes[i];
                if (t < 0.6 || t > 5.4) continue;
                sup = std::max(sup, std::abs(back.values[i] - c.f(t)));
            }
            rows.push_back(make_row(fmt::format("EK left-inverse {} alpha={}", c.name, a),
                                    sup, 0.0, 1.0, 0.0, cfg.seed));
        }
    }
    return rows;
}

} // namespace

RunReport run(const ExperimentSpec& spec) {
    spec.validate();
    RunReport report;
    switch (spec.pipeline) {
    case Pipeline::Forward: report.rows = run_forward(spec); break;
    case Pipeline::Dual: report.rows = run_dual(spec); break;
    case Pipeline::InvertQR: report.rows = run_invert_qr(spec); break;
    case Pipeline::InvertGeneral: report.rows = run_invert_general(spec); break;
    case Pipeline::InvertDualQR: report.rows = run_invert_dual_qr(spec); break;
    case Pipeline::InvertDualGeneral: report.rows = run_invert_dual_general(spec); break;
    case Pipeline::Selftest: report.rows = run_selftest(spec); break;
    }
    report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                              [&](const ResultRow& r) { return r.rel_error <= spec.tolerance; });
    report.csv = csv_string(report.rows);
    if (!spec.output_path.empty()) {
        std::ofstream out(spec.output_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + spec.output_path);
        out << report.csv;
    }
    return report;
}

} // namespace agr
