#include "scc/jsonio.hpp"

#include <cmath>
#include <sstream>

namespace scc {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

[[noreturn]] void bad(const std::string& what) { throw invalid_input("config: " + what); }

}  // namespace

Json matrix_to_json(const RMat& m) {
    Json j;
    j["n"] = static_cast<int>(m.rows()) / 2;
    Json entries = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
    j["entries"] = entries;
    return j;
}

RMat matrix_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("entries")) bad("matrix needs fields n and entries");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 8) bad("matrix half-dimension out of range");
    const auto& e = j.at("entries");
    const int dim = 2 * n;
    if (!e.is_array() || static_cast<int>(e.size()) != dim * dim)
        bad("matrix entries must be a row-major array of length (2n)^2");
    RMat m(dim, dim);
    int k = 0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = e[k++].get<double>();
    return m;
}

Json cmatrix_to_json(const CMat& m) {
    Json j;
    j["n"] = static_cast<int>(m.rows());
    Json entries = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    j["entries"] = entries;
    return j;
}

CMat cmatrix_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxDim) bad("complex matrix dimension out of range");
    const auto& e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != n * n)
        bad("complex matrix entries must have length n^2");
    CMat m(n, n);
    int k = 0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const auto& p = e[k++];
            if (!p.is_array() || p.size() != 2) bad("complex entries are [re, im] pairs");
            m(r, c) = Complex(p[0].get<double>(), p[1].get<double>());
        }
    return m;
}

Domain domain_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "torus") {
        const int n = j.at("n").get<int>();
        if (n < 1 || n > 8) bad("torus half-dimension out of range");
        return Domain{DomainKind::torus, 2 * n, 1.0};
    }
    if (kind == "disk") {
        const double r = j.at("radius").get<double>();
        if (!(r > 0.0)) bad("disk radius must be positive");
        return Domain{DomainKind::disk, 2, r};
    }
    bad("domain kind must be torus or disk");
}

Json domain_to_json(const Domain& d) {
    Json j;
    if (d.kind == DomainKind::torus) {
        j["kind"] = "torus";
        j["n"] = d.dim / 2;
    } else {
        j["kind"] = "disk";
        j["radius"] = d.radius;
    }
    return j;
}

SympMap map_from_json(const Json& j, const Domain& domain) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        if (domain.kind != DomainKind::torus) bad("linear maps live on the torus");
        const RMat m = matrix_from_json(j.at("matrix"));
        IMat mi(m.rows(), m.cols());
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                const double v = m(r, c);
                if (std::abs(v - std::round(v)) > 1e-12) bad("linear map matrix must be integer");
                mi(r, c) = static_cast<std::int64_t>(std::llround(v));
            }
        if (static_cast<int>(m.rows()) != domain.dim) bad("linear map dimension mismatch");
        return linear_torus_map(IntegerSymplectic::from_matrix(mi));
    }
    if (kind == "shear") {
        if (domain.kind != DomainKind::torus) bad("shear maps live on the torus");
        const auto& axis = j.at("axis");
        if (!axis.is_array() || axis.size() != 2) bad("shear axis must be [i, j]");
        SineProfile f;
        const auto& p = j.at("profile");
        f.amplitude = p.at("amplitude").get<double>();
        f.harmonic = p.value("harmonic", 1);
        f.phase = p.value("phase", 0.0);
        return shear_map(axis[0].get<int>(), axis[1].get<int>(), f, domain.dim);
    }
    if (kind == "twist") {
        if (domain.kind != DomainKind::disk) bad("twist maps live on a disk");
        TwistSpec spec;
        const auto& c = j.at("center");
        spec.center_x = c[0].get<double>();
        spec.center_y = c[1].get<double>();
        spec.base_radius = j.at("radius").get<double>();
        spec.eps = j.at("epsilon").get<double>();
        const std::string o = j.value("orientation", "right");
        if (o == "right")
            spec.orientation = TwistOrientation::right;
        else if (o == "left")
            spec.orientation = TwistOrientation::left;
        else
            bad("twist orientation must be right or left");
        return epsilon_twist(spec, domain.radius);
    }
    bad("map kind must be linear, shear or twist");
}

QuadratureGrid grid_from_json(const Json& domain_j, const Json& resolution) {
    const Domain d = domain_from_json(domain_j);
    if (!resolution.is_array() || resolution.empty()) bad("resolution must be a nonempty array");
    std::vector<int> res;
    for (const auto& v : resolution) {
        const int r = v.get<int>();
        if (!power_of_two(r)) bad("resolutions must be powers of two");
        res.push_back(r);
    }
    if (d.kind == DomainKind::torus) {
        if (res.size() != 1) bad("torus resolution is a single per-axis value");
        return QuadratureGrid::torus_midpoint(d.dim, res[0]);
    }
    if (res.size() != 2) bad("disk resolution is [n_r, n_phi]");
    return QuadratureGrid::disk_polar(d.radius, res[0], res[1]);
}

TwistReportConfig twist_report_config_from_json(const Json& j) {
    TwistReportConfig cfg;
    const Domain d = domain_from_json(j.at("domain"));
    if (d.kind != DomainKind::disk) bad("twist report needs a disk domain");
    cfg.options.domain_radius = d.radius;
    if (j.contains("resolution")) {
        const auto& res = j.at("resolution");
        if (!res.is_array() || res.size() != 2) bad("resolution is [n_r, n_phi]");
        cfg.options.grid_n_r = res[0].get<int>();
        cfg.options.grid_n_phi = res[1].get<int>();
        if (!power_of_two(cfg.options.grid_n_r) || !power_of_two(cfg.options.grid_n_phi))
            bad("resolutions must be powers of two");
    }
    const auto& t = j.at("twist");
    const auto& c = t.at("center");
    cfg.base.center_x = c[0].get<double>();
    cfg.base.center_y = c[1].get<double>();
    cfg.base.base_radius = t.at("radius").get<double>();
    const std::string o = t.value("orientation", "right");
    cfg.base.orientation = o == "left" ? TwistOrientation::left : TwistOrientation::right;
    for (const auto& e : j.at("epsilons")) cfg.eps_list.push_back(e.get<double>());
    if (j.contains("holes"))
        for (const auto& h : j.at("holes")) {
            HoleSpec hole;
            hole.center_x = h.at("center")[0].get<double>();
            hole.center_y = h.at("center")[1].get<double>();
            hole.radius = h.at("radius").get<double>();
            cfg.holes.push_back(hole);
        }
    if (j.contains("lantern")) cfg.lantern = j.at("lantern");
    return cfg;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string twist_report_to_csv(const TwistReport& rep, std::size_t hole_count,
                                std::optional<double> lantern_value) {
    const std::size_t ncols = hole_count + 5;  // epsilon, gamma, taus..., calabi, fit, slope
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < ncols; ++i) {
            if (i) out << ',';
            if (i < fields.size()) out << fields[i];
        }
        out << '\n';
    };
    std::vector<std::string> header = {"epsilon", "gamma_circ"};
    for (std::size_t j = 0; j < hole_count; ++j) header.push_back("tau_" + std::to_string(j + 1));
    header.insert(header.end(), {"calabi", "fitted_limit", "slope"});
    emit(header);
    for (const auto& row : rep.rows) {
        std::vector<std::string> fields = {fmt(row.eps), fmt(row.gamma)};
        for (double t : row.taus) fields.push_back(fmt(t));
        fields.push_back(fmt(row.calabi));
        emit(fields);
    }
    auto fit_row = [&](const std::string& name, const AffineFit& f) {
        std::vector<std::string> fields(ncols);
        fields[0] = "fit:" + name;
        fields[ncols - 2] = fmt(f.intercept);
        fields[ncols - 1] = fmt(f.slope);
        emit(fields);
    };
    fit_row("gamma_circ", rep.gamma_fit);
    for (std::size_t j = 0; j < rep.tau_fits.size(); ++j)
        fit_row("tau_" + std::to_string(j + 1), rep.tau_fits[j]);
    fit_row("calabi", rep.calabi_fit);
    if (lantern_value) {
        std::vector<std::string> fields(ncols);
        fields[0] = "lantern_combination";
        fields[ncols - 2] = fmt(*lantern_value);
        emit(fields);
    }
    return out.str();
}

}  // namespace scc
