#include "raincorr/model_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "raincorr/errors.hpp"

namespace raincorr {

using nlohmann::json;

namespace {

json to_json(const IntensityClass& c) {
    return {{"lower", c.lower}, {"upper", c.upper ? json(*c.upper) : json(nullptr)}};
}

IntensityClass class_from_json(const json& j) {
    IntensityClass c{j.at("lower").get<double>(), std::nullopt};
    if (!j.at("upper").is_null()) c.upper = j.at("upper").get<double>();
    return c;
}

json to_json(const Normalization& n) { return {{"min", n.min}, {"range", n.range}}; }
Normalization norm_from_json(const json& j) { return {j.at("min").get<double>(), j.at("range").get<double>()}; }

json to_json(const FeatureScaling& s) {
    return {{"today", to_json(s.today)}, {"yesterday", to_json(s.yesterday)}, {"target", to_json(s.target)}};
}
FeatureScaling scaling_from_json(const json& j) {
    return {norm_from_json(j.at("today")), norm_from_json(j.at("yesterday")), norm_from_json(j.at("target"))};
}

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}
Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (row.size() != static_cast<std::size_t>(cols)) throw ParseError("matrix row has wrong width");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return m;
}
json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }
Eigen::VectorXd vector_from_json(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json to_json(const numerics::EmpiricalCdf& cdf) {
    if (cdf.values().empty()) return nullptr;
    return {{"values", cdf.values()}, {"positions", cdf.positions()}, {"n", cdf.sample_size()}};
}
numerics::EmpiricalCdf ecdf_from_json(const json& j) {
    if (j.is_null()) return {};
    return numerics::EmpiricalCdf::from_knots(j.at("values").get<std::vector<double>>(),
                                              j.at("positions").get<std::vector<double>>(),
                                              j.at("n").get<std::size_t>());
}

json to_json(const numerics::GammaDist& d) { return {{"shape", d.shape()}, {"scale", d.scale()}}; }

json loci_json(const LociModel& m) {
    auto month = [](const LociMonth& x) {
        return json{{"month", x.threshold.month}, {"t_gauge", x.threshold.t_gauge},
                    {"t_sre", x.threshold.t_sre}, {"scale", x.scale}, {"fallback", x.fallback}};
    };
    json months = json::array();
    for (const auto& x : m.months) months.push_back(month(x));
    return {{"type", "LOCI"}, {"t_gauge", m.t_gauge}, {"months", months}, {"annual", month(m.annual)}};
}

LociModel loci_from(const json& j) {
    auto month = [](const json& x) {
        LociMonth out;
        out.threshold = {x.at("month").get<unsigned>(), x.at("t_gauge").get<double>(), x.at("t_sre").get<double>()};
        out.scale = x.at("scale").get<double>();
        out.fallback = x.at("fallback").get<bool>();
        return out;
    };
    LociModel m;
    m.t_gauge = j.at("t_gauge").get<double>();
    const auto& months = j.at("months");
    if (months.size() != 12) throw ParseError("LOCI model needs 12 months");
    for (std::size_t i = 0; i < 12; ++i) m.months[i] = month(months[i]);
    m.annual = month(j.at("annual"));
    return m;
}

json qm_json(const QmModel& m) {
    json months = json::array();
    for (const auto& x : m.months) {
        months.push_back({{"month", x.threshold.month},
                          {"t_gauge", x.threshold.t_gauge},
                          {"t_sre", x.threshold.t_sre},
                          {"fallback", x.fallback},
                          {"gauge", x.gauge_dist ? to_json(*x.gauge_dist) : json(nullptr)},
                          {"sre", x.sre_dist ? to_json(*x.sre_dist) : json(nullptr)}});
    }
    return {{"type", "QM"},           {"t_gauge", m.t_gauge},
            {"pooled_t_sre", m.pooled_t_sre}, {"months", months},
            {"gauge_wet", to_json(m.gauge_wet)}, {"sre_wet", to_json(m.sre_wet)}};
}

QmModel qm_from(const json& j) {
    auto dist = [](const json& x) -> std::optional<numerics::GammaDist> {
        if (x.is_null()) return std::nullopt;
        return numerics::GammaDist(x.at("shape").get<double>(), x.at("scale").get<double>());
    };
    QmModel m;
    m.t_gauge = j.at("t_gauge").get<double>();
    m.pooled_t_sre = j.at("pooled_t_sre").get<double>();
    const auto& months = j.at("months");
    if (months.size() != 12) throw ParseError("QM model needs 12 months");
    for (std::size_t i = 0; i < 12; ++i) {
        const auto& x = months[i];
        QmMonth& out = m.months[i];
        out.threshold = {x.at("month").get<unsigned>(), x.at("t_gauge").get<double>(), x.at("t_sre").get<double>()};
        out.fallback = x.at("fallback").get<bool>();
        out.gauge_dist = dist(x.at("gauge"));
        out.sre_dist = dist(x.at("sre"));
        if (!out.fallback && !(out.gauge_dist && out.sre_dist))
            throw ParseError("QM month without fallback lacks distributions");
    }
    m.gauge_wet = ecdf_from_json(j.at("gauge_wet"));
    m.sre_wet = ecdf_from_json(j.at("sre_wet"));
    return m;
}

json gpr_json(const GprModel& m) {
    json classes = json::array();
    for (const auto& c : m.classes()) {
        json jc = {{"class", to_json(c.intensity_class())}, {"passthrough", c.is_passthrough()}};
        if (!c.is_passthrough()) {
            jc["kernel"] = {{"nu", c.kernel().nu}, {"sigma2", c.kernel().sigma2}, {"rho", c.kernel().rho}};
            jc["noise"] = c.noise();
            jc["scaling"] = to_json(c.scaling());
            jc["inputs"] = to_json(c.inputs());
            jc["targets"] = to_json(c.targets());
        }
        classes.push_back(std::move(jc));
    }
    return {{"type", "GPR"}, {"classes", classes}};
}

GprModel gpr_from(const json& j) {
    std::vector<GprClassModel> classes;
    for (const auto& jc : j.at("classes")) {
        const auto cls = class_from_json(jc.at("class"));
        if (jc.at("passthrough").get<bool>()) {
            classes.push_back(GprClassModel::passthrough(cls));
            continue;
        }
        const auto& k = jc.at("kernel");
        classes.emplace_back(cls, matrix_from_json(jc.at("inputs"), 2), vector_from_json(jc.at("targets")),
                             numerics::Matern{k.at("nu").get<double>(), k.at("sigma2").get<double>(),
                                              k.at("rho").get<double>()},
                             jc.at("noise").get<double>(), scaling_from_json(jc.at("scaling")));
    }
    return GprModel(std::move(classes));
}

json svr_json(const SvrModel& m) {
    json classes = json::array();
    for (const auto& c : m.classes()) {
        json jc = {{"class", to_json(c.intensity_class())}, {"passthrough", c.is_passthrough()}};
        if (!c.is_passthrough()) {
            jc["kernel"] = {{"v2", c.kernel().v2}, {"lambda", c.kernel().lambda}};
            jc["c"] = c.c();
            jc["epsilon"] = c.epsilon();
            jc["bias"] = c.bias();
            jc["kkt_residual"] = c.kkt_residual();
            jc["scaling"] = to_json(c.scaling());
            jc["support"] = to_json(c.support_vectors());
            jc["dual"] = to_json(c.dual_coefficients());
        }
        classes.push_back(std::move(jc));
    }
    return {{"type", "SVR"}, {"classes", classes}};
}

SvrModel svr_from(const json& j) {
    std::vector<SvrClassModel> classes;
    for (const auto& jc : j.at("classes")) {
        const auto cls = class_from_json(jc.at("class"));
        if (jc.at("passthrough").get<bool>()) {
            classes.push_back(SvrClassModel::passthrough(cls));
            continue;
        }
        const auto& k = jc.at("kernel");
        classes.emplace_back(cls, matrix_from_json(jc.at("support"), 2), vector_from_json(jc.at("dual")),
                             jc.at("bias").get<double>(),
                             numerics::Rbf{k.at("v2").get<double>(), k.at("lambda").get<double>()},
                             jc.at("c").get<double>(), jc.at("epsilon").get<double>(),
                             scaling_from_json(jc.at("scaling")), jc.at("kkt_residual").get<double>());
    }
    return SvrModel(std::move(classes));
}

json single_json(const CorrectionModel& model) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LociModel>) return loci_json(m);
            else if constexpr (std::is_same_v<T, QmModel>) return qm_json(m);
            else if constexpr (std::is_same_v<T, GprModel>) return gpr_json(m);
            else if constexpr (std::is_same_v<T, SvrModel>) return svr_json(m);
            else throw Error("hybrid models are serialised as a manifest");
        },
        model);
}

CorrectionModel single_from(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "LOCI") return loci_from(j);
    if (type == "QM") return qm_from(j);
    if (type == "GPR") return gpr_from(j);
    if (type == "SVR") return svr_from(j);
    throw ParseError("unknown model type '" + type + "'");
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open model file '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("model file '" + path.string() + "': " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << j.dump(1) << '\n';
}

}  // namespace

std::string model_to_json(const CorrectionModel& model) { return single_json(model).dump(); }

CorrectionModel model_from_json(const std::string& text) {
    try {
        return single_from(json::parse(text));
    } catch (const json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const ModelFile& file) {
    json header = {{"station_id", file.station_id},
                   {"sre", file.sre},
                   {"method", std::string(to_string(file.method))},
                   {"t_gauge", file.t_gauge},
                   {"split", format_date(file.split)}};
    if (const auto* hybrid = std::get_if<HybridModel>(&file.model)) {
        const auto stem = path.stem().string();
        const auto s1 = stem + ".stage1.json";
        const auto s2 = stem + ".stage2.json";
        const CorrectionModel stage1 = std::visit([](const auto& m) { return CorrectionModel{m}; }, hybrid->stage1);
        write_json(path.parent_path() / s1, single_json(stage1));
        write_json(path.parent_path() / s2, gpr_json(hybrid->stage2));
        header["stage1"] = s1;
        header["stage2"] = s2;
    } else {
        header["model"] = single_json(file.model);
    }
    write_json(path, header);
}

ModelFile load_model(const std::filesystem::path& path) {
    const json j = read_json(path);
    try {
        ModelFile f;
        f.station_id = j.at("station_id").get<std::string>();
        f.sre = j.at("sre").get<std::string>();
        f.method = method_from_string(j.at("method").get<std::string>());
        f.t_gauge = j.at("t_gauge").get<double>();
        f.split = parse_date(j.at("split").get<std::string>());
        if (j.contains("stage1")) {
            const auto dir = path.parent_path();
            auto stage1 = single_from(read_json(dir / j.at("stage1").get<std::string>()));
            auto stage2 = single_from(read_json(dir / j.at("stage2").get<std::string>()));
            HybridModel h{LociModel{}, std::get<GprModel>(std::move(stage2))};
            if (auto* loci = std::get_if<LociModel>(&stage1)) h.stage1 = std::move(*loci);
            else if (auto* qm = std::get_if<QmModel>(&stage1)) h.stage1 = std::move(*qm);
            else throw ParseError("hybrid stage 1 must be LOCI or QM");
            f.model = std::move(h);
        } else {
            f.model = single_from(j.at("model"));
        }
        return f;
    } catch (const json::exception& e) {
        throw ParseError("model file '" + path.string() + "': " + e.what());
    } catch (const ConfigError& e) {
        throw ParseError("model file '" + path.string() + "': " + e.what());
    } catch (const std::bad_variant_access&) {
        throw ParseError("model file '" + path.string() + "': hybrid stage 2 must be GPR");
    }
}

}  // namespace raincorr
