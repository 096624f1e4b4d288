#include "stieltjes/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stieltjes/cantor.hpp"

namespace stieltjes {

namespace {

using nlohmann::json;

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail(ErrorCode::BadInput, "invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

SegmentForm parse_form(const json& j) {
    std::string form = j.at("form").get<std::string>();
    if (form == "affine")
        return AffineForm{j.at("slope").get<double>(), j.at("intercept").get<double>()};
    if (form == "constant") return ConstantForm{j.at("level").get<double>()};
    if (form == "exp")
        return ExpForm{j.at("scale").get<double>(), j.at("rate").get<double>(),
                       j.value("shift", 0.0)};
    fail(ErrorCode::BadInput, "unknown segment form '" + form + "'");
}

json form_to_json(const SegmentForm& form) {
    json j;
    if (const auto* a = std::get_if<AffineForm>(&form)) {
        j["form"] = "affine";
        j["slope"] = a->slope;
        j["intercept"] = a->intercept;
    } else if (const auto* c = std::get_if<ConstantForm>(&form)) {
        j["form"] = "constant";
        j["level"] = c->level;
    } else if (const auto* e = std::get_if<ExpForm>(&form)) {
        j["form"] = "exp";
        j["scale"] = e->scale;
        j["rate"] = e->rate;
        j["shift"] = e->shift;
    } else {
        fail(ErrorCode::BadInput, "custom segments have no JSON form");
    }
    return j;
}

std::map<double, double> parse_point_map(const json& j) {
    std::map<double, double> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[std::stod(it.key())] = it.value().get<double>();
    return out;
}

std::string key(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

bool is_single_cantor(const json& j) {
    const auto& segs = j.at("segments");
    return segs.size() == 1 && segs[0].at("form").get<std::string>() == "cantor";
}

}  // namespace

Derivator parse_derivator(const std::string& json_text) {
    json j = json::parse(json_text);
    if (is_single_cantor(j)) return cantor_derivator(j["segments"][0].at("depth").get<int>());

    auto domain = j.at("domain");
    double a = domain.at(0).get<double>(), b = domain.at(1).get<double>();
    std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
    std::vector<SegmentForm> segs;
    for (const auto& js : j.at("segments")) segs.push_back(parse_form(js));
    std::map<double, double> jumps;
    if (j.contains("jumps")) jumps = parse_point_map(j["jumps"]);
    return Derivator::build(a, b, std::move(bps), std::move(segs), std::move(jumps));
}

Derivator load_derivator(const std::string& path) {
    return parse_derivator(read_file(path).dump());
}

std::string derivator_to_json(const Derivator& g) {
    json j;
    j["domain"] = {g.domain_lo(), g.domain_hi()};
    j["breakpoints"] = g.breakpoints();
    j["segments"] = json::array();
    for (const auto& s : g.segments()) j["segments"].push_back(form_to_json(s));
    json jumps = json::object();
    for (const auto& [t, dg] : g.jumps()) jumps[key(t)] = dg;
    j["jumps"] = jumps;
    return j.dump(2);
}

PiecewiseMap parse_piecewise(const std::string& json_text) {
    json j = json::parse(json_text);
    if (is_single_cantor(j)) return cantor_iterate_fn(j["segments"][0].at("depth").get<int>());

    std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
    std::vector<SegmentForm> segs;
    for (const auto& js : j.at("segments")) segs.push_back(parse_form(js));
    std::map<double, double> values, rights;
    if (j.contains("point_values")) values = parse_point_map(j["point_values"]);
    if (j.contains("right_limits")) rights = parse_point_map(j["right_limits"]);
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values),
                               std::move(rights));
}

PiecewiseMap load_piecewise(const std::string& path) {
    return parse_piecewise(read_file(path).dump());
}

std::string piecewise_to_json(const PiecewiseMap& f) {
    json j;
    j["breakpoints"] = f.breakpoints();
    j["segments"] = json::array();
    for (const auto& s : f.segments()) j["segments"].push_back(form_to_json(s));
    json values = json::object();
    for (size_t i = 0; i < f.breakpoints().size(); ++i)
        values[key(f.breakpoints()[i])] = f.point_values()[i];
    j["point_values"] = values;
    json rights = json::object();
    for (const auto& [t, v] : f.right_limit_overrides()) rights[key(t)] = v;
    j["right_limits"] = rights;
    return j.dump(2);
}

}  // namespace stieltjes
