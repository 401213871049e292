#include "upcap/serialize.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace upcap {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("expected a nonempty numeric array");
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
    return v;
}

}  // namespace

nlohmann::json body_to_json(const ConvexBody& body) {
    json j;
    switch (body.kind()) {
        case ConvexBody::Kind::Interval:
            j["kind"] = "interval";
            j["lo"] = vec_to_json(body.lower());
            j["hi"] = vec_to_json(body.upper());
            break;
        case ConvexBody::Kind::Ball:
            j["kind"] = "ball";
            j["center"] = vec_to_json(body.center());
            j["radius"] = body.radius();
            break;
        case ConvexBody::Kind::Polytope: {
            j["kind"] = "polytope";
            json vertices = json::array();
            for (const auto& v : body.vertices()) vertices.push_back(vec_to_json(v));
            j["vertices"] = std::move(vertices);
            break;
        }
    }
    return j;
}

ConvexBody body_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "interval") {
        return ConvexBody::interval(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")));
    }
    if (kind == "ball") {
        return ConvexBody::ball(vec_from_json(j.at("center")), j.at("radius").get<double>());
    }
    if (kind == "polytope") {
        std::vector<Vec> vertices;
        for (const auto& v : j.at("vertices")) vertices.push_back(vec_from_json(v));
        return ConvexBody::polytope(std::move(vertices));
    }
    throw std::invalid_argument("body_from_json: unknown kind '" + kind + "'");
}

nlohmann::json space_to_json(const FiniteSpace& space) {
    json j;
    j["name"] = space.name();
    j["d"] = space.dim();
    json supports = json::array();
    for (const auto& support : space.supports()) {
        json points = json::array();
        for (const auto& p : support) points.push_back(vec_to_json(p));
        supports.push_back(std::move(points));
    }
    j["supports"] = std::move(supports);
    j["extremes"] = space.extremes();
    return j;
}

std::shared_ptr<FiniteSpace> space_from_json(const nlohmann::json& j) {
    const int d = j.at("d").get<int>();
    std::vector<std::vector<Vec>> supports;
    for (const auto& support : j.at("supports")) {
        std::vector<Vec> points;
        for (const auto& p : support) points.push_back(vec_from_json(p));
        supports.push_back(std::move(points));
    }
    auto extremes = j.at("extremes").get<std::vector<std::vector<std::vector<double>>>>();
    const std::string name = j.value("name", std::string());
    return std::make_shared<FiniteSpace>(d, std::move(supports), std::move(extremes), name);
}

SpaceFixture load_space_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open space file: " + path.string());
    json j;
    in >> j;
    SpaceFixture fixture;
    fixture.space = space_from_json(j);
    fixture.expect_independent = j.value("expect_independent", true);
    return fixture;
}

PriorFamily family_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform_shift") {
        return PriorFamily::uniform_shift(j.at("a").get<double>(), j.at("r").get<double>(),
                                          j.at("n").get<int>());
    }
    if (kind == "ball_shift") {
        return PriorFamily::ball_shift(j.at("r").get<double>(), j.at("n").get<int>(),
                                       body_from_json(j.at("shift_set")));
    }
    if (kind == "discrete") {
        std::filesystem::path space_path = j.at("space").get<std::string>();
        if (space_path.is_relative()) space_path = base_dir / space_path;
        return PriorFamily::discrete(load_space_file(space_path).space);
    }
    throw std::invalid_argument("family_from_json: unknown kind '" + kind + "'");
}

}  // namespace upcap
