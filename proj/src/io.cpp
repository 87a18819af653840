#include "tugsched/io.hpp"

#include <fstream>
#include <sstream>

#include "tugsched/error.hpp"

namespace tug {

namespace {

Json window_json(const Window& w) {
    Json lhs = w.earliest;
    Json rhs = w.latest == kUnbounded ? Json(nullptr) : Json(w.latest);
    return Json::array({lhs, rhs});
}

template <typename T>
T field(const Json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw SchemaError(std::string(where) + ": missing field '" + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

template <typename T>
T field_or(const Json& obj, const char* key, T fallback, const char* where) {
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) {
        return fallback;
    }
    return field<T>(obj, key, where);
}

Window window_from(const Json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) {
        return {};
    }
    const Json& w = obj.at(key);
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !(w[1].is_number() || w[1].is_null())) {
        throw SchemaError(std::string(where) + ": window '" + key + "' must be [earliest, latest]");
    }
    return Window{w[0].get<double>(), w[1].is_null() ? kUnbounded : w[1].get<double>()};
}

const Json& array_field(const Json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array()) {
        throw SchemaError(std::string(where) + ": missing array '" + key + "'");
    }
    return obj.at(key);
}

std::vector<std::vector<double>> matrix_from(const Json& j, const char* key) {
    try {
        return j.at(key).get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("network: '") + key + "' must be a numeric matrix");
    }
}

}  // namespace

std::string canonical(const Json& doc) {
    return doc.dump(2) + "\n";
}

Json to_json(const InstanceData& data) {
    Json doc;
    Json tugs = Json::array();
    for (const Tugboat& t : data.tugboats) {
        tugs.push_back({{"id", t.id},
                        {"max_working_time", t.max_working_time},
                        {"cost_per_time", t.cost_per_time},
                        {"cost_per_distance", t.cost_per_distance}});
    }
    doc["tugboats"] = tugs;
    Json fs = Json::array();
    for (const TypeFOrder& f : data.orders_f) {
        fs.push_back({{"origin_window", window_json(f.origin_window)},
                      {"destination_window", window_json(f.destination_window)}});
    }
    doc["orders_f"] = fs;
    Json es = Json::array();
    for (const TypeEOrder& e : data.orders_e) {
        es.push_back({{"required_barges", e.required_barges}, {"window", window_json(e.window)}});
    }
    doc["orders_e"] = es;
    Json bs = Json::array();
    for (const EmptyBarge& b : data.barges) {
        bs.push_back({{"idle_until", b.idle_until}, {"window", window_json(b.window)}});
    }
    doc["barges"] = bs;
    Json net;
    if (!data.coordinates.empty()) {
        Json coords = Json::array();
        for (const Coordinate& c : data.coordinates) {
            coords.push_back({c.lon, c.lat});
        }
        net["coordinates"] = coords;
        net["speed"] = data.speed;
    } else {
        net["time_matrix"] = data.time_matrix;
        net["distance_matrix"] = data.distance_matrix;
    }
    doc["network"] = net;
    doc["params"] = {{"K", data.capacity},
                     {"penalties",
                      {{"time_window", data.penalties.time_window},
                       {"working_hours", data.penalties.working_hours},
                       {"unserved", data.penalties.unserved}}}};
    return doc;
}

InstanceData instance_data_from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw SchemaError("instance document must be an object");
    }
    InstanceData d;
    for (const Json& t : array_field(doc, "tugboats", "instance")) {
        Tugboat tb;
        tb.id = field_or<std::string>(t, "id", "T" + std::to_string(d.tugboats.size() + 1), "tugboat");
        tb.max_working_time = field_or<double>(t, "max_working_time", 14.0, "tugboat");
        tb.cost_per_time = field<double>(t, "cost_per_time", "tugboat");
        tb.cost_per_distance = field<double>(t, "cost_per_distance", "tugboat");
        d.tugboats.push_back(tb);
    }
    for (const Json& f : array_field(doc, "orders_f", "instance")) {
        d.orders_f.push_back({window_from(f, "origin_window", "typeF order"),
                              window_from(f, "destination_window", "typeF order")});
    }
    for (const Json& e : array_field(doc, "orders_e", "instance")) {
        d.orders_e.push_back({field<int>(e, "required_barges", "typeE order"), window_from(e, "window", "typeE order")});
    }
    for (const Json& b : array_field(doc, "barges", "instance")) {
        d.barges.push_back({field_or<double>(b, "idle_until", 0.0, "barge"), window_from(b, "window", "barge")});
    }
    if (!doc.contains("network") || !doc["network"].is_object()) {
        throw SchemaError("instance: missing object 'network'");
    }
    const Json& net = doc["network"];
    if (net.contains("coordinates")) {
        for (const Json& c : array_field(net, "coordinates", "network")) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
                throw SchemaError("network: coordinates must be [lon, lat] pairs");
            }
            d.coordinates.push_back({c[0].get<double>(), c[1].get<double>()});
        }
        d.speed = field_or<double>(net, "speed", 20.0, "network");
    } else if (net.contains("time_matrix") && net.contains("distance_matrix")) {
        d.time_matrix = matrix_from(net, "time_matrix");
        d.distance_matrix = matrix_from(net, "distance_matrix");
    } else {
        throw SchemaError("network: needs coordinates+speed or time_matrix+distance_matrix");
    }
    if (doc.contains("params")) {
        const Json& params = doc["params"];
        d.capacity = field_or<int>(params, "K", 5, "params");
        if (params.contains("penalties")) {
            const Json& pen = params["penalties"];
            d.penalties.time_window = field_or<double>(pen, "time_window", d.penalties.time_window, "penalties");
            d.penalties.working_hours = field_or<double>(pen, "working_hours", d.penalties.working_hours, "penalties");
            d.penalties.unserved = field_or<double>(pen, "unserved", d.penalties.unserved, "penalties");
        }
    }
    return d;
}

Json to_json(const Solution& sol) {
    Json doc;
    Json routes = Json::array();
    for (const Route& r : sol.routes) {
        Json route = Json::array();
        for (const RouteElement& el : r) {
            if (el.order >= 0) {
                route.push_back({el.node, el.visit, el.order});
            } else {
                route.push_back({el.node, el.visit});
            }
        }
        routes.push_back(route);
    }
    doc["routes"] = routes;
    doc["unassigned_f"] = sol.unassigned_f;
    Json pooled = Json::array();
    for (const PooledEOrder& e : sol.unassigned_e) {
        pooled.push_back({e.order, e.remaining});
    }
    doc["unassigned_e"] = pooled;
    doc["free_barges"] = sol.free_barges;
    return doc;
}

Json to_json(const Schedule& schedule) {
    Json out = Json::array();
    for (const RouteSchedule& rs : schedule.routes) {
        Json visits = Json::array();
        for (const VisitSchedule& v : rs.visits) {
            visits.push_back({{"arrival", v.arrival},
                              {"stay", v.stay},
                              {"full_load", v.full_load},
                              {"empty_load", v.empty_load},
                              {"dropped", v.dropped}});
        }
        out.push_back({{"start", rs.start},
                       {"start_full", rs.start_full},
                       {"start_empty", rs.start_empty},
                       {"finish", rs.finish},
                       {"visits", visits}});
    }
    return out;
}

Json to_json(const LossBreakdown& loss) {
    return {{"time_cost", loss.time_cost},
            {"distance_cost", loss.distance_cost},
            {"tw_penalty", loss.tw_penalty},
            {"hours_penalty", loss.hours_penalty},
            {"unserved_penalty", loss.unserved_penalty},
            {"total", loss.total}};
}

Json to_json(const std::vector<Violation>& violations) {
    Json out = Json::array();
    for (const Violation& v : violations) {
        Json j = {{"constraint", v.constraint}, {"magnitude", v.magnitude}, {"message", v.message}};
        j["tugboat"] = v.tugboat ? Json(*v.tugboat) : Json(nullptr);
        j["node"] = v.node ? Json(*v.node) : Json(nullptr);
        out.push_back(j);
    }
    return out;
}

Json solution_report(const Instance& inst, const Solution& sol, const Penalties& pen) {
    Json doc = to_json(sol);
    Schedule schedule;
    for (const Route& r : sol.routes) {
        schedule.routes.push_back(propagate_route(inst, r, true));
    }
    doc["schedule"] = to_json(schedule);
    doc["loss"] = to_json(loss(inst, sol, pen));
    return doc;
}

Solution solution_from_json(const Json& doc) {
    Solution sol;
    try {
        for (const Json& r : array_field(doc, "routes", "solution")) {
            Route route;
            for (const Json& el : r) {
                if (!el.is_array() || el.size() < 2 || el.size() > 3) {
                    throw SchemaError("solution: route elements are [node, visit] or [node, visit, order]");
                }
                route.push_back({el[0].get<int>(), el[1].get<int>(), el.size() == 3 ? el[2].get<int>() : -1});
            }
            sol.routes.push_back(std::move(route));
        }
        if (doc.contains("unassigned_f")) {
            sol.unassigned_f = doc["unassigned_f"].get<std::vector<int>>();
        }
        if (doc.contains("unassigned_e")) {
            for (const Json& e : doc["unassigned_e"]) {
                sol.unassigned_e.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
            }
        }
        if (doc.contains("free_barges")) {
            sol.free_barges = doc["free_barges"].get<std::vector<int>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("solution: ") + e.what());
    }
    return sol;
}

std::optional<Schedule> schedule_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("schedule")) {
        return std::nullopt;
    }
    Schedule s;
    try {
        for (const Json& r : doc["schedule"]) {
            RouteSchedule rs;
            rs.start = r.value("start", 0.0);
            rs.start_full = r.value("start_full", 0);
            rs.start_empty = r.value("start_empty", 0);
            rs.finish = r.at("finish").get<double>();
            for (const Json& v : r.at("visits")) {
                rs.visits.push_back({v.at("arrival").get<double>(), v.at("stay").get<double>(),
                                     v.at("full_load").get<int>(), v.at("empty_load").get<int>(),
                                     v.value("dropped", 0)});
            }
            s.routes.push_back(std::move(rs));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("schedule: ") + e.what());
    }
    return s;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

InstanceData read_instance_data(const std::filesystem::path& path) {
    return instance_data_from_json(read_json(path));
}

Instance read_instance(const std::filesystem::path& path) {
    return build_instance(read_instance_data(path));
}

void write_instance(const std::filesystem::path& path, const InstanceData& data) {
    write_text(path, canonical(to_json(data)));
}

}  // namespace tug
