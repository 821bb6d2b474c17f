#include "bison/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bison/errors.hpp"

namespace bison {

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

SectionMap parse_ini(std::istream& in) {
    SectionMap sections;
    std::string line;
    std::string current = "";
    while (std::getline(in, line)) {
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            current = trim(line.substr(1, line.size() - 2));
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line is not key = value: " + line);
        sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return sections;
}

SectionMap parse_json_sections(std::istream& in) {
    nlohmann::json doc;
    in >> doc;
    SectionMap sections;
    for (const auto& [section, body] : doc.items()) {
        if (!body.is_object()) throw ConfigError("json config sections must be objects");
        for (const auto& [key, value] : body.items()) {
            std::string text;
            if (value.is_string()) {
                text = value.get<std::string>();
            } else if (value.is_array()) {
                std::ostringstream os;
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) os << ", ";
                    if (value[i].is_string()) os << value[i].get<std::string>();
                    else os << value[i].dump();
                }
                text = os.str();
            } else {
                text = value.dump();
            }
            sections[section][key] = text;
        }
    }
    return sections;
}

SectionMap load_sections(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    // JSON configs are accepted as an alternative encoding of the same keys.
    char first = 0;
    in >> std::ws;
    first = static_cast<char>(in.peek());
    in.seekg(0);
    if (first == '{') return parse_json_sections(in);
    return parse_ini(in);
}

const std::string* find_key(const SectionMap& sections, const std::string& section,
                            const std::string& key) {
    const auto sit = sections.find(section);
    if (sit == sections.end()) return nullptr;
    const auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    return &kit->second;
}

double to_double(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + field + " is not a number: " + text);
    }
}

long long to_int(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + field + " is not an integer: " + text);
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') depth++;
        if (c == ')') depth--;
        if (c == ',' && depth == 0) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) items.push_back(trim(cur));
    return items;
}

void apply_simulation_keys(const SectionMap& sections, SimulationConfig& sim) {
    auto dbl = [&](const char* key, double& out) {
        if (const std::string* v = find_key(sections, "simulation", key)) out = to_double(*v, key);
    };
    auto integer = [&](const char* key, int& out) {
        if (const std::string* v = find_key(sections, "simulation", key)) {
            out = static_cast<int>(to_int(*v, key));
        }
    };
    dbl("r_s", sim.r_s);
    dbl("r_c", sim.r_c);
    dbl("sigma", sim.sigma);
    dbl("tau", sim.tau);
    integer("c_max", sim.c_max);
    dbl("min_pac", sim.min_pac);
    integer("max_ticks", sim.max_ticks);
    dbl("dt", sim.dt);
    dbl("injection_x", sim.injection_point.x);
    dbl("injection_y", sim.injection_point.y);
    dbl("injection_offset", sim.injection_offset);
    dbl("pac_grid_resolution", sim.pac_grid_resolution);
    dbl("r_avoid", sim.r_avoid);
    if (const std::string* v = find_key(sections, "simulation", "seed")) {
        sim.seed = static_cast<std::uint64_t>(to_int(*v, "seed"));
    }
}

void apply_scenario_keys(const SectionMap& sections, Scenario& scenario, double& width,
                         double& height) {
    if (const std::string* v = find_key(sections, "scenario", "kind")) {
        scenario = parse_scenario(*v);
    }
    if (const std::string* v = find_key(sections, "scenario", "width")) {
        width = to_double(*v, "width");
    }
    if (const std::string* v = find_key(sections, "scenario", "height")) {
        height = to_double(*v, "height");
    }
}

std::string csv_opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::optional<double> parse_opt_double(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    return std::stod(cell);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

RunConfigFile load_run_config(const std::string& path) {
    const SectionMap sections = load_sections(path);
    RunConfigFile cfg;
    apply_simulation_keys(sections, cfg.sim);
    apply_scenario_keys(sections, cfg.scenario, cfg.width, cfg.height);
    return cfg;
}

SweepSpecFile load_sweep_spec(const std::string& path) {
    const SectionMap sections = load_sections(path);
    SweepSpecFile spec;
    apply_simulation_keys(sections, spec.base);
    Scenario unused;
    apply_scenario_keys(sections, unused, spec.width, spec.height);

    if (const std::string* v = find_key(sections, "sweep", "sigmas")) {
        spec.sigmas.clear();
        for (const std::string& item : split_list(*v)) spec.sigmas.push_back(to_double(item, "sigmas"));
    }
    if (const std::string* v = find_key(sections, "sweep", "scenarios")) {
        for (const std::string& item : split_list(*v)) spec.scenarios.push_back(parse_scenario(item));
    }
    if (const std::string* v = find_key(sections, "sweep", "seeds")) {
        for (const std::string& item : split_list(*v)) {
            spec.seeds.push_back(static_cast<std::uint64_t>(to_int(item, "seeds")));
        }
    }
    if (const std::string* v = find_key(sections, "sweep", "cap")) {
        spec.cap = static_cast<int>(to_int(*v, "cap"));
    }
    if (spec.scenarios.empty()) spec.scenarios.push_back(Scenario{});
    if (spec.seeds.empty()) spec.seeds.push_back(spec.base.seed);
    if (spec.sigmas.empty()) throw ConfigError("sweep sigmas list is empty");
    const std::size_t total = spec.sigmas.size() * spec.scenarios.size() * spec.seeds.size();
    if (total > static_cast<std::size_t>(spec.cap)) {
        throw ConfigError("sweep matrix exceeds cap of " + std::to_string(spec.cap));
    }
    return spec;
}

std::vector<FaultEvent> load_fault_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open fault plan: " + path);
    std::vector<FaultEvent> events;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        FaultEvent ev;
        bool have_tick = false, have_action = false, have_node = false;
        std::istringstream ls(line);
        std::string token;
        while (ls >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) throw ConfigError("bad fault plan token: " + token);
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            if (key == "tick") {
                ev.tick = static_cast<int>(to_int(value, "tick"));
                have_tick = true;
            } else if (key == "action") {
                if (value == "fail") ev.action = FaultEvent::Action::Fail;
                else if (value == "exit") ev.action = FaultEvent::Action::Exit;
                else throw ConfigError("fault action must be fail or exit: " + value);
                have_action = true;
            } else if (key == "node") {
                ev.node_id = static_cast<int>(to_int(value, "node"));
                have_node = true;
            } else {
                throw ConfigError("unknown fault plan key: " + key);
            }
        }
        if (!have_tick || !have_action || !have_node) {
            throw ConfigError("fault plan line needs tick=, action=, node=: " + line);
        }
        events.push_back(ev);
    }
    return events;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_metrics_csv(const std::string& path, std::span<const MetricsRecord> series) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "tick,pac,adt,cdt,u_a,mean_velocity,active_nodes,injected_count\n";
    for (const MetricsRecord& r : series) {
        out << r.tick << ',' << format_double(r.pac) << ',' << csv_opt(r.adt) << ','
            << format_double(r.cdt) << ',' << csv_opt(r.u_a) << ',' << csv_opt(r.mean_velocity)
            << ',' << r.active_nodes << ',' << r.injected_count << '\n';
    }
}

std::vector<MetricsRecord> parse_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::vector<MetricsRecord> series;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 8) throw ConfigError("metrics.csv row with wrong arity: " + line);
        MetricsRecord r;
        r.tick = std::stoi(cells[0]);
        r.pac = std::stod(cells[1]);
        r.adt = parse_opt_double(cells[2]);
        r.cdt = std::stod(cells[3]);
        r.u_a = parse_opt_double(cells[4]);
        r.mean_velocity = parse_opt_double(cells[5]);
        r.active_nodes = std::stoi(cells[6]);
        r.injected_count = std::stoi(cells[7]);
        series.push_back(std::move(r));
    }
    return series;
}

void write_trajectory_csv(const std::string& path, std::span<const TrajectoryRow> rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "tick,node,x,y,shift,state\n";
    for (const TrajectoryRow& r : rows) {
        out << r.tick << ',' << r.node_id << ',' << format_double(r.x) << ','
            << format_double(r.y) << ',' << format_double(r.shift) << ','
            << node_state_name(r.state) << '\n';
    }
}

std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::vector<TrajectoryRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) throw ConfigError("trajectory.csv row with wrong arity: " + line);
        TrajectoryRow r;
        r.tick = std::stoi(cells[0]);
        r.node_id = std::stoi(cells[1]);
        r.x = std::stod(cells[2]);
        r.y = std::stod(cells[3]);
        r.shift = std::stod(cells[4]);
        r.state = node_state_from_name(cells[5]);
        rows.push_back(r);
    }
    return rows;
}

void write_final_state_json(const std::string& path, const SimulationResult& result) {
    nlohmann::json doc;
    doc["tick"] = result.final_state.tick;
    doc["termination"] = termination_name(result.reason);
    doc["injected_count"] = result.final_state.injected_count;
    doc["cdt"] = result.final_state.cdt;
    doc["pac"] = result.final_state.pac_history.empty() ? 0.0 : result.final_state.pac_history.back();
    doc["connected"] = result.final_state.connected;
    nlohmann::json nodes = nlohmann::json::array();
    for (const Node& n : result.final_state.nodes) {
        nodes.push_back({{"id", n.id},
                         {"x", n.position.x},
                         {"y", n.position.y},
                         {"state", node_state_name(n.state)},
                         {"cumulative_distance", n.cumulative_distance},
                         {"cumulative_energy", n.cumulative_energy},
                         {"injected_at", n.injected_at}});
    }
    doc["nodes"] = std::move(nodes);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

void write_cells_json(const std::string& path, int tick,
                      const std::vector<std::pair<int, std::vector<Polygon>>>& cells) {
    nlohmann::json doc;
    doc["tick"] = tick;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [node_id, parts] : cells) {
        nlohmann::json entry;
        entry["node"] = node_id;
        nlohmann::json jparts = nlohmann::json::array();
        for (const Polygon& part : parts) {
            nlohmann::json ring = nlohmann::json::array();
            for (const Point2& v : part.vertices) ring.push_back({v.x, v.y});
            jparts.push_back(std::move(ring));
        }
        entry["parts"] = std::move(jparts);
        list.push_back(std::move(entry));
    }
    doc["cells"] = std::move(list);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

void write_polyline_json(const std::string& path, std::span<const Point2> polyline) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Point2& p : polyline) doc.push_back({p.x, p.y});
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

void write_summary_csv(const std::string& path, std::span<const SweepRow> rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "sigma,scenario,seed,final_pac,final_adt,final_cdt,final_u_a,nodes,"
           "ticks_to_85pct,ticks_to_90pct,termination\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.sigma) << ',' << r.scenario << ',' << r.seed << ','
            << csv_opt(r.final_pac) << ',' << csv_opt(r.final_adt) << ',' << csv_opt(r.final_cdt)
            << ',' << csv_opt(r.final_u_a) << ','
            << (r.nodes ? std::to_string(*r.nodes) : std::string()) << ','
            << (r.ticks_to_85pct ? std::to_string(*r.ticks_to_85pct) : std::string()) << ','
            << (r.ticks_to_90pct ? std::to_string(*r.ticks_to_90pct) : std::string()) << ','
            << r.termination << '\n';
    }
}

void write_recovery_report_json(const std::string& path,
                                std::span<const RecoveryReportEntry> entries) {
    nlohmann::json doc = nlohmann::json::array();
    for (const RecoveryReportEntry& e : entries) {
        nlohmann::json item{{"fault_tick", e.fault_tick}, {"action", e.action},
                            {"node", e.node_id},         {"pre_fault_pac", e.pre_fault_pac},
                            {"min_pac_after", e.min_pac_after}, {"pac_drop", e.pac_drop}};
        if (e.ticks_to_recover) item["ticks_to_recover"] = *e.ticks_to_recover;
        else item["ticks_to_recover"] = nullptr;
        if (e.recovery_cdt) item["recovery_cdt"] = *e.recovery_cdt;
        else item["recovery_cdt"] = nullptr;
        doc.push_back(std::move(item));
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace bison
