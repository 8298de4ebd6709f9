#include "polyden/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polyden::io {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(errc::parse, path + ": " + e.what());
    }
}

double num_at(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        fail(errc::parse, where + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

/// all numbers serialized through format17 so round trips are lossless
std::string dump17(const json& j) {
    std::ostringstream os;
    std::function<void(const json&)> emit = [&](const json& v) {
        switch (v.type()) {
        case json::value_t::number_float: os << format17(v.get<double>()); break;
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << json(it.key()).dump() << ':';
                emit(it.value());
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ',';
                emit(v[i]);
            }
            os << ']';
            break;
        }
        default: os << v.dump();
        }
    };
    emit(j);
    return os.str();
}

json measure_to_json(const discrete_measure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms()) atoms.push_back({{"x", a.x}, {"mass", a.mass}});
    return {{"atoms", atoms}};
}

discrete_measure measure_from_json(const json& j, const std::string& where) {
    if (!j.contains("atoms") || !j["atoms"].is_array())
        fail(errc::parse, where + ": expected an 'atoms' array");
    std::vector<atom> atoms;
    std::size_t line = 0;
    for (const auto& a : j["atoms"]) {
        ++line;
        std::string ctx = where + ", atom " + std::to_string(line);
        atoms.push_back({num_at(a, "x", ctx), num_at(a, "mass", ctx)});
    }
    return discrete_measure(std::move(atoms)); // loader sorts, then validates
}

json weight_to_json(const grid_weight& w) {
    return {{"xs", w.xs}, {"ws", w.ws}};
}

grid_weight weight_from_json(const json& j, const std::string& where) {
    if (!j.contains("xs") || !j.contains("ws"))
        fail(errc::parse, where + ": expected 'xs' and 'ws' arrays");
    return grid_weight(j["xs"].get<std::vector<double>>(), j["ws"].get<std::vector<double>>());
}

} // namespace

discrete_measure load_measure(const std::string& path) {
    return measure_from_json(parse_file(path), path);
}

void save_measure(const discrete_measure& mu, const std::string& path) {
    write_file(path, dump17(measure_to_json(mu)));
}

grid_weight load_weight(const std::string& path) {
    return weight_from_json(parse_file(path), path);
}

void save_weight(const grid_weight& w, const std::string& path) {
    write_file(path, dump17(weight_to_json(w)));
}

entire_fn load_zeroset(const std::string& path) {
    json j = parse_file(path);
    int m = j.value("m", 0);
    double c = num_at(j, "c", path);
    int genus = j.value("genus", 0);
    double a = j.value("a", 0.0);
    std::vector<zero_entry> zeros;
    if (j.contains("zeros")) {
        std::size_t line = 0;
        for (const auto& z : j["zeros"]) {
            ++line;
            std::string ctx = path + ", zero " + std::to_string(line);
            zeros.push_back({num_at(z, "x", ctx), z.value("mult", 1)});
        }
    }
    tail_model tail;
    if (j.contains("tail")) {
        const auto& t = j["tail"];
        std::string model = t.value("model", "none");
        if (model == "none")
            tail = tail_model::complete();
        else if (model == "power")
            tail = tail_model::power_law(num_at(t, "exponent", path), num_at(t, "coeff", path));
        else
            fail(errc::parse, path + ": unknown tail model '" + model + "'");
    }
    return entire_fn(m, c, genus, a, std::move(zeros), tail);
}

void save_zeroset(const entire_fn& f, const std::string& path) {
    json zeros = json::array();
    for (const auto& z : f.zeros()) zeros.push_back({{"x", z.x}, {"mult", z.mult}});
    json j = {{"m", f.order_at_origin()},
              {"c", f.leading()},
              {"genus", f.genus()},
              {"a", f.balance()},
              {"zeros", zeros}};
    switch (f.tail().k) {
    case tail_model::kind::none: j["tail"] = {{"model", "none"}}; break;
    case tail_model::kind::power:
        j["tail"] = {{"model", "power"}, {"exponent", f.tail().exponent},
                     {"coeff", f.tail().coeff}};
        break;
    case tail_model::kind::unspecified: break;
    }
    write_file(path, dump17(j));
}

std::vector<star_poly> load_family(const std::string& path) {
    json j = parse_file(path);
    if (!j.is_array()) fail(errc::parse, path + ": expected an array of zero lists");
    std::vector<star_poly> out;
    for (const auto& lst : j) out.emplace_back(lst.get<std::vector<double>>());
    return out;
}

representation_pair load_pair(const std::string& path) {
    json j = parse_file(path);
    if (!j.contains("w") || !j.contains("nu"))
        fail(errc::parse, path + ": expected 'w', 'nu' and 'p'");
    return representation_pair{weight_from_json(j["w"], path + " (w)"),
                               measure_from_json(j["nu"], path + " (nu)"),
                               num_at(j, "p", path)};
}

void save_pair(const representation_pair& pair, const std::string& path) {
    json j = {{"w", weight_to_json(pair.w)}, {"nu", measure_to_json(pair.nu)}, {"p", pair.p}};
    write_file(path, dump17(j));
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format17(row[i]);
        os << "\n";
    }
    write_file(path, os.str());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::validation, "cannot write " + path);
    out << content;
}

std::string digest(const std::string& content) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace polyden::io
