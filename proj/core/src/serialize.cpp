#include "sskg/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sskg {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("json parse: ") + e.what());
    }
}

const json& field(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) {
        throw validation_error(std::string("json: missing field '") + name + "'");
    }
    return *it;
}

std::vector<std::string> string_list(const json& j, const char* name) {
    const auto& arr = field(j, name);
    if (!arr.is_array()) {
        throw validation_error(std::string("json: '") + name + "' must be an array");
    }
    std::vector<std::string> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_string()) {
            throw validation_error(std::string("json: '") + name + "' must hold strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

std::string to_json(const FiniteDist& p) {
    json j;
    j["labels"] = p.labels();
    j["probs"] = p.probs();
    return j.dump();
}

std::string to_json(const JointDist2& j2) {
    json j;
    j["labelsA"] = j2.labels_a();
    j["labelsB"] = j2.labels_b();
    json rows = json::array();
    for (std::size_t a = 0; a < j2.na(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < j2.nb(); ++b) row.push_back(j2.at(a, b));
        rows.push_back(std::move(row));
    }
    j["probs"] = std::move(rows);
    return j.dump();
}

std::string to_json(const JointDist3& j3) {
    json j;
    j["labelsX"] = j3.labels_x();
    j["labelsY"] = j3.labels_y();
    j["labelsZ"] = j3.labels_z();
    json tensor = json::array();
    for (std::size_t x = 0; x < j3.nx(); ++x) {
        json plane = json::array();
        for (std::size_t y = 0; y < j3.ny(); ++y) {
            json row = json::array();
            for (std::size_t z = 0; z < j3.nz(); ++z) row.push_back(j3.at(x, y, z));
            plane.push_back(std::move(row));
        }
        tensor.push_back(std::move(plane));
    }
    j["probs"] = std::move(tensor);
    return j.dump();
}

std::string to_json(const Channel& ch) {
    json j;
    j["inLabels"] = ch.in_labels();
    j["outLabels"] = ch.out_labels();
    json rows = json::array();
    for (std::size_t i = 0; i < ch.in_size(); ++i) {
        json row = json::array();
        for (std::size_t o = 0; o < ch.out_size(); ++o) row.push_back(ch.at(i, o));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump();
}

std::string to_json(const SkBounds& b) {
    json j;
    j["lowerXY"] = b.lowerXY;
    j["lowerYX"] = b.lowerYX;
    j["upperMI"] = b.upperMI;
    j["upperCMI"] = b.upperCMI;
    j["lower"] = b.lower();
    j["upper"] = b.upper();
    return j.dump();
}

std::string to_json(const DegradednessVerdict& v) {
    json j;
    switch (v.kind) {
    case DegradednessVerdict::Kind::Physical: j["kind"] = "physical"; break;
    case DegradednessVerdict::Kind::Stochastic: j["kind"] = "stochastic"; break;
    case DegradednessVerdict::Kind::None: j["kind"] = "none"; break;
    }
    if (v.witness) {
        json rows = json::array();
        for (std::size_t i = 0; i < v.witness->in_size(); ++i) {
            json row = json::array();
            for (std::size_t o = 0; o < v.witness->out_size(); ++o) {
                row.push_back(v.witness->at(i, o));
            }
            rows.push_back(std::move(row));
        }
        j["witness"] = std::move(rows);
    } else {
        j["witness"] = nullptr;
    }
    j["residual"] = v.residual;
    j["tol"] = v.tol;
    return j.dump();
}

std::string to_json(const ProtocolReport& r) {
    json j;
    j["pe"] = r.pe;
    j["uniformityGap"] = r.uniformityGap;
    j["effSecrecy"] = r.effSecrecy;
    j["combinedMetric"] = r.combinedMetric;
    j["nonConfusion"] = r.nonConfusion;
    j["nonStealth"] = r.nonStealth;
    j["mode"] = r.mode;
    j["trials"] = r.trials;
    j["peStdErr"] = r.peStdErr;
    j["pluginDivergences"] = r.pluginDivergences;
    j["degenerate"] = r.degenerate;
    return j.dump();
}

std::string to_json(const KeySchedule& s) {
    json j;
    j["phase1KeyBits"] = s.phase1KeyBits;
    j["phase2KeyBits"] = s.phase2KeyBits;
    j["totalGeneratedBits"] = s.totalGeneratedBits;
    j["feasible"] = s.feasible;
    j["perBlockPhase1"] = s.perBlockPhase1;
    return j.dump();
}

FiniteDist finite_dist_from_json(const std::string& text) {
    const json j = parse_or_throw(text);
    auto labels = string_list(j, "labels");
    const auto& probs = field(j, "probs");
    if (!probs.is_array()) throw validation_error("json: 'probs' must be an array");
    std::vector<double> p;
    p.reserve(probs.size());
    for (const auto& v : probs) p.push_back(v.get<double>());
    return FiniteDist(std::move(labels), std::move(p));
}

JointDist3 joint3_from_json(const std::string& text) {
    const json j = parse_or_throw(text);
    auto lx = string_list(j, "labelsX");
    auto ly = string_list(j, "labelsY");
    auto lz = string_list(j, "labelsZ");
    const auto& tensor = field(j, "probs");
    if (!tensor.is_array() || tensor.size() != lx.size()) {
        throw validation_error("json: 'probs' must be an array with one plane per X label");
    }
    std::vector<double> probs;
    probs.reserve(lx.size() * ly.size() * lz.size());
    for (const auto& plane : tensor) {
        if (!plane.is_array() || plane.size() != ly.size()) {
            throw validation_error("json: tensor plane size does not match labelsY");
        }
        for (const auto& row : plane) {
            if (!row.is_array() || row.size() != lz.size()) {
                throw validation_error("json: tensor row size does not match labelsZ");
            }
            for (const auto& v : row) probs.push_back(v.get<double>());
        }
    }
    return JointDist3(std::move(lx), std::move(ly), std::move(lz), std::move(probs));
}

SkBounds sk_bounds_from_json(const std::string& text) {
    const json j = parse_or_throw(text);
    SkBounds b;
    b.lowerXY = field(j, "lowerXY").get<double>();
    b.lowerYX = field(j, "lowerYX").get<double>();
    b.upperMI = field(j, "upperMI").get<double>();
    b.upperCMI = field(j, "upperCMI").get<double>();
    return b;
}

ProtocolReport protocol_report_from_json(const std::string& text) {
    const json j = parse_or_throw(text);
    ProtocolReport r;
    r.pe = field(j, "pe").get<double>();
    r.uniformityGap = field(j, "uniformityGap").get<double>();
    r.effSecrecy = field(j, "effSecrecy").get<double>();
    r.combinedMetric = field(j, "combinedMetric").get<double>();
    r.nonConfusion = field(j, "nonConfusion").get<double>();
    r.nonStealth = field(j, "nonStealth").get<double>();
    r.mode = field(j, "mode").get<std::string>();
    r.trials = field(j, "trials").get<std::size_t>();
    r.peStdErr = field(j, "peStdErr").get<double>();
    r.pluginDivergences = field(j, "pluginDivergences").get<bool>();
    r.degenerate = field(j, "degenerate").get<bool>();
    return r;
}

KeySchedule key_schedule_from_json(const std::string& text) {
    const json j = parse_or_throw(text);
    KeySchedule s;
    s.phase1KeyBits = field(j, "phase1KeyBits").get<double>();
    s.phase2KeyBits = field(j, "phase2KeyBits").get<double>();
    s.totalGeneratedBits = field(j, "totalGeneratedBits").get<double>();
    s.feasible = field(j, "feasible").get<bool>();
    s.perBlockPhase1 = field(j, "perBlockPhase1").get<bool>();
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << content;
}

JointDist3 load_joint3(const std::string& path) {
    try {
        return joint3_from_json(read_text_file(path));
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

std::string sample_set_csv(const SampleSet& s) {
    std::ostringstream os;
    os.precision(17);
    os << "x,y,z\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << s.xs[i] << ',' << s.ys[i] << ',' << s.zs[i] << '\n';
    }
    return os.str();
}

} // namespace sskg
