#include "ecs/records.hpp"

#include <cstdio>

#include <json.hpp>

namespace ecs {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {
constexpr const char* kHeader = "m,alpha2,eta,epsilon,delta,delta_n,e_n,delta_e_n,rate,method";
}

std::string records_to_csv(const std::vector<SweepRecord>& records,
                           const std::vector<std::string>& meta_lines) {
    std::string out;
    for (const auto& line : meta_lines) {
        out += "# ";
        out += line;
        out += '\n';
    }
    out += kHeader;
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.m);
        for (double v : {r.alpha2, r.eta, r.epsilon, r.delta, r.delta_n, r.e_n,
                         r.delta_e_n, r.rate}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += method_name(r.method);
        out += '\n';
    }
    return out;
}

std::string records_to_json(const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json obj;
        obj["m"] = r.m;
        obj["alpha2"] = r.alpha2;
        obj["eta"] = r.eta;
        obj["epsilon"] = r.epsilon;
        obj["delta"] = r.delta;
        obj["delta_n"] = r.delta_n;
        obj["e_n"] = r.e_n;
        obj["delta_e_n"] = r.delta_e_n;
        obj["rate"] = r.rate;
        obj["method"] = method_name(r.method);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace ecs
