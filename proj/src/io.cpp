#include "dqwall/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dqwall/report.hpp"

namespace dqwall {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_phase_function(const PhaseFunction& f, const std::filesystem::path& stem) {
    const PhaseGrid& g = f.grid();
    std::filesystem::path csv = stem, meta = stem;
    csv += ".csv";
    meta += ".json";
    std::ofstream out(csv);
    if (!out) throw std::runtime_error("cannot write " + csv.string());
    out << "x,p,re,im\n";
    std::string line;
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        std::string xs = format_double(g.x(i));
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            cplx z = f(i, j);
            line = xs;
            line += ',';
            line += format_double(g.p(j));
            line += ',';
            line += format_double(z.real());
            line += ',';
            line += format_double(z.imag());
            line += '\n';
            out << line;
        }
    }
    nlohmann::ordered_json j = to_json(g);
    j["x_min_requested"] = g.requested_x_min();
    j["x_max_requested"] = g.requested_x_max();
    j["wall_index"] = g.wall_index();
    j["tag"] = f.tag();
    std::ofstream m(meta);
    if (!m) throw std::runtime_error("cannot write " + meta.string());
    m << j.dump(2) << "\n";
}

PhaseFunction read_phase_function(const std::filesystem::path& stem) {
    std::filesystem::path csv = stem, meta = stem;
    csv += ".csv";
    meta += ".json";
    std::ifstream m(meta);
    if (!m) throw std::runtime_error("cannot read " + meta.string());
    nlohmann::json j = nlohmann::json::parse(m);
    PhaseGrid g(j.at("x_min_requested").get<double>(), j.at("x_max_requested").get<double>(),
                j.at("n_x").get<std::size_t>(), j.at("p_min").get<double>(),
                j.at("p_max").get<double>(), j.at("n_p").get<std::size_t>());
    std::ifstream in(csv);
    if (!in) throw std::runtime_error("cannot read " + csv.string());
    std::string line;
    std::getline(in, line);
    if (line != "x,p,re,im") throw std::runtime_error("unexpected CSV header in " + csv.string());
    std::vector<cplx> v;
    v.reserve(g.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double cols[4];
        const char* p = line.data();
        const char* end = p + line.size();
        for (int c = 0; c < 4; ++c) {
            auto res = std::from_chars(p, end, cols[c]);
            if (res.ec != std::errc()) throw std::runtime_error("bad CSV row: " + line);
            p = res.ptr + 1;
        }
        v.emplace_back(cols[2], cols[3]);
    }
    return PhaseFunction(g, std::move(v), j.at("tag").get<std::string>());
}

}  // namespace dqwall
