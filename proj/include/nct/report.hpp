#pragma once

// Experiment reports: ordered JSON with a pinned number format (17 significant
// digits via "%.17g") so repeated runs emit byte-identical files, plus the
// plot-ready CSV writers used by the CLI.

#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "nct/errors.hpp"
#include "nct/spectral.hpp"

namespace nct {

using Report = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void dump_report(const Report& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) { out += "{}"; break; }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + "  " + nlohmann::json(it.key()).dump() + ": ";
                dump_report(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            break;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) { out += "[]"; break; }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad + "  ";
                dump_report(el, out, indent + 1);
            }
            out += "\n" + pad + "]";
            break;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

inline std::string dump_report(const Report& j) {
    std::string out;
    dump_report(j, out, 0);
    out += "\n";
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

inline void write_report(const std::string& path, const Report& j) {
    write_file(path, dump_report(j));
}

// CSV columns: shell, mass, log_mass. Empty profile writes the header only.
inline std::string decay_profile_csv(const DecayProfile& prof) {
    std::string out = "shell,mass,log_mass\n";
    for (std::size_t r = 0; r < prof.shell_mass.size(); ++r) {
        const double m = prof.shell_mass[r];
        out += std::to_string(r) + "," + format_double(m) + "," +
               format_double(m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity()) +
               "\n";
    }
    return out;
}

// Row-major "re,im" pairs, one matrix row per line.
inline std::string matrix_csv(const Mat& m) {
    std::string out;
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) {
            if (c) out += ",";
            out += format_double(m(r, c).real()) + "," + format_double(m(r, c).imag());
        }
        out += "\n";
    }
    return out;
}

inline std::string signal_csv(const Vec& v) {
    std::string out;
    for (long t = 0; t < v.size(); ++t)
        out += format_double(v[t].real()) + "," + format_double(v[t].imag()) + "\n";
    return out;
}

inline Report to_json(const DecayProfile& prof) {
    Report j;
    j["shell_mass"] = prof.shell_mass;
    j["exp_rate"] = prof.exp_rate;
    j["poly_order"] = prof.poly_order;
    j["fit_lo"] = prof.fit_lo;
    j["fit_hi"] = prof.fit_hi;
    Report ladder;
    for (std::size_t i = 0; i < decay_s_grid().size(); ++i)
        ladder["s" + std::to_string(static_cast<int>(decay_s_grid()[i]))] =
            prof.s_ladder[i];
    j["s_ladder"] = ladder;
    return j;
}

inline Report to_json(const TwistedSeq& seq) {
    Report j;
    if (seq.theta.rational)
        j["theta"] = Report{{"p", seq.theta.p}, {"q", seq.theta.q}};
    else
        j["theta"] = seq.theta.value;
    Report entries = Report::array();
    for (const auto& [idx, v] : seq.coeffs)
        entries.push_back(Report::array({idx.first, idx.second, v.real(), v.imag()}));
    j["entries"] = entries;
    return j;
}

inline TwistedSeq twisted_seq_from_json(const Report& j) {
    TwistedSeq seq;
    if (j.at("theta").is_object())
        seq.theta = Theta::from_rational(j["theta"]["p"].get<long long>(),
                                         j["theta"]["q"].get<long long>());
    else
        seq.theta = Theta::from_real(j["theta"].get<double>());
    for (const auto& e : j.at("entries"))
        seq.set(e[0].get<long>(), e[1].get<long>(),
                {e[2].get<double>(), e[3].get<double>()});
    return seq;
}

}  // namespace nct
