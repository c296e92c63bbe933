#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hotm/maps/transfer_map.hpp"

namespace hotm::maps {

// Versioned text format; coefficients carry 17 significant digits so a
// round trip reproduces them exactly.
inline void save_map(const TransferMap& m, std::ostream& out) {
    char buf[512];
    out << "hotm-map 1\n";
    out << "set " << elements::set_name(m.set) << "\n";
    out << "poincare " << (m.poincare ? 1 : 0) << "\n";
    out << "order " << m.order << "\n";
    out << "dim " << m.dim << "\n";
    std::snprintf(buf, sizeof buf, "mu %.16e\nre %.16e\ntime_scale %.16e\n", m.mu, m.re, m.time_scale);
    out << buf;
    auto row = [&](const char* name, const std::array<double, 8>& v) {
        out << name;
        for (int i = 0; i < m.dim; ++i) {
            std::snprintf(buf, sizeof buf, " %.16e", v[static_cast<std::size_t>(i)]);
            out << buf;
        }
        out << "\n";
    };
    row("scales", m.scales);
    row("center", m.center);
    row("ref_point", m.ref_point);
    std::snprintf(buf, sizeof buf, "eps %.16e\n", m.domain.eps);
    out << buf;
    out << "radii";
    for (double r : m.domain.radii) {
        std::snprintf(buf, sizeof buf, " %.16e", r);
        out << buf;
    }
    out << "\n";
    if (m.set == Set::Ideal) {
        out << "frame";
        for (double v : m.frame.m.m) {
            std::snprintf(buf, sizeof buf, " %.16e", v);
            out << buf;
        }
        out << "\n";
    }
    auto poly = [&](const std::string& name, const da::Poly& p) {
        out << "poly " << name << " " << p.nonzeros() << "\n";
        out << da::dump(p);
    };
    for (int i = 0; i < m.dim; ++i) poly(std::to_string(i), m.state[static_cast<std::size_t>(i)]);
    poly("time", m.time);
    out << "end\n";
}

inline void save_map(const TransferMap& m, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ConfigError("cannot write map file: " + path);
        save_map(m, out);
    }
    std::remove(path.c_str());
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ConfigError("cannot move map file into place: " + path);
}

inline TransferMap load_map(std::istream& in) {
    TransferMap m;
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "hotm-map" || version != 1) throw ConfigError("unrecognized map file header");
    std::string set_name;
    int poincare = 0;
    in >> tag >> set_name >> tag >> poincare >> tag >> m.order >> tag >> m.dim;
    m.set = elements::set_from_name(set_name);
    m.poincare = poincare != 0;
    in >> tag >> m.mu >> tag >> m.re >> tag >> m.time_scale;
    auto row = [&](std::array<double, 8>& v) {
        in >> tag;
        for (int i = 0; i < m.dim; ++i) in >> v[static_cast<std::size_t>(i)];
    };
    row(m.scales);
    row(m.center);
    row(m.ref_point);
    in >> tag >> m.domain.eps;
    in >> tag;
    m.domain.radii.assign(static_cast<std::size_t>(m.dim), 0.0);
    for (int i = 0; i < m.dim; ++i) in >> m.domain.radii[static_cast<std::size_t>(i)];
    in >> tag;
    if (tag == "frame") {
        for (double& v : m.frame.m.m) in >> v;
        in >> tag;
    }
    auto ctx = da::Context::make(m.order, m.dim);
    auto read_poly = [&](da::Poly& p) {
        // expects current tag == "poly"
        std::string name;
        std::size_t count = 0;
        in >> name >> count;
        p = da::Poly(ctx);
        for (std::size_t n = 0; n < count; ++n) {
            da::Exponents e{};
            int v = 0;
            for (int i = 0; i < m.dim; ++i) {
                in >> v;
                e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
            }
            std::string bar;
            double coeff = 0.0;
            in >> bar >> coeff;
            p.coefficient(ctx->index_of(e)) = coeff;
        }
        in >> tag;
    };
    m.state.assign(static_cast<std::size_t>(m.dim), da::Poly(ctx));
    for (int i = 0; i < m.dim; ++i) read_poly(m.state[static_cast<std::size_t>(i)]);
    read_poly(m.time);
    if (tag != "end") throw ConfigError("corrupt map file (missing end)");
    return m;
}

inline TransferMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open map file: " + path);
    return load_map(in);
}

} // namespace hotm::maps
