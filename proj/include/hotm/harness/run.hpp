#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hotm/maps/transfer_map.hpp"

namespace hotm::harness {

using elements::AnyState;
using elements::Set;
using maps::TransferMap;

struct Record {
    std::array<double, 8> x{};       // physical elements (fast variable unwrapped)
    double epoch = 0.0;              // seconds since start
    std::array<double, 8> delta{};   // scaled displacement used for the evaluation
    bool in_domain = true;
};

struct MappingRun {
    Set set = Set::EccHill;
    std::vector<Record> records;     // n + 1 entries
    int first_exit = -1;             // first revolution with a variable outside its radius
    int exit_variable = -1;

    const Record& back() const { return records.back(); }
    int revolutions() const { return static_cast<int>(records.size()) - 1; }
};

// Iterate the transfer map from a start state on the section. Displacements
// are measured from the expansion centers in scaled units; the fast variable
// is wrapped onto the nearest sheet while its unwrapped value accumulates in
// the records. Exceeding safety_factor times a finite domain radius aborts.
inline MappingRun iterate(const TransferMap& map, const AnyState& start, int n,
                          double safety_factor = 10.0) {
    if (start.set != map.set) throw ConfigError("iterate: state set does not match map");
    MappingRun run;
    run.set = map.set;
    run.records.reserve(static_cast<std::size_t>(n) + 1);

    const int f = map.fast_index();
    std::array<double, 8> x = start.x;
    double epoch = 0.0;

    Record first;
    first.x = x;
    first.epoch = 0.0;
    first.delta = map.displacement(x);
    run.records.push_back(first);

    for (int rev = 1; rev <= n; ++rev) {
        const std::array<double, 8> delta = map.displacement(x);
        for (int v = 0; v < map.dim; ++v) {
            const double r = map.domain.radii[static_cast<std::size_t>(v)];
            if (!std::isfinite(r)) continue;
            const double d = std::fabs(delta[static_cast<std::size_t>(v)]);
            if (d > r && run.first_exit < 0) {
                run.first_exit = rev - 1;
                run.exit_variable = v;
            }
            if (d > safety_factor * r)
                throw MappingAbort("iterate: displacement left the hard safety region (variable " +
                                       std::string(elements::element_name(map.set, v)) + ")",
                                   rev - 1, v);
        }
        std::array<double, 8> xn{};
        double dt = 0.0;
        map.evaluate(delta, xn, dt);
        epoch += dt;
        if (f >= 0) {
            // section convention: the fast angle advances by exactly 2*pi,
            // reported unwrapped across revolutions
            xn[static_cast<std::size_t>(f)] = x[static_cast<std::size_t>(f)] + kTwoPi;
        }
        Record rec;
        rec.x = xn;
        rec.epoch = epoch;
        rec.delta = delta;
        rec.in_domain = run.first_exit < 0;
        run.records.push_back(rec);
        x = xn;
    }
    return run;
}

} // namespace hotm::harness
