#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kerropt/params.hpp"

namespace kerropt {

// One swept field: `count` linearly spaced values over [start, stop],
// inclusive of both ends.
struct SweepAxis {
    std::string field;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;

    double value(std::size_t i) const;
};

// A parsed configuration document: a base parameter set plus zero or
// more sweep axes. Expansion is the Cartesian product in declaration
// order, row-major (first declared axis varies slowest).
class ParamGrid {
public:
    ParamGrid() = default;
    ParamGrid(SystemParams base, std::vector<SweepAxis> axes);

    bool is_single() const { return axes_.empty(); }
    std::size_t size() const;
    SystemParams at(std::size_t index) const;
    SystemParams single() const;

    const SystemParams& base() const { return base_; }
    const std::vector<SweepAxis>& axes() const { return axes_; }

private:
    SystemParams base_;
    std::vector<SweepAxis> axes_;
};

// Parses the configuration document described in the README: a JSON
// object whose keys are exactly the SystemParams field names; numeric
// fields may instead hold {"start": x, "stop": y, "count": n}.
// Throws ConfigError on malformed documents, unknown keys, out-of-range
// values, or empty sweep ranges.
ParamGrid parse_config(const std::string& text);
ParamGrid parse_config(std::istream& in);

}  // namespace kerropt
