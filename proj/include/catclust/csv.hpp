#pragma once

// Minimal CSV output: header row, '.' decimal point, doubles at 17
// significant digits so that files diff cleanly between runs.

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

namespace catclust {

inline std::string formatNumber(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header) : out_(out) {
        bool first = true;
        for (auto h : header) {
            if (!first) out_ << ',';
            out_ << h;
            first = false;
        }
        out_ << '\n';
    }

    template <class... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((put(fields, first)), ...);
        out_ << '\n';
    }

private:
    template <class T>
    void put(const T& v, bool& first) {
        if (!first) out_ << ',';
        first = false;
        if constexpr (std::is_floating_point_v<T>) {
            out_ << formatNumber(static_cast<double>(v));
        } else {
            out_ << v;
        }
    }

    std::ostream& out_;
};

}  // namespace catclust
