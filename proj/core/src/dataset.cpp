#include "fcmppt/dataset.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/io.hpp"

#include <array>
#include <limits>
#include <set>
#include <sstream>

namespace fcmppt {

void Dataset::refresh_norm() {
    if (rows.empty()) {
        throw config_error("cannot derive normalization from an empty dataset");
    }
    double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
    double l_lo = t_lo, l_hi = -t_lo;
    double v_lo = t_lo, v_hi = -t_lo;
    for (const auto& r : rows) {
        t_lo = std::min(t_lo, r.temp_T);
        t_hi = std::max(t_hi, r.temp_T);
        l_lo = std::min(l_lo, r.lambda_m);
        l_hi = std::max(l_hi, r.lambda_m);
        v_lo = std::min(v_lo, r.v_max);
        v_hi = std::max(v_hi, r.v_max);
    }
    if (!(t_lo < t_hi) || !(l_lo < l_hi) || !(v_lo < v_hi)) {
        throw config_error("dataset column has zero spread, cannot normalize");
    }
    t_norm = {t_lo, t_hi};
    l_norm = {l_lo, l_hi};
    v_norm = {v_lo, v_hi};
}

std::vector<std::array<double, 3>> Dataset::normalized() const {
    std::vector<std::array<double, 3>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back({t_norm.normalize(r.temp_T), l_norm.normalize(r.lambda_m),
                       v_norm.normalize(r.v_max)});
    }
    return out;
}

std::string Dataset::to_csv() const {
    std::string out = "T_K,lambda,V_max_V\n";
    for (const auto& r : rows) {
        out += format_sig(r.temp_T, 9);
        out += ',';
        out += format_sig(r.lambda_m, 9);
        out += ',';
        out += format_sig(r.v_max, 9);
        out += '\n';
    }
    return out;
}

Dataset Dataset::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw config_error("empty dataset CSV");
    }
    // Historical files may carry "V_max" instead of "V_max_V".
    if (line != "T_K,lambda,V_max_V" && line != "T_K,lambda,V_max") {
        throw config_error("unexpected dataset CSV header: " + line);
    }
    Dataset ds;
    std::set<std::pair<double, double>> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        DatasetRow r{};
        char c1 = 0, c2 = 0;
        if (!(row >> r.temp_T >> c1 >> r.lambda_m >> c2 >> r.v_max) || c1 != ',' ||
            c2 != ',') {
            throw config_error("bad dataset CSV row at line " + std::to_string(line_no));
        }
        if (!seen.emplace(r.temp_T, r.lambda_m).second) {
            throw config_error("duplicate (T, lambda) pair at line " +
                               std::to_string(line_no));
        }
        ds.rows.push_back(r);
    }
    ds.refresh_norm();
    return ds;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) {
        throw config_error("linspace needs at least 2 points");
    }
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
        v[i] = lo + (hi - lo) * i / (count - 1);
    }
    return v;
}

} // namespace fcmppt
