#include "fockidx/io/reports.hpp"

#include <cmath>
#include <cstdio>

namespace fockidx::io {

using nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& text) {
    out_ << (filled_++ ? "," : "") << text;
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
    if (filled_ != columns_) throw Error("CSV row has the wrong number of cells");
    out_ << '\n';
    filled_ = 0;
}

void write_element_csv(std::ostream& out, const AlgebraElement& b) {
    out << "tail," << format_number(b.tail().real()) << ',' << format_number(b.tail().imag()) << '\n';
    CsvWriter csv(out, {"s", "re", "im"});
    for (std::size_t k = 0; k < b.size(); ++k) {
        csv.cell(b.grid().point(k)).cell(b[k].real()).cell(b[k].imag()).end_row();
    }
}

void write_kernel_csv(std::ostream& out, const KernelOperator& k) {
    CsvWriter csv(out, {"row", "col", "re", "im"});
    const auto& m = k.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            csv.cell(static_cast<long long>(i)).cell(static_cast<long long>(j));
            csv.cell(m(i, j).real()).cell(m(i, j).imag()).end_row();
        }
    }
}

ordered_json to_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json to_json(const GramReport& report) {
    ordered_json points = ordered_json::array();
    for (const auto& p : report.points) {
        ordered_json entry;
        entry["grid_point"] = p.grid_point;
        entry["s"] = p.is_tail ? ordered_json("inf") : ordered_json(p.s);
        entry["min_eigenvalue"] = p.min_eigenvalue;
        points.push_back(std::move(entry));
    }
    ordered_json j;
    j["psd"] = report.psd;
    j["min_eigenvalue"] = report.min_eigenvalue;
    j["points"] = std::move(points);
    return j;
}

ordered_json to_json(const MembershipReport& report) {
    ordered_json j;
    j["in_E"] = report.in_E;
    j["zeta_limit"] = to_json(report.zeta_limit);
    j["distance_to_one"] = report.distance_to_one;
    j["witness_kind"] = to_string(report.witness_kind);
    ordered_json details = ordered_json::object();
    if (report.eventually_one_from) {
        details["eventually_one_from"] = *report.eventually_one_from;
        details["positive_before"] = report.positive_before;
        details["witness"] = report.positive_before ? "step1_b0_b1" : "step2_convexify";
    } else if (report.in_E) {
        details["witness"] = "step3_approximation";
    }
    j["details"] = std::move(details);
    j["warnings"] = report.warnings;
    return j;
}

ordered_json to_json(const ConvergenceReport& report) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"sup_dist", r.sup_dist},
                        {"index_dist", r.index_dist},
                        {"kernel_dist", r.kernel_dist},
                        {"semigroup_dist", r.semigroup_dist},
                        {"probe_kernel_dist", r.probe_kernel_dist}});
    }
    ordered_json j;
    j["t"] = report.t;
    j["monotone"] = report.monotone;
    j["max_index_gap"] = report.max_index_gap;
    j["kernel_constant"] = report.kernel_constant;
    j["semigroup_constant"] = report.semigroup_constant;
    j["probe_constant"] = report.probe_constant;
    j["rows"] = std::move(rows);
    return j;
}

ordered_json to_json(const std::vector<CheckResult>& checks) {
    ordered_json list = ordered_json::array();
    for (const auto& c : checks) {
        list.push_back({{"module", c.module},
                        {"name", c.name},
                        {"value", c.value},
                        {"tolerance", c.tolerance},
                        {"passed", c.passed}});
    }
    return list;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
    CsvWriter csv(out, {"n", "sup_dist", "index_dist", "kernel_dist", "semigroup_dist",
                        "probe_kernel_dist"});
    for (const auto& r : report.rows) {
        csv.cell(r.n).cell(r.sup_dist).cell(r.index_dist).cell(r.kernel_dist);
        csv.cell(r.semigroup_dist).cell(r.probe_kernel_dist).end_row();
    }
}

std::string dump_report(ordered_json body) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    return doc.dump(2) + "\n";
}

}  // namespace fockidx::io
