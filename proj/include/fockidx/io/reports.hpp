#pragma once

// CSV and JSON report formats. CSV: '.' decimals, LF line endings, numbers
// printed with 17 significant digits so output is byte-stable.

#include "fockidx/selftest.hpp"
#include "fockidx/subsystem.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace fockidx::io {

inline constexpr int kSchemaVersion = 1;

std::string format_number(double v);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);

    CsvWriter& cell(const std::string& text);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
    void end_row();

private:
    std::ostream& out_;
    std::size_t columns_;
    std::size_t filled_ = 0;
};

/// The element format read back by read_element_csv.
void write_element_csv(std::ostream& out, const AlgebraElement& b);

/// Dense dump: one `row,col,re,im` line per matrix entry.
void write_kernel_csv(std::ostream& out, const KernelOperator& k);

nlohmann::ordered_json to_json(Complex z);
nlohmann::ordered_json to_json(const GramReport& report);
nlohmann::ordered_json to_json(const MembershipReport& report);
nlohmann::ordered_json to_json(const ConvergenceReport& report);
nlohmann::ordered_json to_json(const std::vector<CheckResult>& checks);

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

/// Serialized document with the schema_version field first.
std::string dump_report(nlohmann::ordered_json body);

}  // namespace fockidx::io
