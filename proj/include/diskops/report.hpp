#pragma once

#include <chrono>
#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace diskops {

enum class Status { pass, fail, consistent, error };
enum class Provenance { paper, trivial, derived };

struct LabeledValue {
    std::string label;
    std::complex<double> value;

    friend bool operator==(const LabeledValue&, const LabeledValue&) = default;
};

struct ReferenceValue {
    std::string label;
    std::complex<double> value;
    Provenance provenance = Provenance::derived;

    friend bool operator==(const ReferenceValue&, const ReferenceValue&) = default;
};

// Outcome of one verification check. status == pass means every computed
// value sits within `tolerance` of its reference, as the check declares it.
struct VerificationReport {
    std::string check_id;
    Status status = Status::error;
    std::vector<LabeledValue> computed;
    std::vector<ReferenceValue> reference;
    double tolerance = 0.0;
    double elapsed_ms = 0.0;
    std::string note;

    // pass or consistent
    bool ok() const { return status == Status::pass || status == Status::consistent; }

    void add(std::string label, std::complex<double> v) { computed.push_back({std::move(label), v}); }
    void expect(std::string label, std::complex<double> v, Provenance p)
    {
        reference.push_back({std::move(label), v, p});
    }

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

std::string_view to_string(Status s);
std::string_view to_string(Provenance p);
Status status_from_string(std::string_view s);
Provenance provenance_from_string(std::string_view s);

enum class OutputFormat { text, json, csv };
OutputFormat output_format_from_string(std::string_view s);

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

// Writes reports in the requested format; throws IOError if the stream fails.
void emit_report(const std::vector<VerificationReport>& reports, OutputFormat format, std::ostream& out);

// Formats a double with 15 significant digits.
std::string format_number(double x);
std::string format_number(std::complex<double> z);

// Wall-clock stopwatch for elapsed_ms.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace diskops
