#include "diskops/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "diskops/errors.hpp"

namespace diskops {

std::string_view to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::consistent: return "consistent";
    case Status::error: return "error";
    }
    return "error";
}

std::string_view to_string(Provenance p)
{
    switch (p) {
    case Provenance::paper: return "PAPER";
    case Provenance::trivial: return "TRIVIAL";
    case Provenance::derived: return "DERIVED";
    }
    return "DERIVED";
}

Status status_from_string(std::string_view s)
{
    if (s == "pass") return Status::pass;
    if (s == "fail") return Status::fail;
    if (s == "consistent") return Status::consistent;
    if (s == "error") return Status::error;
    throw std::invalid_argument("unknown status: " + std::string(s));
}

Provenance provenance_from_string(std::string_view s)
{
    if (s == "PAPER") return Provenance::paper;
    if (s == "TRIVIAL") return Provenance::trivial;
    if (s == "DERIVED") return Provenance::derived;
    throw std::invalid_argument("unknown provenance: " + std::string(s));
}

OutputFormat output_format_from_string(std::string_view s)
{
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown output format: " + std::string(s));
}

std::string format_number(double x)
{
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

std::string format_number(std::complex<double> z)
{
    if (z.imag() == 0.0)
        return format_number(z.real());
    std::ostringstream os;
    os << std::setprecision(15) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

nlohmann::json to_json(const VerificationReport& r)
{
    nlohmann::json computed = nlohmann::json::array();
    for (const auto& v : r.computed)
        computed.push_back({{"label", v.label}, {"re", v.value.real()}, {"im", v.value.imag()}});
    nlohmann::json reference = nlohmann::json::array();
    for (const auto& v : r.reference)
        reference.push_back({{"label", v.label},
                             {"re", v.value.real()},
                             {"im", v.value.imag()},
                             {"provenance", std::string(to_string(v.provenance))}});
    return {{"check_id", r.check_id},
            {"status", std::string(to_string(r.status))},
            {"computed", std::move(computed)},
            {"reference", std::move(reference)},
            {"tolerance", r.tolerance},
            {"elapsed_ms", r.elapsed_ms},
            {"note", r.note}};
}

VerificationReport report_from_json(const nlohmann::json& j)
{
    VerificationReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.status = status_from_string(j.at("status").get<std::string>());
    for (const auto& v : j.at("computed"))
        r.computed.push_back({v.at("label").get<std::string>(), {v.at("re").get<double>(), v.at("im").get<double>()}});
    for (const auto& v : j.at("reference"))
        r.reference.push_back({v.at("label").get<std::string>(),
                               {v.at("re").get<double>(), v.at("im").get<double>()},
                               provenance_from_string(v.at("provenance").get<std::string>())});
    r.tolerance = j.at("tolerance").get<double>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.note = j.value("note", std::string{});
    return r;
}

namespace {

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

void emit_text(const std::vector<VerificationReport>& reports, std::ostream& out)
{
    std::size_t width = 8;
    for (const auto& r : reports)
        width = std::max(width, r.check_id.size());
    out << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(10) << "status"
        << "  values\n";
    for (const auto& r : reports) {
        out << std::left << std::setw(static_cast<int>(width)) << r.check_id << "  " << std::setw(10)
            << to_string(r.status) << "  ";
        bool first = true;
        for (const auto& v : r.computed) {
            out << (first ? "" : "; ") << v.label << "=" << format_number(v.value);
            first = false;
        }
        if (!r.note.empty())
            out << (first ? "" : "  ") << "(" << r.note << ")";
        out << '\n';
    }
}

void emit_csv(const std::vector<VerificationReport>& reports, std::ostream& out)
{
    out << "check_id,status,tolerance,elapsed_ms,computed,reference,note\n";
    for (const auto& r : reports) {
        std::string computed;
        for (const auto& v : r.computed)
            computed += (computed.empty() ? "" : ";") + v.label + "=" + format_number(v.value);
        std::string reference;
        for (const auto& v : r.reference)
            reference += (reference.empty() ? "" : ";") + v.label + "=" + format_number(v.value) + "[" +
                         std::string(to_string(v.provenance)) + "]";
        out << csv_escape(r.check_id) << ',' << to_string(r.status) << ',' << format_number(r.tolerance) << ','
            << format_number(r.elapsed_ms) << ',' << csv_escape(computed) << ',' << csv_escape(reference) << ','
            << csv_escape(r.note) << '\n';
    }
}

} // namespace

void emit_report(const std::vector<VerificationReport>& reports, OutputFormat format, std::ostream& out)
{
    switch (format) {
    case OutputFormat::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports)
            arr.push_back(to_json(r));
        out << arr.dump(reports.empty() ? -1 : 2) << '\n';
        break;
    }
    case OutputFormat::csv: emit_csv(reports, out); break;
    case OutputFormat::text: emit_text(reports, out); break;
    }
    out.flush();
    if (!out)
        throw IOError("failed writing report stream");
}

} // namespace diskops
