#include "kleinlens/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "kleinlens/version.hpp"

namespace kleinlens {

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::add(const std::string& key, const std::string& value) {
    entries_.push_back({Entry::Kind::Value, key, value, true});
}

void Report::add(const std::string& key, std::int64_t value) {
    add(key, std::to_string(value));
}

void Report::add(const std::string& key, double value) {
    add(key, format_real(value));
}

void Report::add(const std::string& key, bool value) {
    add(key, std::string(value ? "yes" : "no"));
}

void Report::check(const std::string& key, bool pass, const std::string& detail) {
    entries_.push_back({Entry::Kind::Check, key, detail, pass});
    if (!pass) ++failures_;
}

void Report::note(const std::string& text) {
    entries_.push_back({Entry::Kind::Note, "", text, true});
}

std::string Report::format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string Report::render(ReportFormat format) const {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["command"] = command_;
        j["version"] = KLEINLENS_VERSION;
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        nlohmann::ordered_json checks = nlohmann::ordered_json::object();
        std::vector<std::string> notes;
        for (const Entry& e : entries_) {
            switch (e.kind) {
            case Entry::Kind::Value: values[e.key] = e.value; break;
            case Entry::Kind::Check: {
                nlohmann::ordered_json c;
                c["pass"] = e.pass;
                if (!e.value.empty()) c["detail"] = e.value;
                checks[e.key] = c;
                break;
            }
            case Entry::Kind::Note: notes.push_back(e.value); break;
            }
        }
        j["values"] = values;
        j["checks"] = checks;
        if (!notes.empty()) j["notes"] = notes;
        j["status"] = all_passed() ? "ok" : "fail";
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "# " << command_ << " (kleinlens " << KLEINLENS_VERSION << ")\n";
    for (const Entry& e : entries_) {
        switch (e.kind) {
        case Entry::Kind::Value:
            out << e.key << " = " << e.value << "\n";
            break;
        case Entry::Kind::Check:
            out << "[" << (e.pass ? "pass" : "FAIL") << "] " << e.key;
            if (!e.value.empty()) out << ": " << e.value;
            out << "\n";
            break;
        case Entry::Kind::Note:
            out << "note: " << e.value << "\n";
            break;
        }
    }
    out << "status = " << (all_passed() ? "ok" : "fail") << "\n";
    return out.str();
}

} // namespace kleinlens
