#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kleinlens {

enum class ReportFormat { Text, Json };

/// Deterministic key-value report: entries render in insertion order, reals
/// at 17 significant digits, so identical inputs give byte-identical output.
class Report {
  public:
    explicit Report(std::string command);

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::int64_t value);
    void add(const std::string& key, double value);
    void add(const std::string& key, bool value);

    /// Verification outcome line; failures flip the overall status.
    void check(const std::string& key, bool pass, const std::string& detail = "");

    void note(const std::string& text);

    bool all_passed() const { return failures_ == 0; }
    std::size_t failure_count() const { return failures_; }

    std::string render(ReportFormat format) const;

    static std::string format_real(double value);

  private:
    struct Entry {
        enum class Kind { Value, Check, Note } kind;
        std::string key;
        std::string value;
        bool pass = true;
    };
    std::string command_;
    std::vector<Entry> entries_;
    std::size_t failures_ = 0;
};

} // namespace kleinlens
