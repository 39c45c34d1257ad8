#pragma once

// Verdict reporting for validators, law suites and deciders.
//
// A report never throws on a law failure: callers inspect `ok()` and the
// recorded violations. Searches that run out of budget are recorded as
// `inconclusive`, which is distinct from a refutation.

#include <string>
#include <vector>

namespace omc {

struct Violation {
    std::string law;     // stable machine-readable label
    std::string detail;  // human-readable instance description
};

class CheckReport {
public:
    explicit CheckReport(std::string subject = {}) : subject_(std::move(subject)) {}

    void fail(std::string law, std::string detail) {
        ++failure_count_;
        if (violations_.size() < max_recorded_)
            violations_.push_back({std::move(law), std::move(detail)});
    }
    void inconclusive(std::string law, std::string detail) {
        ++inconclusive_count_;
        if (violations_.size() < max_recorded_)
            violations_.push_back({"inconclusive:" + law, std::move(detail)});
    }
    void note_checked(std::size_t n = 1) { checked_ += n; }

    void merge(const CheckReport& other) {
        checked_ += other.checked_;
        failure_count_ += other.failure_count_;
        inconclusive_count_ += other.inconclusive_count_;
        for (const auto& v : other.violations_)
            if (violations_.size() < max_recorded_) violations_.push_back(v);
    }

    bool ok() const { return failure_count_ == 0 && inconclusive_count_ == 0; }
    bool refuted() const { return failure_count_ > 0; }
    bool only_inconclusive() const { return failure_count_ == 0 && inconclusive_count_ > 0; }

    std::size_t checked() const { return checked_; }
    std::size_t failures() const { return failure_count_; }
    std::size_t inconclusives() const { return inconclusive_count_; }
    const std::string& subject() const { return subject_; }
    const std::vector<Violation>& violations() const { return violations_; }

    std::string summary() const {
        std::string s = subject_.empty() ? std::string("check") : subject_;
        s += ": ";
        s += ok() ? "ok" : (refuted() ? "FAILED" : "inconclusive");
        s += " (" + std::to_string(checked_) + " instances";
        if (failure_count_) s += ", " + std::to_string(failure_count_) + " failures";
        if (inconclusive_count_) s += ", " + std::to_string(inconclusive_count_) + " inconclusive";
        s += ")";
        for (const auto& v : violations_) s += "\n  [" + v.law + "] " + v.detail;
        return s;
    }

private:
    std::string subject_;
    std::size_t checked_ = 0;
    std::size_t failure_count_ = 0;
    std::size_t inconclusive_count_ = 0;
    std::size_t max_recorded_ = 25;
    std::vector<Violation> violations_;
};

} // namespace omc
