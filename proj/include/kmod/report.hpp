#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace kmod {

/// Outcome of checking one law. Only the first counterexample is kept.
struct LawResult {
    std::string law;
    bool holds = true;
    std::string counterexample;
    std::uint64_t cases = 0;

    template <typename Describe>
    bool record(bool ok, Describe&& describe) {
        ++cases;
        if (!ok && holds) {
            holds = false;
            counterexample = describe();
        }
        return ok;
    }

    /// Counts cases checked in bulk; failures go through refute().
    void tally(std::uint64_t n) { cases += n; }

    template <typename Describe>
    void refute(Describe&& describe) {
        if (holds) {
            holds = false;
            counterexample = describe();
        }
    }

    void fail(std::string why) {
        ++cases;
        if (holds) {
            holds = false;
            counterexample = std::move(why);
        }
    }
};

class Report {
  public:
    Report() = default;
    explicit Report(std::string subject) : subject_(std::move(subject)) {}

    LawResult& law(std::string name) {
        auto& result = laws_.emplace_back();
        result.law = std::move(name);
        return result;
    }

    /// Adds a finished law result.
    void add(LawResult result) { laws_.push_back(std::move(result)); }

    void note(std::string line) { notes_.push_back(std::move(line)); }

    /// Folds another report in, prefixing its law names.
    void absorb(const Report& other, const std::string& prefix = {});

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const std::string& subject() const { return subject_; }
    [[nodiscard]] const std::deque<LawResult>& laws() const { return laws_; }
    [[nodiscard]] const std::vector<std::string>& notes() const { return notes_; }

    /// First failing law, or nullptr.
    [[nodiscard]] const LawResult* first_failure() const;
    [[nodiscard]] const LawResult* find(const std::string& law) const;

    [[nodiscard]] std::string render() const;

  private:
    std::string subject_;
    std::deque<LawResult> laws_;
    std::vector<std::string> notes_;
};

} // namespace kmod
