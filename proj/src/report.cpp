#include "kmod/report.hpp"

#include "kmod/common.hpp"

#include <sstream>

namespace kmod {

std::string to_string(Side side) {
    switch (side) {
    case Side::left:
        return "left";
    case Side::right:
        return "right";
    case Side::bi:
        return "bi";
    }
    return "?";
}

void Report::absorb(const Report& other, const std::string& prefix) {
    for (const auto& law : other.laws_) {
        LawResult copy = law;
        if (!prefix.empty()) {
            copy.law = prefix + copy.law;
        }
        laws_.push_back(std::move(copy));
    }
    for (const auto& line : other.notes_) {
        notes_.push_back(prefix + line);
    }
}

bool Report::passed() const {
    return first_failure() == nullptr;
}

const LawResult* Report::first_failure() const {
    for (const auto& law : laws_) {
        if (!law.holds) {
            return &law;
        }
    }
    return nullptr;
}

const LawResult* Report::find(const std::string& law) const {
    for (const auto& entry : laws_) {
        if (entry.law == law) {
            return &entry;
        }
    }
    return nullptr;
}

std::string Report::render() const {
    std::ostringstream out;
    if (!subject_.empty()) {
        out << "subject: " << subject_ << '\n';
    }
    for (const auto& line : notes_) {
        out << "  " << line << '\n';
    }
    for (const auto& law : laws_) {
        out << "  [" << (law.holds ? "pass" : "FAIL") << "] " << law.law << " (" << law.cases << " cases)";
        if (!law.holds) {
            out << "\n         counterexample: " << law.counterexample;
        }
        out << '\n';
    }
    out << "  result: " << (passed() ? "pass" : "fail") << '\n';
    return out.str();
}

} // namespace kmod
