#include "eg/labels.hpp"

#include "eg/error.hpp"

namespace eg {

LabelSet::LabelSet(std::vector<std::string> labels) : names_(std::move(labels)) {
    if (names_.size() < 2)
        throw Error(ErrorCode::invariant, "label set needs at least two labels");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty())
            throw Error(ErrorCode::invariant, "empty label name");
        auto [_, inserted] = index_.emplace(names_[i], static_cast<int>(i));
        if (!inserted)
            throw Error(ErrorCode::invariant, "duplicate label '" + names_[i] + "'");
    }
}

int LabelSet::index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        throw Error(ErrorCode::unknown_label, "unknown label '" + label + "'");
    return it->second;
}

std::optional<int> LabelSet::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<std::string, std::string>> all_label_pairs(const LabelSet& labels) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < labels.size(); ++i)
        for (int j = i + 1; j < labels.size(); ++j)
            pairs.emplace_back(labels.name(i), labels.name(j));
    return pairs;
}

} // namespace eg
