#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace eg {

/// Ordered alphabet of class labels. The position of a label is its canonical
/// index; every graph and table in the library shares this indexing.
class LabelSet {
public:
    explicit LabelSet(std::vector<std::string> labels);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }
    const std::vector<std::string>& names() const { return names_; }

    /// Index of `label`; throws ErrorCode::unknown_label if absent.
    int index(const std::string& label) const;
    std::optional<int> find(const std::string& label) const;
    bool contains(const std::string& label) const { return find(label).has_value(); }

    friend bool operator==(const LabelSet& a, const LabelSet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// All unordered pairs over a label set, in canonical (i, j), i < j order.
std::vector<std::pair<std::string, std::string>> all_label_pairs(const LabelSet& labels);

} // namespace eg
