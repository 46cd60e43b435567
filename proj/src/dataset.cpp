#include "cavs/dataset.hpp"

#include "cavs/errors.hpp"

namespace cavs {

Dataset::Dataset(std::vector<std::string> variables,
                 std::vector<std::vector<std::string>> alphabets)
    : variables_(std::move(variables)), alphabets_(std::move(alphabets)) {
    if (variables_.size() != alphabets_.size())
        throw ValidationError("variable list and alphabet list sizes differ");
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].empty()) throw ValidationError("empty variable name");
        if (alphabets_[i].empty())
            throw ValidationError("variable '" + variables_[i] + "' has an empty alphabet");
        for (std::size_t j = i + 1; j < variables_.size(); ++j)
            if (variables_[i] == variables_[j])
                throw ValidationError("duplicate variable '" + variables_[i] + "'");
    }
    columns_.resize(variables_.size());
}

void Dataset::append_row(const std::vector<int>& categories) {
    if (categories.size() != variables_.size())
        throw ValidationError("row has " + std::to_string(categories.size()) +
                              " cells, expected " + std::to_string(variables_.size()));
    for (std::size_t i = 0; i < categories.size(); ++i) {
        int c = categories[i];
        if (c < 0 || c >= static_cast<int>(alphabets_[i].size()))
            throw ValidationError("category index " + std::to_string(c) +
                                  " out of range for variable '" + variables_[i] + "'");
    }
    for (std::size_t i = 0; i < categories.size(); ++i)
        columns_[i].push_back(categories[i]);
    ++rows_;
}

const std::string& Dataset::variable(int col) const {
    if (col < 0 || col >= var_count())
        throw ValidationError("column index out of range");
    return variables_[static_cast<std::size_t>(col)];
}

const std::vector<std::string>& Dataset::alphabet(int col) const {
    if (col < 0 || col >= var_count())
        throw ValidationError("column index out of range");
    return alphabets_[static_cast<std::size_t>(col)];
}

std::optional<int> Dataset::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

int Dataset::column(std::string_view name) const {
    auto col = find_column(name);
    if (!col) throw ValidationError("unknown variable '" + std::string(name) + "'");
    return *col;
}

const std::vector<int>& Dataset::column_values(int col) const {
    if (col < 0 || col >= var_count())
        throw ValidationError("column index out of range");
    return columns_[static_cast<std::size_t>(col)];
}

Dataset Dataset::select_rows(const std::vector<std::int64_t>& rows) const {
    Dataset out(variables_, alphabets_);
    for (std::size_t c = 0; c < columns_.size(); ++c)
        out.columns_[c].reserve(rows.size());
    for (std::int64_t r : rows) {
        if (r < 0 || r >= rows_) throw ValidationError("row index out of range");
        for (std::size_t c = 0; c < columns_.size(); ++c)
            out.columns_[c].push_back(columns_[c][static_cast<std::size_t>(r)]);
    }
    out.rows_ = static_cast<std::int64_t>(rows.size());
    return out;
}

}  // namespace cavs
