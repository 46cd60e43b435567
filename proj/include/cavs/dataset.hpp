#ifndef CAVS_DATASET_HPP
#define CAVS_DATASET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cavs {

/// A table of categorical samples. Cells are stored as indices into each
/// variable's ordered category alphabet; storage is column-major.
class Dataset {
public:
    Dataset(std::vector<std::string> variables,
            std::vector<std::vector<std::string>> alphabets);

    void append_row(const std::vector<int>& categories);

    int var_count() const { return static_cast<int>(variables_.size()); }
    std::int64_t row_count() const { return rows_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::string& variable(int col) const;
    const std::vector<std::string>& alphabet(int col) const;
    std::optional<int> find_column(std::string_view name) const;
    /// Like find_column but throws ValidationError when absent.
    int column(std::string_view name) const;

    int value(std::int64_t row, int col) const {
        return columns_[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
    }
    const std::vector<int>& column_values(int col) const;

    /// New dataset holding the given rows (indices may repeat); alphabets are
    /// carried over unchanged.
    Dataset select_rows(const std::vector<std::int64_t>& rows) const;

private:
    std::vector<std::string> variables_;
    std::vector<std::vector<std::string>> alphabets_;
    std::vector<std::vector<int>> columns_;
    std::int64_t rows_ = 0;
};

}  // namespace cavs

#endif
