#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dti/errors.hpp"

namespace dti {

enum class FeatureKind { categorical, numeric };

// One table cell: numeric value, or a level index into the feature's
// declared categorical levels (-1 = level unseen at training time).
struct Cell {
    double num = 0.0;
    int cat = -1;
};

using Row = std::vector<Cell>;

// Generic labeled table with mixed categorical/numeric features. Categorical
// levels and class names are interned in first-appearance order; that order
// is the tie-breaking order used throughout the classifier suite.
class LabeledTable {
public:
    std::vector<std::string> feature_names;
    std::vector<FeatureKind> feature_kinds;
    std::vector<std::vector<std::string>> levels;  // per feature; empty for numeric
    std::vector<Row> rows;
    std::vector<int> labels;
    std::vector<std::string> class_names;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_features() const { return feature_names.size(); }
    std::size_t n_classes() const { return class_names.size(); }

    void add_feature(const std::string& name, FeatureKind kind);
    // Values are parsed per feature kind; unseen categorical levels and class
    // names are interned.
    void add_row(const std::vector<std::string>& values, const std::string& label);

    // Encodes a raw row against this table's schema without extending it.
    // Unknown categorical values map to cat = -1.
    Row encode_row(const std::vector<std::string>& values) const;

    int level_index(std::size_t feature, const std::string& value) const;   // -1 if absent
    int class_index(const std::string& name) const;                         // -1 if absent

    std::vector<std::size_t> class_counts() const;
    void validate() const;
};

struct CsvOptions {
    int label_column = -1;  // -1 = last column
    char delimiter = ',';
    // Optional per-feature kind override: lines of "<name><TAB>categorical|numeric".
    std::string kinds_path;
};

// Header row required; feature kinds inferred (any non-numeric token makes
// the column categorical) unless overridden.
LabeledTable read_csv_table(const std::string& path, const CsvOptions& opt = {});

}  // namespace dti
