#include "dti/table.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dti {

static bool parse_number(const std::string& tok, double& out) {
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

void LabeledTable::add_feature(const std::string& name, FeatureKind kind) {
    if (!rows.empty()) throw InputError("add_feature: table already has rows");
    feature_names.push_back(name);
    feature_kinds.push_back(kind);
    levels.emplace_back();
}

int LabeledTable::level_index(std::size_t feature, const std::string& value) const {
    const auto& lv = levels[feature];
    auto it = std::find(lv.begin(), lv.end(), value);
    return it == lv.end() ? -1 : static_cast<int>(it - lv.begin());
}

int LabeledTable::class_index(const std::string& name) const {
    auto it = std::find(class_names.begin(), class_names.end(), name);
    return it == class_names.end() ? -1 : static_cast<int>(it - class_names.begin());
}

void LabeledTable::add_row(const std::vector<std::string>& values, const std::string& label) {
    if (values.size() != n_features())
        throw InputError("add_row: expected " + std::to_string(n_features()) + " values, got " +
                         std::to_string(values.size()));
    Row row(n_features());
    for (std::size_t f = 0; f < n_features(); ++f) {
        if (feature_kinds[f] == FeatureKind::numeric) {
            double v;
            if (!parse_number(values[f], v) || !std::isfinite(v))
                throw ParseError("non-numeric value '" + values[f] + "' in numeric feature '" +
                                 feature_names[f] + "'");
            row[f].num = v;
        } else {
            int idx = level_index(f, values[f]);
            if (idx < 0) {
                levels[f].push_back(values[f]);
                idx = static_cast<int>(levels[f].size()) - 1;
            }
            row[f].cat = idx;
        }
    }
    int cls = class_index(label);
    if (cls < 0) {
        class_names.push_back(label);
        cls = static_cast<int>(class_names.size()) - 1;
    }
    rows.push_back(std::move(row));
    labels.push_back(cls);
}

Row LabeledTable::encode_row(const std::vector<std::string>& values) const {
    if (values.size() != n_features()) throw InputError("encode_row: wrong number of values");
    Row row(n_features());
    for (std::size_t f = 0; f < n_features(); ++f) {
        if (feature_kinds[f] == FeatureKind::numeric) {
            double v;
            if (!parse_number(values[f], v))
                throw InputError("encode_row: non-numeric value for numeric feature '" +
                                 feature_names[f] + "'");
            row[f].num = v;
        } else {
            row[f].cat = level_index(f, values[f]);
        }
    }
    return row;
}

std::vector<std::size_t> LabeledTable::class_counts() const {
    std::vector<std::size_t> counts(n_classes(), 0);
    for (int l : labels) counts[l]++;
    return counts;
}

void LabeledTable::validate() const {
    if (labels.size() != rows.size()) throw InputError("table: row/label count mismatch");
    for (const Row& r : rows) {
        if (r.size() != n_features()) throw InputError("table: ragged row");
        for (std::size_t f = 0; f < n_features(); ++f)
            if (feature_kinds[f] == FeatureKind::numeric && !std::isfinite(r[f].num))
                throw InputError("table: non-finite numeric value");
    }
}

static std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(line);
    while (std::getline(is, tok, delim)) out.push_back(tok);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

static std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

LabeledTable read_csv_table(const std::string& path, const CsvOptions& opt) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::map<std::string, FeatureKind> overrides;
    if (!opt.kinds_path.empty()) {
        std::ifstream kin(opt.kinds_path);
        if (!kin) throw ParseError("cannot open kinds file '" + opt.kinds_path + "'");
        std::string line;
        while (std::getline(kin, line)) {
            line = strip_cr(line);
            if (line.empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos) throw ParseError("kinds file: expected NAME<TAB>KIND");
            std::string name = line.substr(0, tab), kind = line.substr(tab + 1);
            if (kind == "categorical")
                overrides[name] = FeatureKind::categorical;
            else if (kind == "numeric")
                overrides[name] = FeatureKind::numeric;
            else
                throw ParseError("kinds file: unknown kind '" + kind + "'");
        }
    }

    std::string line;
    if (!std::getline(in, line)) throw ParseError("'" + path + "': empty file");
    auto header = split_line(strip_cr(line), opt.delimiter);
    if (header.size() < 2) throw ParseError("'" + path + "': need at least one feature and a label");

    std::size_t label_col = opt.label_column < 0 ? header.size() - 1
                                                 : static_cast<std::size_t>(opt.label_column);
    if (label_col >= header.size()) throw ParseError("label column out of range");

    std::vector<std::vector<std::string>> raw_rows;
    std::vector<std::string> raw_labels;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cells = split_line(line, opt.delimiter);
        if (cells.size() != header.size())
            throw ParseError("'" + path + "' line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<std::string> feats;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (c != label_col) feats.push_back(cells[c]);
        raw_rows.push_back(std::move(feats));
        raw_labels.push_back(cells[label_col]);
    }
    if (raw_rows.empty()) throw ParseError("'" + path + "': no data rows");

    LabeledTable t;
    std::size_t fi = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_col) continue;
        FeatureKind kind = FeatureKind::numeric;
        auto ov = overrides.find(header[c]);
        if (ov != overrides.end()) {
            kind = ov->second;
        } else {
            for (const auto& r : raw_rows) {
                double unused;
                if (!parse_number(r[fi], unused)) {
                    kind = FeatureKind::categorical;
                    break;
                }
            }
        }
        t.add_feature(header[c], kind);
        ++fi;
    }
    for (std::size_t r = 0; r < raw_rows.size(); ++r) t.add_row(raw_rows[r], raw_labels[r]);
    t.validate();
    return t;
}

}  // namespace dti
