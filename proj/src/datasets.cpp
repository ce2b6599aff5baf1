#include "dti/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace dti {

std::size_t DtiDataset::drug_degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n_targets(); ++j)
        if (interactions(i, j) != 0.0) ++d;
    return d;
}

std::size_t DtiDataset::target_degree(std::size_t j) const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < n_drugs(); ++i)
        if (interactions(i, j) != 0.0) ++d;
    return d;
}

void DtiDataset::validate() const {
    if (interactions.rows() != n_drugs() || interactions.cols() != n_targets())
        throw InputError("dataset: interaction matrix does not match id lists");
    if (drug_sim.rows() != n_drugs() || drug_sim.cols() != n_drugs())
        throw InputError("dataset: drug similarity does not match drug ids");
    if (target_sim.rows() != n_targets() || target_sim.cols() != n_targets())
        throw InputError("dataset: target similarity does not match target ids");
    for (std::size_t i = 0; i < interactions.rows(); ++i)
        for (std::size_t j = 0; j < interactions.cols(); ++j) {
            double a = interactions(i, j);
            if (a != 0.0 && a != 1.0)
                throw InputError("dataset: interaction entries must be 0 or 1");
        }
    auto check_sim = [](const DenseMatrix& s, const char* what) {
        for (std::size_t i = 0; i < s.rows(); ++i) {
            if (std::fabs(s(i, i) - 1.0) > 1e-12)
                throw InputError(std::string("dataset: ") + what + " diagonal must be 1");
            for (std::size_t j = 0; j < s.cols(); ++j) {
                double v = s(i, j);
                if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                    throw InputError(std::string("dataset: ") + what + " values must be in [0,1]");
                if (std::fabs(v - s(j, i)) > 1e-12)
                    throw InputError(std::string("dataset: ") + what + " must be symmetric");
            }
        }
    };
    check_sim(drug_sim, "drug similarity");
    check_sim(target_sim, "target similarity");
}

namespace {

struct RawMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_ids;
    DenseMatrix values;
};

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(line);
    while (std::getline(is, tok, delim)) out.push_back(tok);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

RawMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("'" + path + "': empty file");
    line = strip_cr(line);
    char delim = line.find('\t') != std::string::npos ? '\t' : ',';

    RawMatrix m;
    auto header = split(line, delim);

    std::vector<std::vector<std::string>> raw;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cells = split(line, delim);
        if (cells.size() < 2)
            throw ParseError("'" + path + "' line " + std::to_string(lineno) + ": too few cells");
        raw.push_back(std::move(cells));
    }
    if (raw.empty()) throw ParseError("'" + path + "': no data rows");

    std::size_t n_cols = raw.front().size() - 1;
    // header may or may not carry a corner cell over the row-id column
    if (header.size() == n_cols + 1)
        m.col_ids.assign(header.begin() + 1, header.end());
    else if (header.size() == n_cols)
        m.col_ids = header;
    else
        throw ParseError("'" + path + "': header has " + std::to_string(header.size()) +
                         " cells but rows have " + std::to_string(n_cols) + " value columns");

    m.values = DenseMatrix(raw.size(), n_cols);
    m.row_ids.reserve(raw.size());
    for (std::size_t r = 0; r < raw.size(); ++r) {
        const auto& cells = raw[r];
        if (cells.size() != n_cols + 1)
            throw ParseError("'" + path + "' row '" + cells[0] + "': expected " +
                             std::to_string(n_cols) + " values, got " +
                             std::to_string(cells.size() - 1));
        m.row_ids.push_back(cells[0]);
        for (std::size_t c = 0; c < n_cols; ++c) {
            const std::string& tok = cells[c + 1];
            double v;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v))
                throw ParseError("'" + path + "': non-numeric cell at row '" + cells[0] +
                                 "', column '" + m.col_ids[c] + "'");
            m.values(r, c) = v;
        }
    }
    return m;
}

// Reorders a square similarity matrix to the given id order, matching by
// header string. Throws naming the first id that cannot be matched.
DenseMatrix align_similarity(const RawMatrix& s, const std::vector<std::string>& ids,
                             const std::string& path) {
    if (s.row_ids.size() != s.col_ids.size())
        throw ParseError("'" + path + "': similarity matrix is not square");
    std::unordered_map<std::string, std::size_t> row_of, col_of;
    for (std::size_t i = 0; i < s.row_ids.size(); ++i) row_of[s.row_ids[i]] = i;
    for (std::size_t j = 0; j < s.col_ids.size(); ++j) col_of[s.col_ids[j]] = j;
    if (ids.size() != s.row_ids.size())
        throw ParseError("'" + path + "': has " + std::to_string(s.row_ids.size()) +
                         " ids, interaction file has " + std::to_string(ids.size()));
    DenseMatrix out(ids.size(), ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto ri = row_of.find(ids[i]);
        if (ri == row_of.end())
            throw ParseError("'" + path + "': missing id '" + ids[i] + "'");
        for (std::size_t j = 0; j < ids.size(); ++j) {
            auto cj = col_of.find(ids[j]);
            if (cj == col_of.end())
                throw ParseError("'" + path + "': missing column id '" + ids[j] + "'");
            out(i, j) = s.values(ri->second, cj->second);
        }
    }
    return out;
}

// Symmetrize, clamp to [0,1], pin the diagonal at 1. Asymmetry beyond the
// silent threshold is reported as a warning, then symmetrized anyway.
void normalize_similarity(DenseMatrix& s, const std::string& what, LoadReport* report) {
    double asym = s.max_abs_asymmetry();
    if (asym > 1e-6 && report)
        report->warnings.push_back(what + ": asymmetry up to " + std::to_string(asym) +
                                   " symmetrized");
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = i + 1; j < s.cols(); ++j) {
            double v = 0.5 * (s(i, j) + s(j, i));
            v = std::clamp(v, 0.0, 1.0);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    for (std::size_t i = 0; i < s.rows(); ++i) {
        if (std::fabs(s(i, i) - 1.0) > 1e-6 && report)
            report->warnings.push_back(what + ": diagonal entry " + std::to_string(i) +
                                       " set to 1 (was " + std::to_string(s(i, i)) + ")");
        s(i, i) = 1.0;
    }
}

}  // namespace

DtiDataset load_dti(const std::string& interaction_path, const std::string& drug_sim_path,
                    const std::string& target_sim_path, LoadReport* report) {
    RawMatrix a = read_matrix_file(interaction_path);
    for (std::size_t i = 0; i < a.values.rows(); ++i)
        for (std::size_t j = 0; j < a.values.cols(); ++j) {
            double v = a.values(i, j);
            if (v != 0.0 && v != 1.0)
                throw ParseError("'" + interaction_path + "': interaction value at row '" +
                                 a.row_ids[i] + "', column '" + a.col_ids[j] +
                                 "' must be 0 or 1");
        }

    DtiDataset ds;
    ds.drug_ids = a.row_ids;
    ds.target_ids = a.col_ids;
    ds.interactions = a.values;
    ds.drug_sim = align_similarity(read_matrix_file(drug_sim_path), ds.drug_ids, drug_sim_path);
    ds.target_sim =
        align_similarity(read_matrix_file(target_sim_path), ds.target_ids, target_sim_path);
    normalize_similarity(ds.drug_sim, "drug similarity", report);
    normalize_similarity(ds.target_sim, "target similarity", report);
    ds.validate();
    return ds;
}

namespace {

void write_matrix(const std::string& path, const std::vector<std::string>& row_ids,
                  const std::vector<std::string>& col_ids, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    for (const auto& c : col_ids) out << '\t' << c;
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << row_ids[i];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << '\t' << buf;
        }
        out << '\n';
    }
}

}  // namespace

void save_dti(const DtiDataset& ds, const std::string& interaction_path,
              const std::string& drug_sim_path, const std::string& target_sim_path) {
    write_matrix(interaction_path, ds.drug_ids, ds.target_ids, ds.interactions);
    write_matrix(drug_sim_path, ds.drug_ids, ds.drug_ids, ds.drug_sim);
    write_matrix(target_sim_path, ds.target_ids, ds.target_ids, ds.target_sim);
}

DatasetStats stats(const DtiDataset& ds) {
    DatasetStats st;
    st.n_drugs = ds.n_drugs();
    st.n_targets = ds.n_targets();
    std::size_t drug_deg1 = 0, target_deg1 = 0, total = 0;
    for (std::size_t i = 0; i < ds.n_drugs(); ++i) {
        std::size_t d = ds.drug_degree(i);
        total += d;
        if (d == 1) ++drug_deg1;
    }
    for (std::size_t j = 0; j < ds.n_targets(); ++j)
        if (ds.target_degree(j) == 1) ++target_deg1;
    st.n_interactions = total;
    st.mean_drug_degree = st.n_drugs ? static_cast<double>(total) / st.n_drugs : 0.0;
    st.mean_target_degree = st.n_targets ? static_cast<double>(total) / st.n_targets : 0.0;
    st.pct_drug_degree_one = st.n_drugs ? 100.0 * drug_deg1 / st.n_drugs : 0.0;
    st.pct_target_degree_one = st.n_targets ? 100.0 * target_deg1 / st.n_targets : 0.0;
    return st;
}

LabeledTable weather_fixture() {
    LabeledTable t;
    t.add_feature("Outlook", FeatureKind::categorical);
    t.add_feature("Temperature", FeatureKind::categorical);
    t.add_feature("Humidity", FeatureKind::categorical);
    t.add_feature("Windy", FeatureKind::categorical);
    t.add_row({"Sunny", "Hot", "High", "False"}, "No");
    t.add_row({"Sunny", "Hot", "High", "True"}, "No");
    t.add_row({"Overcast", "Hot", "High", "False"}, "Yes");
    t.add_row({"Rainy", "Mild", "High", "False"}, "Yes");
    t.add_row({"Rainy", "Cool", "Normal", "False"}, "Yes");
    t.add_row({"Rainy", "Cool", "Normal", "True"}, "No");
    t.add_row({"Overcast", "Cool", "Normal", "True"}, "Yes");
    t.add_row({"Sunny", "Mild", "High", "False"}, "No");
    t.add_row({"Sunny", "Cool", "Normal", "False"}, "Yes");
    t.add_row({"Rainy", "Mild", "Normal", "False"}, "Yes");
    t.add_row({"Sunny", "Mild", "Normal", "True"}, "Yes");
    t.add_row({"Overcast", "Mild", "High", "True"}, "Yes");
    t.add_row({"Overcast", "Hot", "Normal", "False"}, "Yes");
    t.add_row({"Rainy", "Mild", "High", "True"}, "No");
    return t;
}

}  // namespace dti
