#pragma once

#include <string>
#include <vector>

#include "dti/linalg.hpp"
#include "dti/table.hpp"

namespace dti {

// A drug-target interaction benchmark: a binary interaction matrix plus one
// drug-drug and one target-target similarity matrix, row/column order pinned
// by the id lists.
struct DtiDataset {
    std::vector<std::string> drug_ids;
    std::vector<std::string> target_ids;
    DenseMatrix interactions;  // n_d x n_t, entries in {0,1}
    DenseMatrix drug_sim;      // n_d x n_d, symmetric, [0,1], unit diagonal
    DenseMatrix target_sim;    // n_t x n_t, same shape constraints

    std::size_t n_drugs() const { return drug_ids.size(); }
    std::size_t n_targets() const { return target_ids.size(); }
    std::size_t drug_degree(std::size_t i) const;
    std::size_t target_degree(std::size_t j) const;

    void validate() const;
};

struct DatasetStats {
    std::size_t n_drugs = 0;
    std::size_t n_targets = 0;
    std::size_t n_interactions = 0;
    double mean_drug_degree = 0.0;
    double mean_target_degree = 0.0;
    double pct_drug_degree_one = 0.0;    // percent of drugs with exactly one target
    double pct_target_degree_one = 0.0;  // percent of targets with exactly one drug
};

// Warnings raised while loading (asymmetry above the silent threshold,
// diagonal adjustments). Loading still succeeds.
struct LoadReport {
    std::vector<std::string> warnings;
};

// TSV matrix files: header line of column ids (an optional leading corner
// cell is ignored), then one row per line starting with the row id. Comma
// separated variants are accepted; the delimiter is sniffed from the header.
DtiDataset load_dti(const std::string& interaction_path, const std::string& drug_sim_path,
                    const std::string& target_sim_path, LoadReport* report = nullptr);

void save_dti(const DtiDataset& ds, const std::string& interaction_path,
              const std::string& drug_sim_path, const std::string& target_sim_path);

DatasetStats stats(const DtiDataset& ds);

// The 14-row Play/No-Play table used throughout the decision-tree material.
LabeledTable weather_fixture();

}  // namespace dti
